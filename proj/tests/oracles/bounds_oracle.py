#!/usr/bin/env python3
# Copyright 2026 The mipll Authors.
# SPDX-License-Identifier: Apache-2.0
"""Re-evaluates every bound calculator's spot value in 50-digit arithmetic.

Each formula is written out again from its closed form, independently of the
C++ sources. Run with --header to regenerate tests/common/bounds_spots.hpp.
"""

import argparse

from mpmath import mp, mpf, log, sqrt, ceil

mp.dps = 50


def risk_transfer_M(t, c, M):
    return min(mpf(1), (mpf(c) ** (2 * M - 2) * t) ** (mpf(1) / M))


def phi_I(t, I, M, c):
    root = (mpf(c) ** (2 * M - 2) * t) ** (mpf(1) / M)
    second = t ** (mpf(1) / M) * mpf(c) ** 2
    first = mp.inf
    if root < 1:
        first = (t * mpf(c) ** (2 * I - 2) / (1 - root) ** (M - I)) ** (mpf(1) / I)
    return min(first, second, mpf(1))


def thm1(c, M, eps, delta, d, C=1):
    a = mpf(c) ** (2 * M - 2) / mpf(eps) ** M
    return C * a * (d * log(6 * c * M * d) * log(a) + log(1 / mpf(delta)))


def prop1(c, M, eps, delta, d, C=1):
    eps = mpf(eps)
    return C / eps * (d * log(6 * c * M * d) * log(2 / eps) + log(1 / mpf(delta)))


def thm3(counts, labels, dims, eps, delta, R, C=1, proof_form=False):
    n = len(counts)
    top = max(counts)
    c0 = max(labels)
    M = sum(counts)
    e = M - min(counts) if proof_form else M
    a = n * mpf(c0) ** (2 * top - 2) / (mpf(eps) ** top * (1 - mpf(R)) ** e)
    s = sum(mpf(d) * log(n * c * m * mpf(d)) for m, c, d in zip(counts, labels, dims))
    return C * a * (s * log(a) + log(1 / mpf(delta)))


def thm5(c, M, eps, delta, r, dF, dG, C=1):
    a = mpf(c) ** (2 * M - 2) / (mpf(r) ** M * mpf(eps) ** M)
    dims = (dF + dG) * log(6 * M * mpf(dF + dG)) + dF * log(mpf(c))
    return C * a * (dims * log(a) + log(1 / mpf(delta)))


def vc_unknown(dF, dG, M, c):
    return 2 * ((dF + dG) * log(6 * M * mpf(dF + dG)) + 2 * dF * log(mpf(c)))


def vc_known(dF, M, c):
    return 2 * (dF * log(6 * M * mpf(dF)) + 2 * dF * log(mpf(c)))


def vc_multi(counts, labels, dims):
    n = len(counts)
    return 4 * sum(mpf(d) * log(m * n * mpf(d)) + 2 * d * log(mpf(c))
                   for m, c, d in zip(counts, labels, dims))


def thm2(emp, rad, m_P, delta, k, M, c):
    inner = (k + 1) * (mpf(emp) + 2 * sqrt(mpf(k)) * mpf(M) ** mpf(1.5) * mpf(rad)
                       + sqrt(log(1 / mpf(delta)) / (2 * mpf(m_P))))
    return mpf(1) if inner >= 1 else phi_I(inner, 1, M, c)


def thm4(emp, rads, m_P, delta, k, counts, labels, R, proof_form=False):
    n = len(counts)
    top = max(counts)
    c0 = max(labels)
    M = sum(counts)
    e = M - min(counts) if proof_form else M
    inner = (mpf(emp) + sqrt(mpf(k) * M) * sum(m * mpf(r) for m, r in zip(counts, rads))
             + sqrt(log(1 / mpf(delta)) / (2 * mpf(m_P))))
    factor = n * mpf(c0) ** (2 * top - 2) * (k + 1) / (1 - mpf(R)) ** e
    return min(mpf(n), (factor * inner) ** (mpf(1) / top))


def prop2(gamma, t, c, M):
    return min(mpf(1), (mpf(c) ** (2 * M - 2) * t) ** (mpf(1) / M) / (1 - mpf(gamma)))


def risk_transfer_multi(t, counts, labels, R, proof_form=True):
    n = len(counts)
    top = max(counts)
    c0 = max(labels)
    M = sum(counts)
    e = M - min(counts) if proof_form else M
    return min(mpf(n), ((n * mpf(c0) ** 2) ** (top - 1) / (1 - mpf(R)) ** e * t) ** (mpf(1) / top))


# Two-classifier spec: M = (2, 1), c = (10, 2), d = (10, 5).
TWO = dict(counts=[2, 1], labels=[10, 2], dims=[10, 5])
# Operator problem over digits 3..9: two digit positions, one operator.
OPS = dict(counts=[2, 1], labels=[7, 2])

SPOTS = [
    ("kRiskTransferM", risk_transfer_M(mpf("1e-4"), 10, 2)),
    ("kPhiI", phi_I(mpf("1e-6"), 1, 2, 10)),
    ("kThm1", thm1(10, 2, "0.1", "0.1", 10)),
    ("kProp1", prop1(10, 2, "1e-3", "0.1", 10)),
    ("kThm1SmallEps", thm1(10, 2, "1e-3", "0.1", 10)),
    ("kThm3Statement", thm3(TWO["counts"], TWO["labels"], TWO["dims"], "0.1", "0.1", "0.5")),
    ("kThm3Proof", thm3(TWO["counts"], TWO["labels"], TWO["dims"], "0.1", "0.1", "0.5",
                        proof_form=True)),
    ("kThm5", thm5(10, 2, "0.1", "0.1", "0.1", 10, 6)),
    ("kVcUnknown", vc_unknown(10, 6, 2, 10)),
    ("kVcKnown", vc_known(10, 2, 10)),
    ("kVcMulti", vc_multi(TWO["counts"], TWO["labels"], TWO["dims"])),
    ("kThm2", thm2("1e-5", "1e-6", "1e9", "0.05", 3, 2, 10)),
    ("kThm4", thm4("1e-5", ["1e-6", "1e-6"], "1e9", "0.05", 3, OPS["counts"], OPS["labels"],
                   "0.1")),
    ("kProp2", prop2("0.5", mpf("1e-4"), 10, 2)),
    ("kRiskTransferMulti", risk_transfer_multi(mpf("1e-4"), OPS["counts"], OPS["labels"], "0.1")),
]

HEADER = """\
// Copyright 2026 The mipll Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tests/oracles/bounds_oracle.py --header; do not edit.
// Raw (pre-ceiling) values in 50-digit arithmetic, rounded to 17 digits.

#ifndef MIPLL_TESTS_BOUNDS_SPOTS_HPP_
#define MIPLL_TESTS_BOUNDS_SPOTS_HPP_

namespace mipll::spots {

"""


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--header", action="store_true")
    args = parser.parse_args()
    if not args.header:
        for name, value in SPOTS:
            print(f"{name} = {mp.nstr(value, 20)}  ceil={int(ceil(value))}")
        return
    out = HEADER
    for name, value in SPOTS:
        out += f"inline constexpr double {name} = {mp.nstr(value, 17, min_fixed=-3, max_fixed=-3)};\n"
    out += "\n}  // namespace mipll::spots\n\n#endif  // MIPLL_TESTS_BOUNDS_SPOTS_HPP_\n"
    print(out, end="")


if __name__ == "__main__":
    main()
