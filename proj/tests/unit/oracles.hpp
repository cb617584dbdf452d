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

// Test-side reference implementations. Each one takes the most literal route
// to its answer and shares no code path with the library routine it checks.

#ifndef MIPLL_TESTS_ORACLES_HPP_
#define MIPLL_TESTS_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mipll/wmc.hpp"

namespace mipll::oracle {

/// Sum over every truth assignment of the formula's variables of its
/// probability, keeping assignments that satisfy some disjunct (and, when
/// exclusive, set at most one variable per position).
inline double wmc_by_assignments(const DnfFormula& phi, const WeightTable& w) {
  std::set<LabelVariable> vars_set;
  for (const auto& conj : phi.disjuncts) vars_set.insert(conj.begin(), conj.end());
  const std::vector<LabelVariable> vars(vars_set.begin(), vars_set.end());
  const std::size_t n = vars.size();
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto is_true = [&](const LabelVariable& v) {
      for (std::size_t j = 0; j < n; ++j) {
        if (vars[j].position == v.position && vars[j].label == v.label) return ((mask >> j) & 1) != 0;
      }
      return false;
    };
    bool sat = false;
    for (const auto& conj : phi.disjuncts) {
      bool all = true;
      for (const auto& v : conj) all = all && is_true(v);
      sat = sat || all;
    }
    if (!sat) continue;
    if (phi.exclusive) {
      std::map<int, int> per_position;
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask >> j) & 1) ok = ok && ++per_position[vars[j].position] <= 1;
      }
      if (!ok) continue;
    }
    long double p = 1.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double q = w[vars[j].position][vars[j].label];
      p *= ((mask >> j) & 1) ? q : 1.0L - q;
    }
    total += p;
  }
  return static_cast<double>(total);
}

/// Random probability rows (each sums to 1, entries bounded away from 0).
inline WeightTable random_scores(std::mt19937_64& rng, const std::vector<int>& sizes) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  WeightTable out;
  for (int c : sizes) {
    std::vector<double> row(c);
    double total = 0.0;
    for (auto& v : row) total += v = u(rng);
    for (auto& v : row) v /= total;
    out.push_back(std::move(row));
  }
  return out;
}

/// Every vector in [0, sizes[0]) x ... x [0, sizes[M-1]), lexicographic.
inline std::vector<std::vector<int>> all_vectors(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> out{{}};
  for (int c : sizes) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      for (int v = 0; v < c; ++v) {
        auto y = prefix;
        y.push_back(v);
        next.push_back(std::move(y));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace mipll::oracle

#endif  // MIPLL_TESTS_ORACLES_HPP_
