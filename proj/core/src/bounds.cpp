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

#include "mipll/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mipll/error.hpp"

namespace mipll {

namespace {

using Real = long double;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(what);
}

void require_unit_closed(double t, const char* what) { require(t >= 0.0 && t <= 1.0, what); }
void require_unit_open(double t, const char* what) { require(t > 0.0 && t < 1.0, what); }

void require_shape(int c, int M) {
  require(c >= 1, "label count c must be >= 1");
  require(M >= 1, "arity M must be >= 1");
}

Real ipow(Real base, int e) { return std::pow(base, static_cast<Real>(e)); }

SampleComplexity finish(Real value, bool valid = true) {
  SampleComplexity out;
  out.value = static_cast<double>(value);
  out.required = std::isfinite(out.value) ? std::ceil(out.value) : out.value;
  out.valid = valid;
  return out;
}

void check_multi(const MultiBoundSpec& spec) {
  require(spec.dims.size() == static_cast<std::size_t>(spec.problem.n()),
          "need one dimension per classifier");
  for (double d : spec.dims) require(d >= 1.0, "dimensions must be >= 1");
}

int risk_exponent(const MultiProblemSpec& spec, RiskExponent form) {
  return form == RiskExponent::kStatement ? spec.total_arity()
                                          : spec.total_arity() - spec.min_arity();
}

}  // namespace

double risk_transfer_M(double t, int c, int M) {
  require_unit_closed(t, "partial risk must lie in [0, 1]");
  require_shape(c, M);
  if (t == 0.0) return 0.0;
  const Real inner = ipow(c, 2 * M - 2) * static_cast<Real>(t);
  return static_cast<double>(std::min<Real>(1.0L, std::pow(inner, 1.0L / M)));
}

double phi_I(double t, int I, int M, int c) {
  require_unit_closed(t, "partial risk must lie in [0, 1]");
  require_shape(c, M);
  require(I >= 1 && I <= M, "I must satisfy 1 <= I <= M");
  if (t == 0.0) return 0.0;
  const Real tt = t;
  const Real root = std::pow(ipow(c, 2 * M - 2) * tt, 1.0L / M);
  const Real second = std::pow(tt, 1.0L / M) * ipow(c, 2);
  Real first = std::numeric_limits<Real>::infinity();
  if (root < 1.0L) {
    first = std::pow(tt * ipow(c, 2 * I - 2) / ipow(1.0L - root, M - I), 1.0L / I);
  }
  return static_cast<double>(std::min({first, second, Real{1.0L}}));
}

SampleComplexity sample_complexity_thm1(int c, int M, double eps, double delta, double d_F,
                                        double C) {
  require_shape(c, M);
  require_unit_open(eps, "epsilon must lie in (0, 1)");
  require_unit_open(delta, "delta must lie in (0, 1)");
  require(d_F >= 1.0, "d_F must be >= 1");
  require(C > 0.0, "constant C must be > 0");
  const Real a = ipow(c, 2 * M - 2) / ipow(eps, M);
  const Real d = d_F;
  return finish(C * a * (d * std::log(6.0L * c * M * d) * std::log(a) - std::log(Real{delta})));
}

SampleComplexity sample_complexity_prop1(int c, int M, double eps, double delta, double d_F,
                                         double C) {
  require_shape(c, M);
  require_unit_open(eps, "epsilon must lie in (0, 1)");
  require_unit_open(delta, "delta must lie in (0, 1)");
  require(d_F >= 1.0, "d_F must be >= 1");
  require(C > 0.0, "constant C must be > 0");
  const Real d = d_F;
  const Real value =
      C / Real{eps} *
      (d * std::log(6.0L * c * M * d) * std::log(2.0L / eps) - std::log(Real{delta}));
  const Real range = 1.0L / (ipow(2.0L * M, M) * ipow(c, 2 * M - 2));
  return finish(value, Real{eps} <= range);
}

SampleComplexity sample_complexity_thm3(const MultiBoundSpec& spec, double eps, double delta,
                                        double R, double C, RiskExponent form) {
  check_multi(spec);
  require_unit_open(eps, "epsilon must lie in (0, 1)");
  require_unit_open(delta, "delta must lie in (0, 1)");
  require(R >= 0.0 && R < 1.0, "R must lie in [0, 1)");
  require(C > 0.0, "constant C must be > 0");
  const MultiProblemSpec& p = spec.problem;
  const int n = p.n();
  const int top = p.max_arity();
  const Real a = n * ipow(p.max_labels(), 2 * top - 2) /
                 (ipow(eps, top) * ipow(1.0L - R, risk_exponent(p, form)));
  Real dims = 0.0L;
  for (int i = 0; i < n; ++i) {
    const Real d = spec.dims[i];
    dims += d * std::log(static_cast<Real>(n) * p.labels(i) * p.count(i) * d);
  }
  return finish(C * a * (dims * std::log(a) - std::log(Real{delta})));
}

SampleComplexity sample_complexity_thm5(int c, int M, double eps, double delta, double r,
                                        double d_F, double d_G, double C) {
  require_shape(c, M);
  require_unit_open(eps, "epsilon must lie in (0, 1)");
  require_unit_open(delta, "delta must lie in (0, 1)");
  require(r > 0.0 && r <= 1.0, "r must lie in (0, 1]");
  require(d_F >= 1.0 && d_G >= 0.0, "need d_F >= 1 and d_G >= 0");
  require(C > 0.0, "constant C must be > 0");
  const Real a = ipow(c, 2 * M - 2) / (ipow(r, M) * ipow(eps, M));
  const Real sum = Real{d_F} + d_G;
  const Real dims = sum * std::log(6.0L * M * sum) + d_F * std::log(Real(c));
  return finish(C * a * (dims * std::log(a) - std::log(Real{delta})));
}

VcBounds vc_bounds(double d_F, double d_G, int M, int c, const MultiBoundSpec* spec) {
  require_shape(c, M);
  require(d_F >= 1.0 && d_G >= 0.0, "need d_F >= 1 and d_G >= 0");
  VcBounds out;
  const double sum = d_F + d_G;
  const double logc = std::log(static_cast<double>(c));
  out.unknown = 2.0 * (sum * std::log(6.0 * M * sum) + 2.0 * d_F * logc);
  out.known = 2.0 * (d_F * std::log(6.0 * M * d_F) + 2.0 * d_F * logc);
  if (spec != nullptr) {
    check_multi(*spec);
    const MultiProblemSpec& p = spec->problem;
    double total = 0.0;
    for (int i = 0; i < p.n(); ++i) {
      const double d = spec->dims[i];
      total += d * std::log(static_cast<double>(p.count(i)) * p.n() * d) +
               2.0 * d * std::log(static_cast<double>(p.labels(i)));
    }
    out.multi = 4.0 * total;
  }
  return out;
}

double error_bound_thm2(double emp_topk_risk, double rad, double m_P, double delta, int k, int M,
                        int c) {
  require_shape(c, M);
  require(emp_topk_risk >= 0.0 && rad >= 0.0, "risk and Rademacher terms must be >= 0");
  require(m_P > 0.0, "m_P must be > 0");
  require_unit_open(delta, "delta must lie in (0, 1)");
  require(k >= 1, "k must be >= 1");
  const double slack = std::sqrt(std::log(1.0 / delta) / (2.0 * m_P));
  const double inner =
      (k + 1.0) * (emp_topk_risk + 2.0 * std::sqrt(static_cast<double>(k)) *
                                       std::pow(static_cast<double>(M), 1.5) * rad +
                   slack);
  // Past 1 the bound is vacuous; phi_I only accepts risks.
  if (inner >= 1.0) return 1.0;
  return phi_I(inner, 1, M, c);
}

double error_bound_thm4(double emp_topk_risk, const std::vector<double>& rads, double m_P,
                        double delta, int k, const MultiProblemSpec& spec, double R,
                        RiskExponent form) {
  require(rads.size() == static_cast<std::size_t>(spec.n()),
          "need one Rademacher estimate per classifier");
  require(emp_topk_risk >= 0.0, "empirical risk must be >= 0");
  for (double r : rads) require(r >= 0.0, "Rademacher estimates must be >= 0");
  require(m_P > 0.0, "m_P must be > 0");
  require_unit_open(delta, "delta must lie in (0, 1)");
  require(k >= 1, "k must be >= 1");
  require(R >= 0.0 && R < 1.0, "R must lie in [0, 1)");
  const int n = spec.n();
  const int top = spec.max_arity();
  Real complexity = 0.0L;
  for (int i = 0; i < n; ++i) complexity += static_cast<Real>(spec.count(i)) * rads[i];
  complexity *= std::sqrt(static_cast<Real>(k) * spec.total_arity());
  const Real slack = std::sqrt(std::log(1.0L / delta) / (2.0L * m_P));
  const Real factor = n * ipow(spec.max_labels(), 2 * top - 2) * (k + 1.0L) /
                      ipow(1.0L - R, risk_exponent(spec, form));
  const Real value = std::pow(factor * (emp_topk_risk + complexity + slack), 1.0L / top);
  return static_cast<double>(std::min<Real>(value, n));
}

double prop2_bound(double gamma, double t, int c, int M) {
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  require_unit_closed(t, "partial risk must lie in [0, 1]");
  require_shape(c, M);
  if (t == 0.0) return 0.0;
  const Real inner = ipow(c, 2 * M - 2) * static_cast<Real>(t);
  const Real value = std::pow(inner, 1.0L / M) / (1.0L - gamma);
  return static_cast<double>(std::min<Real>(1.0L, value));
}

double risk_transfer_multi(double t, const MultiProblemSpec& spec, double R, RiskExponent form) {
  require_unit_closed(t, "partial risk must lie in [0, 1]");
  require(R >= 0.0 && R < 1.0, "R must lie in [0, 1)");
  if (t == 0.0) return 0.0;
  const int n = spec.n();
  const int top = spec.max_arity();
  const Real c0 = spec.max_labels();
  const Real factor = ipow(n * c0 * c0, top - 1) / ipow(1.0L - R, risk_exponent(spec, form));
  const Real value = std::pow(factor * t, 1.0L / top);
  return static_cast<double>(std::min<Real>(value, n));
}

}  // namespace mipll
