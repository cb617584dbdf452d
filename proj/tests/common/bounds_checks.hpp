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

// Bound-calculator checks shared by the unit tests and the acceptance suite.
// Each function returns the list of failed checks; empty means pass.

#ifndef MIPLL_TESTS_BOUNDS_CHECKS_HPP_
#define MIPLL_TESTS_BOUNDS_CHECKS_HPP_

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bounds_spots.hpp"
#include "mipll/bounds.hpp"

namespace mipll::checks {

inline MultiProblemSpec two_classifier_problem() {
  return MultiProblemSpec({Block{2, LabelSpace(10)}, Block{1, LabelSpace(2)}});
}

inline MultiBoundSpec two_classifier_bound_spec() { return {two_classifier_problem(), {10, 5}}; }

inline MultiProblemSpec operator_problem() {
  return MultiProblemSpec({Block{2, LabelSpace(7, 3)}, Block{1, LabelSpace(2)}});
}

inline bool same_12_digits(double got, double want) {
  return std::abs(got - want) <= 5e-12 * std::abs(want);
}

struct SpotResult {
  std::string name;
  double got;
  double want;
};

inline std::vector<SpotResult> spot_values() {
  const MultiBoundSpec two = two_classifier_bound_spec();
  const MultiProblemSpec ops = operator_problem();
  return {
      {"risk_transfer_M", risk_transfer_M(1e-4, 10, 2), spots::kRiskTransferM},
      {"phi_I", phi_I(1e-6, 1, 2, 10), spots::kPhiI},
      {"sample_complexity_thm1", sample_complexity_thm1(10, 2, 0.1, 0.1, 10).value, spots::kThm1},
      {"sample_complexity_prop1", sample_complexity_prop1(10, 2, 1e-3, 0.1, 10).value,
       spots::kProp1},
      {"sample_complexity_thm1(eps=1e-3)", sample_complexity_thm1(10, 2, 1e-3, 0.1, 10).value,
       spots::kThm1SmallEps},
      {"sample_complexity_thm3(statement)", sample_complexity_thm3(two, 0.1, 0.1, 0.5).value,
       spots::kThm3Statement},
      {"sample_complexity_thm3(proof)",
       sample_complexity_thm3(two, 0.1, 0.1, 0.5, 1.0, RiskExponent::kProof).value,
       spots::kThm3Proof},
      {"sample_complexity_thm5", sample_complexity_thm5(10, 2, 0.1, 0.1, 0.1, 10, 6).value,
       spots::kThm5},
      {"vc_bounds.unknown", vc_bounds(10, 6, 2, 10).unknown, spots::kVcUnknown},
      {"vc_bounds.known", vc_bounds(10, 6, 2, 10).known, spots::kVcKnown},
      {"vc_bounds.multi", vc_bounds(10, 6, 2, 10, &two).multi, spots::kVcMulti},
      {"error_bound_thm2", error_bound_thm2(1e-5, 1e-6, 1e9, 0.05, 3, 2, 10), spots::kThm2},
      {"error_bound_thm4", error_bound_thm4(1e-5, {1e-6, 1e-6}, 1e9, 0.05, 3, ops, 0.1),
       spots::kThm4},
      {"prop2_bound", prop2_bound(0.5, 1e-4, 10, 2), spots::kProp2},
      {"risk_transfer_multi", risk_transfer_multi(1e-4, ops, 0.1), spots::kRiskTransferMulti},
  };
}

inline std::vector<std::string> spot_failures() {
  std::vector<std::string> out;
  for (const auto& s : spot_values()) {
    if (!same_12_digits(s.got, s.want)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: got %.17g want %.17g", s.name.c_str(), s.got, s.want);
      out.emplace_back(buf);
    }
  }
  return out;
}

// Checks that f is monotone over `xs` in the given direction (+1 for
// nondecreasing, -1 for nonincreasing), with a relative slack for rounding.
inline void sweep(std::vector<std::string>& failures, const std::string& name,
                  const std::vector<double>& xs, int direction,
                  const std::function<double(double)>& f) {
  double prev = f(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = f(xs[i]);
    const double slack = 1e-12 * std::max(std::abs(prev), std::abs(cur));
    if (direction * (cur - prev) < -slack) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s not monotone at %.6g: %.12g then %.12g", name.c_str(),
                    xs[i], prev, cur);
      failures.emplace_back(buf);
    }
    prev = cur;
  }
}

inline void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
  if (!ok) failures.push_back(what);
}

inline std::vector<std::string> monotonicity_failures() {
  std::vector<std::string> f;
  const std::vector<double> eps{0.01, 0.05, 0.1, 0.2, 0.5, 0.9};
  const std::vector<double> delta{0.001, 0.01, 0.1, 0.5, 0.9};
  const std::vector<double> dims{1, 2, 5, 10, 50, 100};
  const std::vector<double> ms{1, 2, 3, 4, 5, 6};
  const std::vector<double> risks{0.0, 0.01, 0.2, 0.5, 0.9};
  const std::vector<double> small{0.0, 1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.1, 1.0};
  const MultiBoundSpec two = two_classifier_bound_spec();
  const MultiProblemSpec ops = operator_problem();

  auto thm1 = [](int c, int M, double e, double d, double dF) {
    return sample_complexity_thm1(c, M, e, d, dF).value;
  };
  sweep(f, "thm1(eps)", eps, -1, [&](double x) { return thm1(10, 2, x, 0.1, 10); });
  sweep(f, "thm1(delta)", delta, -1, [&](double x) { return thm1(10, 2, 0.1, x, 10); });
  sweep(f, "thm1(d_F)", dims, +1, [&](double x) { return thm1(10, 2, 0.1, 0.1, x); });
  sweep(f, "thm1(M)", ms, +1, [&](double x) { return thm1(10, static_cast<int>(x), 0.1, 0.1, 10); });
  sweep(f, "thm1(c)", {2, 3, 5, 10, 20}, +1,
        [&](double x) { return thm1(static_cast<int>(x), 2, 0.1, 0.1, 10); });
  {
    const double a = 100.0 / 0.01;
    const double gap = thm1(10, 2, 0.1, 0.05, 10) - thm1(10, 2, 0.1, 0.1, 10);
    expect(f, std::abs(gap - a * std::log(2.0)) <= 1e-9 * a, "thm1 doubling 1/delta adds a log 2");
  }

  auto prop1 = [](double e, double d, double dF) {
    return sample_complexity_prop1(10, 2, e, d, dF).value;
  };
  sweep(f, "prop1(eps)", eps, -1, [&](double x) { return prop1(x, 0.1, 10); });
  sweep(f, "prop1(delta)", delta, -1, [&](double x) { return prop1(0.1, x, 10); });
  sweep(f, "prop1(d_F)", dims, +1, [&](double x) { return prop1(0.1, 0.1, x); });
  expect(f, prop1(1e-3, 0.1, 10) < thm1(10, 2, 1e-3, 0.1, 10), "prop1 below thm1 at eps=1e-3");
  expect(f, !sample_complexity_prop1(10, 2, 0.1, 0.1, 10).valid, "prop1 flags eps above range");
  expect(f, sample_complexity_prop1(10, 2, 1e-5, 0.1, 10).valid, "prop1 accepts eps in range");

  for (RiskExponent form : {RiskExponent::kStatement, RiskExponent::kProof}) {
    const std::string tag = form == RiskExponent::kProof ? "proof" : "statement";
    auto thm3 = [&](double e, double d, double R, double d1) {
      MultiBoundSpec s = two;
      s.dims[0] = d1;
      return sample_complexity_thm3(s, e, d, R, 1.0, form).value;
    };
    sweep(f, "thm3[" + tag + "](eps)", eps, -1, [&](double x) { return thm3(x, 0.1, 0.5, 10); });
    sweep(f, "thm3[" + tag + "](delta)", delta, -1, [&](double x) { return thm3(0.1, x, 0.5, 10); });
    sweep(f, "thm3[" + tag + "](R)", risks, +1, [&](double x) { return thm3(0.1, 0.1, x, 10); });
    sweep(f, "thm3[" + tag + "](d_1)", dims, +1, [&](double x) { return thm3(0.1, 0.1, 0.5, x); });
  }
  {
    // One classifier, R = 0: same shape as the single-classifier threshold;
    // only the constant inside the dimension logarithm differs.
    const MultiBoundSpec one{MultiProblemSpec({Block{2, LabelSpace(10)}}), {10}};
    const double m3 = sample_complexity_thm3(one, 0.1, 0.1, 0.0, 1.0, RiskExponent::kProof).value;
    const double m1 = thm1(10, 2, 0.1, 0.1, 10);
    expect(f, m3 <= m1 && m3 >= 0.5 * m1, "thm3 with n=1, R=0 matches thm1 up to a constant");
  }

  auto thm5 = [](double e, double d, double r, double dF, double dG) {
    return sample_complexity_thm5(10, 2, e, d, r, dF, dG).value;
  };
  sweep(f, "thm5(eps)", eps, -1, [&](double x) { return thm5(x, 0.1, 0.1, 10, 6); });
  sweep(f, "thm5(delta)", delta, -1, [&](double x) { return thm5(0.1, x, 0.1, 10, 6); });
  sweep(f, "thm5(r)", {0.01, 0.1, 0.5, 1.0}, -1, [&](double x) { return thm5(0.1, 0.1, x, 10, 6); });
  sweep(f, "thm5(d_F)", dims, +1, [&](double x) { return thm5(0.1, 0.1, 0.1, x, 6); });
  sweep(f, "thm5(d_G)", {0, 1, 2, 6, 20, 100}, +1,
        [&](double x) { return thm5(0.1, 0.1, 0.1, 10, x); });

  sweep(f, "vc.unknown(d_F)", dims, +1, [](double x) { return vc_bounds(x, 6, 2, 10).unknown; });
  sweep(f, "vc.unknown(d_G)", {0, 1, 6, 50}, +1,
        [](double x) { return vc_bounds(10, x, 2, 10).unknown; });
  sweep(f, "vc.unknown(M)", ms, +1,
        [](double x) { return vc_bounds(10, 6, static_cast<int>(x), 10).unknown; });
  sweep(f, "vc.unknown(c)", {2, 5, 10, 50}, +1,
        [](double x) { return vc_bounds(10, 6, 2, static_cast<int>(x)).unknown; });
  sweep(f, "vc.known(d_F)", dims, +1, [](double x) { return vc_bounds(x, 0, 2, 10).known; });
  sweep(f, "vc.multi(d_1)", dims, +1, [&](double x) {
    MultiBoundSpec s = two;
    s.dims[0] = x;
    return vc_bounds(10, 0, 2, 10, &s).multi;
  });
  expect(f, std::abs(vc_bounds(10, 0, 2, 10).unknown - vc_bounds(10, 0, 2, 10).known) < 1e-12,
         "vc unknown with d_G=0 equals known");
  {
    const MultiBoundSpec one{MultiProblemSpec({Block{2, LabelSpace(10)}}), {10}};
    const VcBounds v = vc_bounds(10, 0, 2, 10, &one);
    expect(f, v.multi >= 0.5 * v.known, "vc multi (n=1) within factor 2 of known");
  }

  auto thm2 = [](double emp, double rad, double m, int k) {
    return error_bound_thm2(emp, rad, m, 0.05, k, 2, 10);
  };
  sweep(f, "thm2(m_P)", {1e3, 1e4, 1e6, 1e8, 1e10}, -1,
        [&](double x) { return thm2(1e-5, 1e-6, x, 3); });
  sweep(f, "thm2(emp)", {0, 1e-6, 1e-5, 1e-3, 0.1, 0.5}, +1,
        [&](double x) { return thm2(x, 1e-6, 1e9, 3); });
  sweep(f, "thm2(rad)", {0, 1e-7, 1e-6, 1e-4}, +1, [&](double x) { return thm2(1e-5, x, 1e9, 3); });
  sweep(f, "thm2(k)", {1, 2, 3, 5, 8}, +1,
        [&](double x) { return thm2(1e-5, 1e-6, 1e9, static_cast<int>(x)); });
  expect(f, thm2(0.0, 0.0, 1e300, 1) < 1e-12, "thm2 vanishes with zero risk and infinite data");
  expect(f, thm2(0.5, 0.1, 10, 3) == 1.0, "thm2 caps at 1");

  auto thm4 = [&](double emp, int k, double R) {
    return error_bound_thm4(emp, {1e-6, 1e-6}, 1e9, 0.05, k, ops, R);
  };
  sweep(f, "thm4(k)", {1, 2, 3, 5, 8}, +1,
        [&](double x) { return thm4(1e-5, static_cast<int>(x), 0.1); });
  sweep(f, "thm4(R)", risks, +1, [&](double x) { return thm4(1e-5, 3, x); });
  sweep(f, "thm4(emp)", {0, 1e-6, 1e-5, 1e-3, 0.5}, +1, [&](double x) { return thm4(x, 3, 0.1); });
  expect(f, thm4(0.9, 3, 0.9) <= 2.0, "thm4 caps at n");

  sweep(f, "prop2(gamma)", {0, 0.1, 0.5, 0.9, 0.99}, +1,
        [](double x) { return prop2_bound(x, 1e-4, 10, 2); });
  sweep(f, "prop2(t)", small, +1, [](double x) { return prop2_bound(0.2, x, 10, 2); });
  expect(f, prop2_bound(0.0, 1e-4, 10, 2) == risk_transfer_M(1e-4, 10, 2),
         "prop2 with gamma=0 equals risk_transfer_M");
  expect(f, std::abs(prop2_bound(0.0, 0.03, 10, 1) - 0.03) < 1e-15,
         "prop2 with M=1, gamma=0 is the partial risk");

  sweep(f, "risk_transfer_M(t)", small, +1, [](double x) { return risk_transfer_M(x, 10, 2); });
  sweep(f, "risk_transfer_multi(R)", risks, +1,
        [&](double x) { return risk_transfer_multi(1e-4, ops, x); });
  sweep(f, "risk_transfer_multi(t)", small, +1,
        [&](double x) { return risk_transfer_multi(x, ops, 0.1); });
  {
    const MultiProblemSpec one({Block{3, LabelSpace(10)}});
    expect(f, same_12_digits(risk_transfer_multi(1e-6, one, 0.0), risk_transfer_M(1e-6, 10, 3)),
           "risk_transfer_multi reduces to risk_transfer_M");
  }
  for (double t : small) {
    expect(f, risk_transfer_M(t, 10, 3) >= 0.0 && risk_transfer_M(t, 10, 3) <= 1.0,
           "risk_transfer_M in [0,1]");
    expect(f, phi_I(t, 1, 2, 10) <= 1.0, "phi_I capped at 1");
    if (t > 0.0 && t < 1e-4) expect(f, phi_I(t, 1, 2, 10) >= t, "phi_I(t) >= t");
  }
  return f;
}

/// phi_I(t, 1, M, c) / t at t = 1e-8, c = 10, M = 2.
inline double phi_limit_ratio() { return phi_I(1e-8, 1, 2, 10) / 1e-8; }

}  // namespace mipll::checks

#endif  // MIPLL_TESTS_BOUNDS_CHECKS_HPP_
