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

#ifndef MIPLL_BOUNDS_HPP_
#define MIPLL_BOUNDS_HPP_

#include <vector>

#include "mipll/unambiguity.hpp"

// Closed-form risk-transfer, sample-complexity and error-bound calculators.
// Logarithms are natural. Universal constants default to 1, so thresholds
// are exact in shape only. Risk bounds are capped at 1 (or n for n
// classifiers). Preconditions are enforced with InvalidInput.
namespace mipll {

/// Which (1 - R) exponent the multi-classifier results use: the total arity M
/// as stated, or M - M_* as carried through the derivation.
enum class RiskExponent { kStatement, kProof };

struct SampleComplexity {
  double value = 0.0;      // right-hand side before rounding
  double required = 0.0;   // ceil(value)
  bool valid = true;       // false when epsilon is outside a stated range
};

/// Multi-classifier problem plus one Natarajan dimension per classifier.
struct MultiBoundSpec {
  MultiProblemSpec problem;
  std::vector<double> dims;  // d_[F_i], parallel to problem.blocks()
};

/// min(1, (c^(2M-2) t)^(1/M)).
double risk_transfer_M(double t, int c, int M);

/// min of (t c^(2I-2) / (1 - (c^(2M-2) t)^(1/M))^(M-I))^(1/I) and
/// t^(1/M) c^2, the first branch read as +inf once (c^(2M-2) t)^(1/M) >= 1;
/// capped at 1.
double phi_I(double t, int I, int M, int c);

SampleComplexity sample_complexity_thm1(int c, int M, double eps, double delta, double d_F,
                                        double C = 1.0);

/// Rate 1/eps; `valid` iff eps <= 1 / ((2M)^M c^(2M-2)).
SampleComplexity sample_complexity_prop1(int c, int M, double eps, double delta, double d_F,
                                         double C = 1.0);

SampleComplexity sample_complexity_thm3(const MultiBoundSpec& spec, double eps, double delta,
                                        double R, double C = 1.0,
                                        RiskExponent form = RiskExponent::kStatement);

/// Unknown transition: r is the recall lower bound, d_G the VC dimension of
/// the transition class.
SampleComplexity sample_complexity_thm5(int c, int M, double eps, double delta, double r,
                                        double d_F, double d_G, double C = 1.0);

struct VcBounds {
  double unknown = 0.0;  // 2((d_F+d_G) log(6M(d_F+d_G)) + 2 d_F log c)
  double known = 0.0;    // 2(d_F log(6M d_F) + 2 d_F log c)
  double multi = 0.0;    // 4 sum_i (d_i log(M_i n d_i) + 2 d_i log c_i); 0 without a spec
};

VcBounds vc_bounds(double d_F, double d_G, int M, int c, const MultiBoundSpec* spec = nullptr);

/// phi_1((k+1)(R + 2 sqrt(k) M^(3/2) rad + sqrt(log(1/delta) / (2 m_P)))),
/// where `rad` is the Rademacher complexity on M m_P points.
double error_bound_thm2(double emp_topk_risk, double rad, double m_P, double delta, int k, int M,
                        int c);

/// ((n c0^(2M*-2) (k+1) / (1-R)^e) (R + sqrt(kM) sum_i M_i rad_i
/// + sqrt(log(1/delta) / (2 m_P))))^(1/M*), capped at n.
double error_bound_thm4(double emp_topk_risk, const std::vector<double>& rads, double m_P,
                        double delta, int k, const MultiProblemSpec& spec, double R,
                        RiskExponent form = RiskExponent::kStatement);

/// risk_transfer_M scaled by 1/(1 - gamma), capped at 1.
double prop2_bound(double gamma, double t, int c, int M);

/// (((n c0^2)^(M*-1) / (1-R)^e) t)^(1/M*), capped at n.
double risk_transfer_multi(double t, const MultiProblemSpec& spec, double R,
                           RiskExponent form = RiskExponent::kProof);

}  // namespace mipll

#endif  // MIPLL_BOUNDS_HPP_
