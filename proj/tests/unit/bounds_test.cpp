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

#include <gtest/gtest.h>

#include "bounds_checks.hpp"
#include "mipll/error.hpp"

namespace mipll {
namespace {

TEST(Bounds, SpotValuesMatchTheOracleScript) {
  for (const auto& s : checks::spot_values()) {
    EXPECT_TRUE(checks::same_12_digits(s.got, s.want))
        << s.name << ": got " << s.got << " want " << s.want;
  }
}

TEST(Bounds, RiskTransferArithmetic) {
  EXPECT_DOUBLE_EQ(risk_transfer_M(1e-4, 10, 2), 0.1);
  EXPECT_EQ(risk_transfer_M(0.0, 10, 2), 0.0);
  EXPECT_DOUBLE_EQ(risk_transfer_M(0.37, 10, 1), 0.37);
  EXPECT_EQ(risk_transfer_M(0.5, 10, 3), 1.0);
  EXPECT_DOUBLE_EQ(prop2_bound(0.5, 1e-4, 10, 2), 0.2);
  EXPECT_THROW(prop2_bound(1.0, 1e-4, 10, 2), InvalidInput);
  EXPECT_THROW(risk_transfer_M(1.5, 10, 2), InvalidInput);
}

TEST(Bounds, PhiBranches) {
  EXPECT_EQ(phi_I(0.0, 1, 2, 10), 0.0);
  EXPECT_NEAR(phi_I(1e-6, 1, 2, 10), 1e-6 / 0.99, 1e-18);
  // Once c^{2M-2} t reaches 1 only the power branch remains.
  EXPECT_DOUBLE_EQ(phi_I(0.02, 1, 2, 10), 1.0);
  const double root = std::cbrt(1e4 * 2e-5);
  EXPECT_NEAR(phi_I(2e-5, 1, 3, 10),
              std::min(2e-5 / ((1 - root) * (1 - root)), std::cbrt(2e-5) * 100), 1e-15);
  EXPECT_THROW(phi_I(0.1, 3, 2, 10), InvalidInput);
  EXPECT_THROW(phi_I(0.1, 0, 2, 10), InvalidInput);
}

TEST(Bounds, FullIndexSetIsTheRiskTransferRoot) {
  // At I = M the first branch is (t c^{2M-2})^{1/M}; the power branch
  // t^{1/M} c^2 is larger by c^{2/M}, so the minimum is the first branch.
  for (double t : {1e-8, 1e-6, 1e-5}) {
    EXPECT_NEAR(phi_I(t, 2, 2, 10), risk_transfer_M(t, 10, 2), 1e-15);
  }
}

TEST(Bounds, SampleComplexityRoundsUp) {
  const SampleComplexity s = sample_complexity_thm1(10, 2, 0.1, 0.1, 10);
  EXPECT_EQ(s.required, std::ceil(s.value));
  EXPECT_EQ(s.required, 6553228.0);
  EXPECT_THROW(sample_complexity_thm1(10, 2, 0.1, 1.0, 10), InvalidInput);
  EXPECT_THROW(sample_complexity_prop1(10, 2, 0.1, 1.0, 10), InvalidInput);
  EXPECT_THROW(sample_complexity_thm1(10, 2, 0.0, 0.1, 10), InvalidInput);
  EXPECT_THROW(sample_complexity_thm5(10, 2, 0.1, 0.1, 0.0, 10, 6), InvalidInput);
}

TEST(Bounds, MultiSpecValidation) {
  MultiBoundSpec bad = checks::two_classifier_bound_spec();
  bad.dims.pop_back();
  EXPECT_THROW(sample_complexity_thm3(bad, 0.1, 0.1, 0.5), InvalidInput);
  EXPECT_THROW(error_bound_thm4(0.1, {0.1}, 100, 0.1, 1, checks::operator_problem(), 0.1),
               InvalidInput);
  EXPECT_THROW(risk_transfer_multi(0.1, checks::operator_problem(), 1.0), InvalidInput);
}

TEST(Bounds, ProofExponentIsSmaller) {
  const MultiProblemSpec ops = checks::operator_problem();
  EXPECT_LT(risk_transfer_multi(1e-4, ops, 0.3, RiskExponent::kProof),
            risk_transfer_multi(1e-4, ops, 0.3, RiskExponent::kStatement));
  EXPECT_EQ(risk_transfer_multi(0.0, ops, 0.3), 0.0);
  EXPECT_LE(risk_transfer_multi(0.9, ops, 0.9), 2.0);
}

TEST(Property, MonotonicitySweeps) {
  for (const auto& failure : checks::monotonicity_failures()) ADD_FAILURE() << failure;
}

}  // namespace
}  // namespace mipll
