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

#ifndef MIPLL_WMC_HPP_
#define MIPLL_WMC_HPP_

#include <compare>
#include <span>
#include <vector>

#include "mipll/labels.hpp"

namespace mipll {

/// Boolean variable A_{position, label}: "input `position` has `label`".
struct LabelVariable {
  int position;
  int label;

  friend auto operator<=>(const LabelVariable&, const LabelVariable&) = default;
};

/// Positive DNF over label variables. Each conjunction is sorted and free of
/// duplicates; conjunctions are distinct.
struct DnfFormula {
  std::vector<std::vector<LabelVariable>> disjuncts;
  /// Conjoin the constraint "at most one variable of the formula is true per
  /// position".
  bool exclusive = false;

  /// Distinct variables in ascending order.
  std::vector<LabelVariable> variables() const;
};

/// weights[position][label] = probability that A_{position,label} is true.
using WeightTable = std::vector<std::vector<double>>;

inline constexpr double kWeightFloor = 1e-12;
inline constexpr double kWmcFloor = 1e-300;
inline constexpr int kMaxInclusionExclusionDisjuncts = 20;
inline constexpr int kMaxBruteForceVariables = 22;

/// One conjunction per vector, in input order; repeated vectors are kept once.
DnfFormula formula_from_vectors(std::span<const LabelVector> vectors, bool exclusive = false);

/// Builds a formula from explicit conjunctions (sorted and deduplicated).
DnfFormula make_formula(std::vector<std::vector<LabelVariable>> conjunctions,
                        bool exclusive = false);

/// Exact WMC. Uses inclusion-exclusion when the formula has at most 20
/// disjuncts and otherwise interpretation enumeration (at most 22 variables).
/// Weights are clamped into [1e-12, 1 - 1e-12], the result into [1e-300, 1].
double wmc(const DnfFormula& phi, const WeightTable& w);

/// Inclusion-exclusion over disjuncts, unclamped result.
double wmc_inclusion_exclusion(const DnfFormula& phi, const WeightTable& w);

/// Sum of interpretation probabilities over the formula's variables,
/// unclamped result.
double wmc_brute_force(const DnfFormula& phi, const WeightTable& w);

/// -log(wmc).
double semantic_loss(const DnfFormula& phi, const WeightTable& w);

struct WmcGradient {
  double value = 0.0;                  // clamped WMC
  std::vector<LabelVariable> variables;  // ascending
  std::vector<double> gradient;        // d value / d w(variable)
};

/// WMC and its exact partial derivatives by forward-mode dual numbers.
WmcGradient wmc_with_gradient(const DnfFormula& phi, const WeightTable& w);

}  // namespace mipll

#endif  // MIPLL_WMC_HPP_
