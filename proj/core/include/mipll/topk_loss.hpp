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

#ifndef MIPLL_TOPK_LOSS_HPP_
#define MIPLL_TOPK_LOSS_HPP_

#include <span>
#include <vector>

#include "mipll/transition.hpp"
#include "mipll/wmc.hpp"

namespace mipll {

/// scores[i][y] = f^y(x_i); row i has the size of position i's label space.
using ScoreRows = WeightTable;

/// prod_i scores[i][y_i].
double vector_probability(const ScoreRows& scores, std::span<const int> y);

/// The k preimage vectors of s with the largest probability, best first;
/// equal probabilities keep lexicographic order. Throws if s is not an output.
std::vector<LabelVector> topk_select(const ScoreRows& scores, const Transition& t,
                                     PartialLabel s, int k);

/// Semantic loss of the top-k formula.
double topk_partial_loss(const ScoreRows& scores, const Transition& t, PartialLabel s, int k,
                         bool exclusive = false);

/// 1 - WMC of the top-k formula.
double topk_l1_loss(const ScoreRows& scores, const Transition& t, PartialLabel s, int k,
                    bool exclusive = false);

/// 1{sigma(prediction) != s}.
int zero_one_partial_loss(std::span<const int> prediction, const Transition& t, PartialLabel s);

struct LossGradient {
  double loss = 0.0;
  ScoreRows gradient;  // d loss / d scores[i][y], same shape as the scores
};

/// Top-k semantic loss and its gradient with the selection held fixed.
LossGradient grad_topk_loss(const ScoreRows& scores, const Transition& t, PartialLabel s, int k,
                            bool exclusive = false);

/// Gradient of a formula's semantic loss, scattered into score shape.
LossGradient grad_semantic_loss(const DnfFormula& phi, const ScoreRows& scores);

}  // namespace mipll

#endif  // MIPLL_TOPK_LOSS_HPP_
