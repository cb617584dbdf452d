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

#ifndef MIPLL_EVALUATE_HPP_
#define MIPLL_EVALUATE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "mipll/dataset.hpp"
#include "mipll/model.hpp"
#include "mipll/transition.hpp"
#include "mipll/transition_matrix.hpp"

namespace mipll {

/// entries(i, j) = fraction of test points with gold i predicted as j.
struct ConfusionStats {
  Matrix entries;

  double off_diagonal_sum() const;
};

struct EvaluationReport {
  double risk = 0.0;  // zero-one classification risk, mean over classifiers
  double accuracy = 0.0;
  std::vector<double> block_accuracy;
  std::vector<ConfusionStats> confusion;  // one per classifier
  std::size_t groups = 0;                 // regrouped weak samples
  double partial01_risk = 0.0;
  double topk_risk = 0.0;
};

/// Regroups each block's test set into consecutive runs of that block's
/// position count, in order (as many groups as the scarcest block allows),
/// labels each group with s = sigma(gold), and scores the models on them.
EvaluationReport evaluate(const std::vector<ScoringModel>& models,
                          const std::vector<LabeledDataset>& tests, const Transition& t, int k,
                          bool exclusive = false);

/// Single-classifier convenience overload.
EvaluationReport evaluate(const ScoringModel& model, const LabeledDataset& test,
                          const Transition& t, int k, bool exclusive = false);

/// Monte-Carlo Rademacher complexity of {x -> w . [x; 1] : |w|_2 <= B} on m
/// points drawn with replacement from `features` (rows of `dim`): the mean
/// over `draws` sign vectors of the supremum of (1/m) sum_i eps_i w . x_i,
/// each supremum found by 200 steps of projected gradient ascent.
double rademacher_estimate(double bound, std::span<const double> features, int dim,
                           std::size_t m, int draws, std::uint64_t seed);

/// Largest row norm of [W] over the models, the B that contains them.
double weight_norm_bound(const std::vector<ScoringModel>& models);

}  // namespace mipll

#endif  // MIPLL_EVALUATE_HPP_
