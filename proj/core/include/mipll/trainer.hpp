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

#ifndef MIPLL_TRAINER_HPP_
#define MIPLL_TRAINER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mipll/dataset.hpp"
#include "mipll/model.hpp"
#include "mipll/transition.hpp"
#include "mipll/unambiguity.hpp"

namespace mipll {

enum class UnknownMode { kMixture, kHard };

struct TrainConfig {
  int k = 1;
  double learning_rate = 0.5;
  int epochs = 30;
  int batch_size = 0;  // 0 = full batch
  double lambda = 0.0;  // weight of the labelled cross-entropy term
  double weak_weight = 1.0;  // weight of the top-k partial term
  std::uint64_t seed = 0;
  bool exclusive = false;
  UnknownMode mode = UnknownMode::kMixture;
  double posterior_learning_rate = 0.0;  // 0 = learning_rate
};

/// Throws InvalidInput unless k >= 1, rates > 0 and counts are nonnegative.
void validate(const TrainConfig& cfg);

/// Categorical distribution over the candidates of a transition space.
struct TransitionPosterior {
  std::vector<double> logits;

  std::vector<double> probabilities() const;
  std::size_t argmax() const;  // ties to the smallest index
  double entropy() const;      // natural log
};

struct HistoryRow {
  int epoch = 0;
  double topk_risk = 0.0;       // mean top-k loss (mixture loss when unknown)
  double partial01_risk = 0.0;  // mean 1{sigma([f](x)) != s}
  double test_acc = 0.0;        // mean over classifiers; 0 without a test set
  std::vector<double> block_acc;
  std::optional<double> posterior_entropy;
  std::optional<std::size_t> posterior_argmax;
};

struct TrainResult {
  std::vector<ScoringModel> models;  // one per classifier block
  std::vector<HistoryRow> history;   // epoch 0 is the initialisation
  double final_learning_rate = 0.0;
  int retries = 0;
};

struct UnknownTrainResult : TrainResult {
  TransitionPosterior posterior;
};

/// Gradient descent on (w/m) sum top-k loss + (lambda/m_L) sum cross-entropy,
/// w = cfg.weak_weight. `labeled` enables the second term; `test` feeds the
/// history's accuracy column.
TrainResult train_single(std::span<const WeakSample> weak, const Transition& t,
                         const TrainConfig& cfg, const LabeledDataset* labeled = nullptr,
                         const LabeledDataset* test = nullptr);

/// One classifier per block of `spec`, trained jointly. `tests` holds one
/// held-out set per block (or is empty).
TrainResult train_multi(std::span<const WeakSample> weak, const Transition& t,
                        const MultiProblemSpec& spec, const TrainConfig& cfg,
                        const std::vector<LabeledDataset>& tests = {});

/// Mixture mode descends on -log sum_j q_j exp(-loss_j) jointly in the model
/// and the posterior logits. Hard mode trains, each epoch, on the candidate
/// with the smallest empirical top-k risk at the start of the epoch.
UnknownTrainResult train_unknown(std::span<const WeakSample> weak, const TransitionSpace& g,
                                 const TrainConfig& cfg, const LabeledDataset* test = nullptr);

/// history.csv: epoch,topk_risk,partial01_risk,test_acc, then test_acc_<b>
/// per block when there are several, then posterior_entropy,posterior_argmax
/// when present. Values use 17 significant digits.
std::string format_history_csv(const std::vector<HistoryRow>& history);
void write_history_csv(const std::vector<HistoryRow>& history, const std::string& path);

}  // namespace mipll

#endif  // MIPLL_TRAINER_HPP_
