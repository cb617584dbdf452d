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

#ifndef MIPLL_TOOLS_EXPERIMENT_HPP_
#define MIPLL_TOOLS_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mipll/evaluate.hpp"
#include "mipll/labels.hpp"
#include "mipll/trainer.hpp"
#include "mipll_tools/config.hpp"

namespace mipll::tools {

enum class ExperimentMode { kSingle, kMulti, kUnknown };

/// One synthetic training run: data generation, weak labelling, training,
/// held-out evaluation and the error bound.
struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::kSingle;
  std::string family = "sum";  // sum | product | expr
  std::string expr;
  int arity = 2;
  int labels = 10;
  int offset = 0;
  std::vector<Block> blocks;        // multi mode
  std::vector<int> weight_values;   // unknown mode: grid axis
  std::vector<int> true_weights;    // unknown mode: generating tuple

  int per_class = 500;
  int test_per_class = 200;
  int dim = 2;
  double separation = 4.0;
  std::size_t m_P = 4000;
  int labeled_per_class = 0;  // > 0 draws a small labelled set for lambda

  TrainConfig train;
  double delta = 0.05;
  double risk_bound = 0.0;  // R for the multi-classifier bound
  int rademacher_draws = 20;
};

/// Reads every recognised key and rejects unknown ones. Keys: mode, family,
/// expr, arity, labels, offset, blocks (count:labels[:offset],...),
/// weight_values, true_weights, per_class, test_per_class, dim, separation,
/// m_P, labeled_per_class, k, learning_rate, epochs, batch_size, lambda,
/// weak_weight, seed, exclusive, unknown_mode, posterior_learning_rate,
/// delta, R, rademacher_draws.
ExperimentConfig experiment_from_config(const KeyValueConfig& cfg);

std::vector<Block> parse_blocks(const std::string& text);

struct ExperimentResult {
  TrainResult train;
  EvaluationReport test;
  double bound = 1.0;  // error bound from the final training risk
  std::optional<TransitionPosterior> posterior;
  std::vector<int> posterior_tag;  // weight tuple of the posterior argmax
  bool recovered = false;          // posterior argmax is the generating candidate
  std::optional<bool> space_unambiguous;

  /// `final_acc=<a> partial01=<p> thm2_bound=<b>`, plus posterior fields in
  /// unknown mode. 12 significant digits.
  std::string summary_line() const;
};

/// Deterministic in the config. The train, test and weak-labelling streams
/// are seeded from train.seed at fixed offsets.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace mipll::tools

#endif  // MIPLL_TOOLS_EXPERIMENT_HPP_
