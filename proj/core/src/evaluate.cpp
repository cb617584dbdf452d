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

#include "mipll/evaluate.hpp"

#include <algorithm>

#include "mipll/error.hpp"
#include "mipll/topk_loss.hpp"

namespace mipll {

double ConfusionStats::off_diagonal_sum() const {
  double total = 0.0;
  for (std::size_t i = 0; i < entries.rows(); ++i) {
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      if (i != j) total += entries(i, j);
    }
  }
  return total;
}

EvaluationReport evaluate(const std::vector<ScoringModel>& models,
                          const std::vector<LabeledDataset>& tests, const Transition& t, int k,
                          bool exclusive) {
  const InputLayout& layout = t.layout();
  const std::size_t n = layout.blocks().size();
  if (models.size() != n || tests.size() != n) {
    throw InvalidInput("need one model and one test set per classifier block");
  }

  EvaluationReport report;
  std::vector<std::vector<int>> predictions(n);
  for (std::size_t b = 0; b < n; ++b) {
    const LabeledDataset& test = tests[b];
    if (test.size() == 0) throw InvalidInput("test set is empty");
    const int c = layout.blocks()[b].space.size();
    if (test.classes != c || models[b].classes() != c || models[b].dim() != test.dim) {
      throw InvalidInput("model or test set does not match block " + std::to_string(b + 1));
    }
    ConfusionStats conf{Matrix(c, c, 0.0)};
    const double unit = 1.0 / static_cast<double>(test.size());
    std::size_t right = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const int pred = models[b].predict(test.row(i));
      predictions[b].push_back(pred);
      conf.entries(test.labels[i], pred) += unit;
      right += pred == test.labels[i];
    }
    const double acc = static_cast<double>(right) / static_cast<double>(test.size());
    report.block_accuracy.push_back(acc);
    report.confusion.push_back(std::move(conf));
  }
  double acc_sum = 0.0;
  for (double a : report.block_accuracy) acc_sum += a;
  report.accuracy = acc_sum / static_cast<double>(n);
  report.risk = 1.0 - report.accuracy;

  std::size_t groups = SIZE_MAX;
  for (std::size_t b = 0; b < n; ++b) {
    groups = std::min(groups, tests[b].size() / static_cast<std::size_t>(layout.blocks()[b].count));
  }
  report.groups = groups;
  if (groups == 0) return report;

  ScoreRows scores(layout.arity());
  LabelVector gold(layout.arity());
  LabelVector pred(layout.arity());
  std::size_t wrong = 0;
  double topk = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    for (int i = 0; i < layout.arity(); ++i) {
      const int b = layout.block_of(i);
      const std::size_t at =
          g * layout.blocks()[b].count + static_cast<std::size_t>(i - layout.block_begin(b));
      gold[i] = tests[b].labels[at];
      pred[i] = predictions[b][at];
      scores[i] = models[b].forward(tests[b].row(at));
    }
    const PartialLabel s = t.apply(gold);
    wrong += zero_one_partial_loss(pred, t, s);
    topk += topk_partial_loss(scores, t, s, k, exclusive);
  }
  report.partial01_risk = static_cast<double>(wrong) / static_cast<double>(groups);
  report.topk_risk = topk / static_cast<double>(groups);
  return report;
}

EvaluationReport evaluate(const ScoringModel& model, const LabeledDataset& test,
                          const Transition& t, int k, bool exclusive) {
  return evaluate(std::vector<ScoringModel>{model}, std::vector<LabeledDataset>{test}, t, k,
                  exclusive);
}

}  // namespace mipll
