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

#include "mipll/topk_loss.hpp"

#include <algorithm>
#include <cmath>

#include "mipll/error.hpp"

namespace mipll {

namespace {

void check_scores(const ScoreRows& scores, const InputLayout& layout) {
  if (static_cast<int>(scores.size()) != layout.arity()) {
    throw InvalidInput("score table has " + std::to_string(scores.size()) + " rows, expected " +
                       std::to_string(layout.arity()));
  }
  for (int i = 0; i < layout.arity(); ++i) {
    if (static_cast<int>(scores[i].size()) != layout.space(i).size()) {
      throw InvalidInput("score row " + std::to_string(i + 1) + " has the wrong length");
    }
  }
}

}  // namespace

double vector_probability(const ScoreRows& scores, std::span<const int> y) {
  double p = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) p *= scores[i][y[i]];
  return p;
}

std::vector<LabelVector> topk_select(const ScoreRows& scores, const Transition& t,
                                     PartialLabel s, int k) {
  if (k < 1) throw InvalidInput("k must be positive");
  check_scores(scores, t.layout());
  const auto idx = t.output_index(s);
  if (!idx) throw InvalidInput("partial label " + std::to_string(s) + " is not an output");

  const auto& ranks = t.preimage_ranks(*idx);
  struct Entry {
    double p;
    std::uint64_t rank;
  };
  std::vector<Entry> entries;
  entries.reserve(ranks.size());
  LabelVector y(t.arity());
  for (auto r : ranks) {
    t.layout().unrank_into(r, y);
    entries.push_back({vector_probability(scores, y), r});
  }
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), entries.size());
  // Ranks ascend in lexicographic order, so they break probability ties.
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(take),
                    entries.end(), [](const Entry& a, const Entry& b) {
                      return a.p != b.p ? a.p > b.p : a.rank < b.rank;
                    });
  std::vector<LabelVector> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(t.layout().unrank(entries[i].rank));
  return out;
}

double topk_partial_loss(const ScoreRows& scores, const Transition& t, PartialLabel s, int k,
                         bool exclusive) {
  const auto top = topk_select(scores, t, s, k);
  return semantic_loss(formula_from_vectors(top, exclusive), scores);
}

double topk_l1_loss(const ScoreRows& scores, const Transition& t, PartialLabel s, int k,
                    bool exclusive) {
  const auto top = topk_select(scores, t, s, k);
  return 1.0 - wmc(formula_from_vectors(top, exclusive), scores);
}

int zero_one_partial_loss(std::span<const int> prediction, const Transition& t, PartialLabel s) {
  return t.apply(prediction) != s ? 1 : 0;
}

LossGradient grad_semantic_loss(const DnfFormula& phi, const ScoreRows& scores) {
  const WmcGradient g = wmc_with_gradient(phi, scores);
  LossGradient out;
  out.loss = -std::log(g.value);
  out.gradient.resize(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out.gradient[i].assign(scores[i].size(), 0.0);
  for (std::size_t j = 0; j < g.variables.size(); ++j) {
    const auto& v = g.variables[j];
    out.gradient[v.position][v.label] = -g.gradient[j] / g.value;
  }
  return out;
}

LossGradient grad_topk_loss(const ScoreRows& scores, const Transition& t, PartialLabel s, int k,
                            bool exclusive) {
  const auto top = topk_select(scores, t, s, k);
  return grad_semantic_loss(formula_from_vectors(top, exclusive), scores);
}

}  // namespace mipll
