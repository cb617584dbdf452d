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

#include "mipll/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "mipll/error.hpp"
#include "mipll/topk_loss.hpp"

namespace mipll {

void validate(const TrainConfig& cfg) {
  if (cfg.k < 1) throw InvalidInput("k must be at least 1");
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw InvalidInput("learning_rate must be positive");
  }
  if (cfg.epochs < 0) throw InvalidInput("epochs must be nonnegative");
  if (cfg.batch_size < 0) throw InvalidInput("batch_size must be nonnegative");
  if (!(cfg.lambda >= 0.0) || !(cfg.weak_weight >= 0.0)) {
    throw InvalidInput("lambda and weak_weight must be nonnegative");
  }
  if (!(cfg.posterior_learning_rate >= 0.0)) {
    throw InvalidInput("posterior_learning_rate must be nonnegative");
  }
}

std::vector<double> TransitionPosterior::probabilities() const {
  std::vector<double> q(logits.size());
  if (logits.empty()) return q;
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) total += q[j] = std::exp(logits[j] - top);
  for (auto& v : q) v /= total;
  return q;
}

std::size_t TransitionPosterior::argmax() const {
  return static_cast<std::size_t>(std::max_element(logits.begin(), logits.end()) - logits.begin());
}

double TransitionPosterior::entropy() const {
  double h = 0.0;
  for (double p : probabilities()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

namespace {

// Per-candidate responsibilities below this are dropped from the gradient.
constexpr double kMinResponsibility = 1e-12;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class Trainer {
 public:
  Trainer(std::span<const WeakSample> weak, const InputLayout& layout,
          std::vector<const Transition*> candidates, bool unknown, const TrainConfig& cfg,
          std::vector<const LabeledDataset*> labeled, std::vector<const LabeledDataset*> tests)
      : weak_(weak),
        layout_(layout),
        candidates_(std::move(candidates)),
        unknown_(unknown),
        cfg_(cfg),
        labeled_(std::move(labeled)),
        tests_(std::move(tests)),
        rng_(cfg.seed) {
    validate(cfg_);
    if (weak_.empty() && cfg_.weak_weight > 0.0) throw InvalidInput("weak dataset is empty");
    const int m = layout_.arity();
    dim_ = 0;
    if (!weak_.empty()) {
      if (weak_.front().features.size() % static_cast<std::size_t>(m) != 0) {
        throw InvalidInput("weak sample features do not split into arity rows");
      }
      dim_ = static_cast<int>(weak_.front().features.size() / m);
    } else {
      for (const auto* l : labeled_) {
        if (l) dim_ = l->dim;
      }
    }
    if (dim_ < 1) throw InvalidInput("cannot infer the feature dimension");
    for (const auto& s : weak_) {
      if (s.features.size() != static_cast<std::size_t>(m) * dim_) {
        throw InvalidInput("weak samples differ in feature size");
      }
    }
    for (std::size_t b = 0; b < layout_.blocks().size(); ++b) {
      const int classes = layout_.blocks()[b].space.size();
      for (const auto* set : {labeled_[b], tests_[b]}) {
        if (set && (set->dim != dim_ || set->classes != classes)) {
          throw InvalidInput("labelled set does not match block " + std::to_string(b + 1));
        }
      }
    }

    // Models first, in block order, so every setting consumes the seed alike.
    for (const auto& block : layout_.blocks()) {
      models_.push_back(ScoringModel::random(block.space.size(), dim_, rng_));
    }
    logits_.assign(candidates_.size(), 0.0);
    scores_.resize(m);
    for (int i = 0; i < m; ++i) scores_[i].assign(layout_.space(i).size(), 0.0);
    learning_rate_ = cfg_.learning_rate;
  }

  void run(TrainResult& out, TransitionPosterior* posterior) {
    if (unknown_ && cfg_.mode == UnknownMode::kHard) refresh_hard_choice();
    out.history.push_back(evaluate(0));
    for (int epoch = 1; epoch <= cfg_.epochs; ++epoch) {
      const auto saved_models = models_;
      const auto saved_logits = logits_;
      const auto saved_rng = rng_;
      int attempt = 0;
      while (!run_epoch()) {
        models_ = saved_models;
        logits_ = saved_logits;
        rng_ = saved_rng;
        if (++attempt > 5) throw TrainingDiverged(static_cast<std::size_t>(epoch));
        learning_rate_ /= 2.0;
        ++out.retries;
      }
      if (unknown_ && cfg_.mode == UnknownMode::kHard) refresh_hard_choice();
      out.history.push_back(evaluate(epoch));
    }
    out.models = models_;
    out.final_learning_rate = learning_rate_;
    if (posterior) posterior->logits = logits_;
  }

 private:
  // Fills scores_ for a sample; false if any probability is non-finite.
  bool score(const WeakSample& sample) {
    for (int i = 0; i < layout_.arity(); ++i) {
      models_[layout_.block_of(i)].forward(instance(sample, i), scores_[i]);
      for (double p : scores_[i]) {
        if (!std::isfinite(p)) return false;
      }
    }
    return true;
  }

  std::span<const double> instance(const WeakSample& sample, int i) const {
    return {sample.features.data() + static_cast<std::size_t>(i) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  double candidate_loss(const Transition& t, PartialLabel s) const {
    if (!t.has_output(s)) return -std::log(kWmcFloor);
    return topk_partial_loss(scores_, t, s, cfg_.k, cfg_.exclusive);
  }

  std::vector<double> mixture_weights() const {
    if (!unknown_) return {1.0};
    TransitionPosterior p{logits_};
    return p.probabilities();
  }

  // -log sum_j q_j exp(-loss_j), and the responsibilities r_j.
  static double mixture(const std::vector<double>& q, const std::vector<double>& losses,
                        std::vector<double>* r) {
    double low = INFINITY;
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q[j] > 0.0) low = std::min(low, losses[j]);
    }
    double total = 0.0;
    std::vector<double> terms(q.size(), 0.0);
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q[j] > 0.0) total += terms[j] = q[j] * std::exp(-(losses[j] - low));
    }
    if (r) {
      r->assign(q.size(), 0.0);
      for (std::size_t j = 0; j < q.size(); ++j) (*r)[j] = terms[j] / total;
    }
    return low - std::log(total);
  }

  // Chain rule from d loss / d scores into the per-block gradient buffers.
  void backprop(const WeakSample& sample, const ScoreRows& dscores, double coeff) {
    std::vector<double> dp;
    std::vector<double> dz;
    for (int i = 0; i < layout_.arity(); ++i) {
      const auto& p = scores_[i];
      dp.resize(p.size());
      dz.resize(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) dp[j] = coeff * dscores[i][j];
      softmax_backward(p, dp, dz);
      const int b = layout_.block_of(i);
      models_[b].accumulate_gradient(instance(sample, i), dz, grads_[b]);
    }
  }

  // Adds one weak sample's contribution; returns its loss.
  double weak_contribution(const WeakSample& sample, double scale, const std::vector<double>& q) {
    if (!score(sample)) return NAN;
    if (!unknown_ || cfg_.mode == UnknownMode::kHard) {
      const Transition& t = *candidates_[unknown_ ? hard_choice_ : 0];
      if (!t.has_output(sample.s)) {
        if (!unknown_) throw InvalidInput("partial label " + std::to_string(sample.s) +
                                          " is not an output of the transition");
        return -std::log(kWmcFloor);
      }
      const LossGradient lg = grad_topk_loss(scores_, t, sample.s, cfg_.k, cfg_.exclusive);
      backprop(sample, lg.gradient, scale * 1.0);
      return lg.loss;
    }
    std::vector<double> losses(candidates_.size());
    for (std::size_t j = 0; j < candidates_.size(); ++j) {
      losses[j] = candidate_loss(*candidates_[j], sample.s);
    }
    std::vector<double> r;
    const double loss = mixture(q, losses, &r);
    for (std::size_t j = 0; j < candidates_.size(); ++j) {
      if (r[j] <= kMinResponsibility || !candidates_[j]->has_output(sample.s)) continue;
      const LossGradient lg =
          grad_topk_loss(scores_, *candidates_[j], sample.s, cfg_.k, cfg_.exclusive);
      backprop(sample, lg.gradient, scale * r[j]);
    }
    for (std::size_t j = 0; j < candidates_.size(); ++j) {
      logit_grad_[j] += scale * (q[j] - r[j]);
    }
    return loss;
  }

  double labeled_contribution(std::size_t b, double scale) {
    const LabeledDataset& data = *labeled_[b];
    std::vector<double> p(data.classes);
    double loss = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
      models_[b].forward(data.row(n), p);
      const int y = data.labels[n];
      loss -= std::log(std::max(p[y], kWmcFloor));
      for (int j = 0; j < data.classes; ++j) p[j] = scale * (p[j] - (j == y ? 1.0 : 0.0));
      models_[b].accumulate_gradient(data.row(n), p, grads_[b]);
    }
    return loss;
  }

  bool run_epoch() {
    const std::size_t m = weak_.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t batch =
        cfg_.batch_size == 0 || static_cast<std::size_t>(cfg_.batch_size) >= m
            ? std::max<std::size_t>(m, 1)
            : static_cast<std::size_t>(cfg_.batch_size);
    if (batch < m) std::shuffle(order.begin(), order.end(), rng_);
    const double post_rate =
        cfg_.posterior_learning_rate > 0.0 ? cfg_.posterior_learning_rate : cfg_.learning_rate;
    // Halving applies to both rates alike.
    const double post_step = post_rate * (learning_rate_ / cfg_.learning_rate);

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < std::max<std::size_t>(m, 1); start += batch) {
      const std::size_t end = std::min(m, start + batch);
      grads_.clear();
      for (const auto& model : models_) grads_.emplace_back(model.weights().size(), 0.0);
      logit_grad_.assign(candidates_.size(), 0.0);
      const std::vector<double> q = mixture_weights();

      if (cfg_.weak_weight > 0.0) {
        const double scale = cfg_.weak_weight / static_cast<double>(end - start);
        for (std::size_t n = start; n < end; ++n) {
          epoch_loss += weak_contribution(weak_[order[n]], scale, q);
          if (!std::isfinite(epoch_loss)) return false;
        }
      }
      if (cfg_.lambda > 0.0) {
        for (std::size_t b = 0; b < labeled_.size(); ++b) {
          if (!labeled_[b] || labeled_[b]->size() == 0) continue;
          epoch_loss += labeled_contribution(b, cfg_.lambda / labeled_[b]->size());
          if (!std::isfinite(epoch_loss)) return false;
        }
      }

      for (std::size_t b = 0; b < models_.size(); ++b) {
        auto& w = models_[b].weights();
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= learning_rate_ * grads_[b][j];
        if (!all_finite(w)) return false;
      }
      if (unknown_ && cfg_.mode == UnknownMode::kMixture) {
        for (std::size_t j = 0; j < logits_.size(); ++j) logits_[j] -= post_step * logit_grad_[j];
        if (!all_finite(logits_)) return false;
      }
    }
    return std::isfinite(epoch_loss);
  }

  // Hard mode: pick the candidate with the smallest empirical top-k risk and
  // record the Gibbs posterior softmax(-m * risk).
  void refresh_hard_choice() {
    std::vector<double> risk(candidates_.size(), 0.0);
    for (const auto& sample : weak_) {
      if (!score(sample)) return;
      for (std::size_t j = 0; j < candidates_.size(); ++j) {
        risk[j] += candidate_loss(*candidates_[j], sample.s);
      }
    }
    hard_choice_ = static_cast<std::size_t>(std::min_element(risk.begin(), risk.end()) - risk.begin());
    for (std::size_t j = 0; j < risk.size(); ++j) logits_[j] = -risk[j];
  }

  HistoryRow evaluate(int epoch) {
    HistoryRow row;
    row.epoch = epoch;
    const std::vector<double> q = mixture_weights();
    TransitionPosterior post{logits_};
    const std::size_t chosen = unknown_ ? post.argmax() : 0;
    const Transition& best = *candidates_[chosen];

    double topk = 0.0;
    std::size_t wrong = 0;
    LabelVector y(layout_.arity());
    for (const auto& sample : weak_) {
      if (!score(sample)) {
        topk = NAN;
        continue;
      }
      if (!unknown_) {
        topk += candidate_loss(best, sample.s);
      } else {
        std::vector<double> losses(candidates_.size());
        for (std::size_t j = 0; j < candidates_.size(); ++j) {
          losses[j] = candidate_loss(*candidates_[j], sample.s);
        }
        topk += mixture(q, losses, nullptr);
      }
      for (int i = 0; i < layout_.arity(); ++i) {
        y[i] = models_[layout_.block_of(i)].predict(instance(sample, i));
      }
      wrong += zero_one_partial_loss(y, best, sample.s);
    }
    const double m = static_cast<double>(std::max<std::size_t>(weak_.size(), 1));
    row.topk_risk = topk / m;
    row.partial01_risk = static_cast<double>(wrong) / m;

    double acc_sum = 0.0;
    int acc_count = 0;
    for (std::size_t b = 0; b < tests_.size(); ++b) {
      if (!tests_[b] || tests_[b]->size() == 0) continue;
      const LabeledDataset& test = *tests_[b];
      std::size_t right = 0;
      for (std::size_t n = 0; n < test.size(); ++n) {
        right += models_[b].predict(test.row(n)) == test.labels[n];
      }
      const double acc = static_cast<double>(right) / static_cast<double>(test.size());
      row.block_acc.push_back(acc);
      acc_sum += acc;
      ++acc_count;
    }
    row.test_acc = acc_count ? acc_sum / acc_count : 0.0;
    if (unknown_) {
      row.posterior_entropy = post.entropy();
      row.posterior_argmax = chosen;
    }
    return row;
  }

  std::span<const WeakSample> weak_;
  const InputLayout& layout_;
  std::vector<const Transition*> candidates_;
  bool unknown_;
  TrainConfig cfg_;
  std::vector<const LabeledDataset*> labeled_;
  std::vector<const LabeledDataset*> tests_;
  std::mt19937_64 rng_;

  int dim_ = 0;
  double learning_rate_ = 0.0;
  std::vector<ScoringModel> models_;
  std::vector<double> logits_;
  std::size_t hard_choice_ = 0;
  ScoreRows scores_;
  std::vector<std::vector<double>> grads_;
  std::vector<double> logit_grad_;
};

}  // namespace

TrainResult train_single(std::span<const WeakSample> weak, const Transition& t,
                         const TrainConfig& cfg, const LabeledDataset* labeled,
                         const LabeledDataset* test) {
  if (!t.layout().single_block()) throw InvalidInput("train_single needs a single-block transition");
  TrainResult out;
  Trainer(weak, t.layout(), {&t}, false, cfg, {labeled}, {test}).run(out, nullptr);
  return out;
}

TrainResult train_multi(std::span<const WeakSample> weak, const Transition& t,
                        const MultiProblemSpec& spec, const TrainConfig& cfg,
                        const std::vector<LabeledDataset>& tests) {
  if (t.layout().blocks() != spec.blocks()) {
    throw InvalidInput("transition blocks do not match the multi-classifier spec");
  }
  const std::size_t n = spec.blocks().size();
  if (!tests.empty() && tests.size() != n) throw InvalidInput("need one test set per block");
  std::vector<const LabeledDataset*> test_ptrs(n, nullptr);
  for (std::size_t b = 0; b < tests.size(); ++b) test_ptrs[b] = &tests[b];
  TrainResult out;
  Trainer(weak, t.layout(), {&t}, false, cfg, std::vector<const LabeledDataset*>(n, nullptr),
          test_ptrs)
      .run(out, nullptr);
  return out;
}

UnknownTrainResult train_unknown(std::span<const WeakSample> weak, const TransitionSpace& g,
                                 const TrainConfig& cfg, const LabeledDataset* test) {
  if (!g.layout().single_block()) throw InvalidInput("train_unknown needs single-block candidates");
  std::vector<const Transition*> candidates;
  for (const auto& t : g.candidates()) candidates.push_back(&t);
  UnknownTrainResult out;
  Trainer(weak, g.layout(), std::move(candidates), true, cfg, {nullptr}, {test})
      .run(out, &out.posterior);
  return out;
}

std::string format_history_csv(const std::vector<HistoryRow>& history) {
  std::ostringstream out;
  const std::size_t blocks = history.empty() ? 0 : history.front().block_acc.size();
  const bool posterior = !history.empty() && history.front().posterior_entropy.has_value();
  out << "epoch,topk_risk,partial01_risk,test_acc";
  if (blocks > 1) {
    for (std::size_t b = 0; b < blocks; ++b) out << ",test_acc_" << b + 1;
  }
  if (posterior) out << ",posterior_entropy,posterior_argmax";
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const auto& row : history) {
    out << row.epoch;
    put(row.topk_risk);
    put(row.partial01_risk);
    put(row.test_acc);
    if (blocks > 1) {
      for (double a : row.block_acc) put(a);
    }
    if (posterior) {
      put(row.posterior_entropy.value_or(0.0));
      out << ',' << row.posterior_argmax.value_or(0);
    }
    out << '\n';
  }
  return out.str();
}

void write_history_csv(const std::vector<HistoryRow>& history, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << format_history_csv(history);
}

}  // namespace mipll
