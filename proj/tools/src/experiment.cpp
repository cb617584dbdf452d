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

#include "mipll_tools/experiment.hpp"

#include <cstdio>

#include "mipll/bounds.hpp"
#include "mipll/dataset.hpp"
#include "mipll/error.hpp"
#include "mipll/expr.hpp"
#include "mipll/unambiguity.hpp"

namespace mipll::tools {

namespace {

// Offsets keep the data streams independent of the initialisation stream.
constexpr std::uint64_t kTrainDataStream = 0x5851f42d4c957f2dULL;
constexpr std::uint64_t kTestDataStream = 0x14057b7ef767814fULL;
constexpr std::uint64_t kWeakStream = 0x2545f4914f6cdd1dULL;
constexpr std::uint64_t kLabeledStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kRademacherStream = 0xbf58476d1ce4e5b9ULL;

std::uint64_t stream(std::uint64_t seed, std::uint64_t offset, std::uint64_t block = 0) {
  return seed * 0x100000001b3ULL + offset + block * 0x632be59bd9b4e019ULL;
}

ExperimentMode parse_mode(const std::string& text) {
  if (text == "single") return ExperimentMode::kSingle;
  if (text == "multi") return ExperimentMode::kMulti;
  if (text == "unknown") return ExperimentMode::kUnknown;
  throw InvalidInput("mode must be single, multi or unknown, got '" + text + "'");
}

std::string format_tag(const std::vector<int>& tag) {
  std::string out = "(";
  for (std::size_t i = 0; i < tag.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(tag[i]);
  }
  return out + ")";
}

std::vector<double> block_features(const WeakDataset& ds, const InputLayout& layout, int block) {
  std::vector<double> out;
  const int begin = layout.block_begin(block);
  const int count = layout.blocks()[block].count;
  for (const auto& sample : ds.samples) {
    out.insert(out.end(), sample.features.begin() + static_cast<std::ptrdiff_t>(begin) * ds.dim,
               sample.features.begin() + static_cast<std::ptrdiff_t>(begin + count) * ds.dim);
  }
  return out;
}

}  // namespace

std::vector<Block> parse_blocks(const std::string& text) {
  std::vector<Block> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2 && parts.size() != 3) {
      throw InvalidInput("blocks: expected count:labels[:offset], got '" + item + "'");
    }
    const int count = parse_int(parts[0], "blocks");
    const int labels = parse_int(parts[1], "blocks");
    const int offset = parts.size() == 3 ? parse_int(parts[2], "blocks") : 0;
    if (count < 1) throw InvalidInput("blocks: count must be >= 1");
    out.push_back(Block{count, LabelSpace(labels, offset)});
  }
  if (out.empty()) throw InvalidInput("blocks: empty list");
  return out;
}

ExperimentConfig experiment_from_config(const KeyValueConfig& kv) {
  ExperimentConfig cfg;
  cfg.mode = parse_mode(kv.get_string("mode", "single"));
  cfg.family = kv.get_string("family", kv.has("expr") ? "expr" : "sum");
  cfg.expr = kv.get_string("expr", "");
  cfg.arity = kv.get_int("arity", cfg.arity);
  cfg.labels = kv.get_int("labels", cfg.labels);
  cfg.offset = kv.get_int("offset", cfg.offset);
  if (kv.has("blocks")) cfg.blocks = parse_blocks(kv.get_string("blocks", ""));
  cfg.weight_values = kv.get_int_list("weight_values");
  cfg.true_weights = kv.get_int_list("true_weights");

  cfg.per_class = kv.get_int("per_class", cfg.per_class);
  cfg.test_per_class = kv.get_int("test_per_class", cfg.test_per_class);
  cfg.dim = kv.get_int("dim", cfg.dim);
  cfg.separation = kv.get_double("separation", cfg.separation);
  const std::uint64_t m_P = kv.get_u64("m_P", cfg.m_P);
  cfg.labeled_per_class = kv.get_int("labeled_per_class", cfg.labeled_per_class);

  TrainConfig& t = cfg.train;
  t.k = kv.get_int("k", t.k);
  t.learning_rate = kv.get_double("learning_rate", t.learning_rate);
  t.epochs = kv.get_int("epochs", t.epochs);
  t.batch_size = kv.get_int("batch_size", t.batch_size);
  t.lambda = kv.get_double("lambda", t.lambda);
  t.weak_weight = kv.get_double("weak_weight", t.weak_weight);
  t.seed = kv.get_u64("seed", t.seed);
  t.exclusive = kv.get_bool("exclusive", t.exclusive);
  const std::string unknown_mode = kv.get_string("unknown_mode", "mixture");
  if (unknown_mode == "mixture") {
    t.mode = UnknownMode::kMixture;
  } else if (unknown_mode == "hard") {
    t.mode = UnknownMode::kHard;
  } else {
    throw InvalidInput("unknown_mode must be mixture or hard");
  }
  t.posterior_learning_rate = kv.get_double("posterior_learning_rate", t.posterior_learning_rate);
  cfg.delta = kv.get_double("delta", cfg.delta);
  cfg.risk_bound = kv.get_double("R", cfg.risk_bound);
  cfg.rademacher_draws = kv.get_int("rademacher_draws", cfg.rademacher_draws);

  if (const auto unread = kv.unread_keys(); !unread.empty()) {
    throw InvalidInput("unknown config key '" + unread.front() + "'");
  }

  validate(t);
  if (m_P == 0) throw InvalidInput("m_P must be positive");
  cfg.m_P = static_cast<std::size_t>(m_P);
  if (cfg.arity < 1) throw InvalidInput("arity must be >= 1");
  if (cfg.labels < 2) throw InvalidInput("labels must be >= 2");
  if (cfg.per_class < 1 || cfg.test_per_class < 1) {
    throw InvalidInput("per_class and test_per_class must be >= 1");
  }
  if (cfg.labeled_per_class < 0) throw InvalidInput("labeled_per_class must be >= 0");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  if (!(cfg.risk_bound >= 0.0 && cfg.risk_bound < 1.0)) throw InvalidInput("R must lie in [0, 1)");
  if (cfg.rademacher_draws < 1) throw InvalidInput("rademacher_draws must be >= 1");
  if (cfg.family != "sum" && cfg.family != "product" && cfg.family != "expr") {
    throw InvalidInput("family must be sum, product or expr");
  }
  if (cfg.family == "expr" && cfg.expr.empty()) throw InvalidInput("family=expr needs expr");
  switch (cfg.mode) {
    case ExperimentMode::kSingle:
      break;
    case ExperimentMode::kMulti:
      if (cfg.blocks.empty()) throw InvalidInput("mode=multi needs blocks");
      if (cfg.family != "expr") throw InvalidInput("mode=multi needs expr");
      if (cfg.labeled_per_class > 0) throw InvalidInput("labeled_per_class is single-block only");
      break;
    case ExperimentMode::kUnknown:
      if (cfg.weight_values.empty()) throw InvalidInput("mode=unknown needs weight_values");
      if (cfg.true_weights.size() != static_cast<std::size_t>(cfg.arity)) {
        throw InvalidInput("true_weights must have arity entries");
      }
      break;
  }
  return cfg;
}

std::string ExperimentResult::summary_line() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "final_acc=%.12g partial01=%.12g thm2_bound=%.12g", test.accuracy,
                test.partial01_risk, bound);
  std::string out = buf;
  if (posterior) {
    std::snprintf(buf, sizeof buf, " posterior_argmax=%zu posterior_entropy=%.12g",
                  posterior->argmax(), posterior->entropy());
    out += buf;
    if (!posterior_tag.empty()) out += " posterior_weights=" + format_tag(posterior_tag);
    out += std::string(" recovered=") + (recovered ? "true" : "false");
  }
  if (space_unambiguous) {
    out += std::string(" space_unambiguous=") + (*space_unambiguous ? "true" : "false");
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.train.seed;
  const LabelSpace space(cfg.labels, cfg.offset);
  InputLayout layout = cfg.mode == ExperimentMode::kMulti ? InputLayout(cfg.blocks)
                                                          : uniform_layout(cfg.arity, space);
  const int n = static_cast<int>(layout.blocks().size());

  std::vector<LabeledDataset> train_data;
  std::vector<LabeledDataset> test_data;
  for (int b = 0; b < n; ++b) {
    const int c = layout.blocks()[b].space.size();
    train_data.push_back(make_synthetic_dataset(c, cfg.per_class, cfg.dim, cfg.separation,
                                                stream(seed, kTrainDataStream, b)));
    test_data.push_back(make_synthetic_dataset(c, cfg.test_per_class, cfg.dim, cfg.separation,
                                               stream(seed, kTestDataStream, b)));
  }
  std::optional<LabeledDataset> labeled;
  if (cfg.labeled_per_class > 0) {
    labeled = make_synthetic_dataset(cfg.labels, cfg.labeled_per_class, cfg.dim, cfg.separation,
                                     stream(seed, kLabeledStream));
  }

  ExperimentResult result;
  std::optional<Transition> truth;
  std::optional<TransitionSpace> space_g;
  std::size_t true_index = 0;
  if (cfg.mode == ExperimentMode::kUnknown) {
    space_g = weighted_sum_space(weight_grid(cfg.weight_values, cfg.arity), cfg.arity, space);
    const auto found = space_g->find_tag(cfg.true_weights);
    if (!found) throw InvalidInput("true_weights is not in the weight grid");
    true_index = *found;
    truth = (*space_g)[true_index];
  } else {
    std::string text = cfg.expr;
    if (cfg.family == "sum") text = sum_expr_text(cfg.arity);
    if (cfg.family == "product") text = product_expr_text(cfg.arity);
    truth = materialize(parse_transition_expr(text, layout.arity()), layout);
  }

  const WeakDataset weak = weak_labelize(train_data, *truth, cfg.m_P, stream(seed, kWeakStream));

  switch (cfg.mode) {
    case ExperimentMode::kSingle:
      result.train = train_single(weak.samples, *truth, cfg.train, labeled ? &*labeled : nullptr,
                                  &test_data.front());
      break;
    case ExperimentMode::kMulti:
      result.train = train_multi(weak.samples, *truth, MultiProblemSpec::from_layout(layout),
                                 cfg.train, test_data);
      break;
    case ExperimentMode::kUnknown: {
      UnknownTrainResult u = train_unknown(weak.samples, *space_g, cfg.train, &test_data.front());
      result.posterior = u.posterior;
      result.recovered = u.posterior.argmax() == true_index;
      if (!space_g->tags().empty()) result.posterior_tag = space_g->tags()[u.posterior.argmax()];
      result.space_unambiguous = check_space_unambiguous(*space_g, true_index).verdict;
      result.train = std::move(u);
      break;
    }
  }

  result.test = evaluate(result.train.models, test_data, *truth, cfg.train.k, cfg.train.exclusive);

  const double emp_topk = result.train.history.back().topk_risk;
  const double B = weight_norm_bound(result.train.models);
  const double m_P = static_cast<double>(cfg.m_P);
  if (cfg.mode == ExperimentMode::kMulti) {
    std::vector<double> rads;
    for (int b = 0; b < n; ++b) {
      const std::size_t points = cfg.m_P * static_cast<std::size_t>(layout.blocks()[b].count);
      rads.push_back(rademacher_estimate(B, block_features(weak, layout, b), cfg.dim, points,
                                         cfg.rademacher_draws, stream(seed, kRademacherStream, b)));
    }
    result.bound = error_bound_thm4(emp_topk, rads, m_P, cfg.delta, cfg.train.k,
                                    MultiProblemSpec::from_layout(layout), cfg.risk_bound);
  } else {
    const std::size_t points = cfg.m_P * static_cast<std::size_t>(layout.arity());
    const double rad = rademacher_estimate(B, block_features(weak, layout, 0), cfg.dim, points,
                                           cfg.rademacher_draws, stream(seed, kRademacherStream));
    result.bound = error_bound_thm2(emp_topk, rad, m_P, cfg.delta, cfg.train.k, layout.arity(),
                                    cfg.labels);
  }
  return result;
}

}  // namespace mipll::tools
