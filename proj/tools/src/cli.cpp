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

#include "mipll_tools/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "mipll/bounds.hpp"
#include "mipll/error.hpp"
#include "mipll/expr.hpp"
#include "mipll/topk_loss.hpp"
#include "mipll/transition_matrix.hpp"
#include "mipll/unambiguity.hpp"
#include "mipll/wmc.hpp"
#include "mipll_tools/experiment.hpp"

#ifndef MIPLL_PRESET_DIR
#define MIPLL_PRESET_DIR "presets"
#endif

namespace mipll::tools {

namespace {

// Raised for a requested condition that does not hold; maps to exit 1.
struct ConditionFailed {};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }
std::string g17(double v) { return fmt("%.17g", v); }

const char* yes_no(bool b) { return b ? "true" : "false"; }

// Where a transition comes from: a spec file or an inline expression.
struct TransitionSource {
  std::string spec_path;
  std::string expr;
  int arity = 0;
  int labels = 0;
  int offset = 0;
  std::string blocks;

  void add_options(CLI::App* app) {
    app->add_option("--spec", spec_path, "Transition spec file");
    app->add_option("--expr", expr, "Transition expression over y1..yM");
    app->add_option("--arity", arity, "Number of inputs M");
    app->add_option("--labels", labels, "Labels per input c");
    app->add_option("--offset", offset, "Display value of the first label");
    app->add_option("--blocks", blocks, "Multi-classifier blocks count:labels[:offset],...");
  }

  bool given() const { return !spec_path.empty() || !expr.empty(); }

  InputLayout layout() const {
    if (!blocks.empty()) return InputLayout(parse_blocks(blocks));
    if (arity < 1 || labels < 1) throw InvalidInput("--expr needs --arity and --labels");
    return uniform_layout(arity, LabelSpace(labels, offset));
  }

  Transition build() const {
    if (!spec_path.empty()) {
      if (!expr.empty()) throw InvalidInput("give either --spec or --expr, not both");
      return build_transition(load_transition_spec(spec_path));
    }
    if (expr.empty()) throw InvalidInput("a transition needs --spec or --expr");
    const InputLayout l = layout();
    return materialize(parse_transition_expr(expr, l.arity()), l);
  }
};

std::string format_report(const std::string& name, const CheckReport& report,
                          const InputLayout& layout) {
  std::string line = "condition=" + name + " verdict=" + yes_no(report.verdict) +
                     " witness=" + format_witness(report, layout);
  // Successful 1-checks name the qualifying position (1-based).
  if (report.verdict && report.witness_index) {
    line += " index=" + std::to_string(*report.witness_index + 1);
  }
  return line;
}

// ---- check ----------------------------------------------------------------

struct CheckOptions {
  TransitionSource source;
  std::string space_path;
  std::vector<int> weight_values;
  std::string conditions = "M";
  std::vector<int> index_set;
  int true_index = 0;  // 1-based; 0 = every candidate
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  const auto names = split(o.conditions, ',');
  if (names.empty()) throw InvalidInput("--conditions is empty");
  std::optional<Transition> t;
  std::optional<TransitionSpace> g;
  auto transition = [&]() -> const Transition& {
    if (!t) t = o.source.build();
    return *t;
  };
  auto space = [&]() -> const TransitionSpace& {
    if (!g) {
      if (!o.space_path.empty()) {
        g = build_transition_space(load_transition_spec(o.space_path));
      } else if (!o.weight_values.empty()) {
        const InputLayout l = o.source.layout();
        g = weighted_sum_space(weight_grid(o.weight_values, l.arity()), l.arity(), l.space(0));
      } else {
        throw InvalidInput("condition 'space' needs --space or --weight-values");
      }
    }
    return *g;
  };

  bool all = true;
  for (const auto& name : names) {
    CheckReport report;
    const InputLayout* layout = nullptr;
    if (name == "M") {
      report = check_M_unambiguous(transition());
    } else if (name == "1") {
      report = check_1_unambiguous(transition());
    } else if (name == "I") {
      if (o.index_set.empty()) throw InvalidInput("condition 'I' needs --index-set");
      std::vector<int> zero_based;
      for (int i : o.index_set) zero_based.push_back(i - 1);
      report = check_I_unambiguous(transition(), zero_based);
    } else if (name == "multi") {
      report = check_multi_unambiguous(transition(),
                                       MultiProblemSpec::from_layout(transition().layout()));
    } else if (name == "space") {
      const TransitionSpace& sp = space();
      if (o.true_index == 0) {
        report = check_space_unambiguous_all(sp);
      } else {
        if (o.true_index < 0 || static_cast<std::size_t>(o.true_index) > sp.size()) {
          throw InvalidInput("--true-index is out of range");
        }
        report = check_space_unambiguous(sp, static_cast<std::size_t>(o.true_index - 1));
      }
      layout = &sp.layout();
    } else {
      throw InvalidInput("unknown condition '" + name + "' (expected M, 1, I, multi or space)");
    }
    if (!layout) layout = &transition().layout();
    out << format_report(name, report, *layout) << "\n";
    all = all && report.verdict;
  }
  return all ? kExitOk : kExitConditionFailed;
}

// ---- wmc ------------------------------------------------------------------

struct WmcOptions {
  TransitionSource source;
  std::string vectors;
  std::string weights_path;
  bool uniform = false;
  std::optional<long long> s;
  int k = 0;  // 0 = the whole preimage
  bool exclusive = false;
  std::string method = "auto";
};

WeightTable read_weight_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open weight file '" + path + "'");
  WeightTable w;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<double> values;
    std::string cell;
    while (row >> cell) values.push_back(parse_double(cell, "weight"));
    if (!values.empty()) w.push_back(std::move(values));
  }
  if (w.empty()) throw InvalidInput("weight file '" + path + "' is empty");
  return w;
}

std::vector<LabelVector> parse_vectors(const std::string& text) {
  std::vector<LabelVector> out;
  for (const auto& item : split(text, ';')) {
    out.push_back(parse_int_list(item, "--vectors"));
    if (out.back().empty()) throw InvalidInput("--vectors has an empty vector");
  }
  if (out.empty()) throw InvalidInput("--vectors is empty");
  return out;
}

int cmd_wmc(const WmcOptions& o, std::ostream& out) {
  std::vector<LabelVector> vectors;
  std::optional<Transition> t;
  if (!o.vectors.empty()) {
    vectors = parse_vectors(o.vectors);
  } else {
    t = o.source.build();
    if (!o.s) throw InvalidInput("wmc needs --vectors or a transition with --s");
  }
  const int arity = t ? t->arity() : static_cast<int>(vectors.front().size());

  WeightTable w;
  if (!o.weights_path.empty()) {
    w = read_weight_table(o.weights_path);
  } else if (o.uniform) {
    for (int i = 0; i < arity; ++i) {
      const int c = t ? t->layout().space(i).size() : o.source.labels;
      if (c < 1) throw InvalidInput("--uniform needs --labels");
      w.emplace_back(c, 1.0 / c);
    }
  } else {
    throw InvalidInput("wmc needs --weights or --uniform");
  }

  if (t) {
    if (o.k > 0) {
      vectors = topk_select(w, *t, *o.s, o.k);
    } else {
      if (!t->has_output(*o.s)) throw InvalidInput("s is not an output of the transition");
      vectors = t->preimage(*o.s);
    }
  }
  const DnfFormula phi = formula_from_vectors(vectors, o.exclusive);
  double value = 0.0;
  if (o.method == "auto") {
    value = wmc(phi, w);
  } else if (o.method == "ie") {
    value = wmc_inclusion_exclusion(phi, w);
  } else if (o.method == "brute") {
    value = wmc_brute_force(phi, w);
  } else {
    throw InvalidInput("--method must be auto, ie or brute");
  }
  const double clamped = std::clamp(value, kWmcFloor, 1.0);
  out << "wmc=" << g17(value) << " sl=" << g17(-std::log(clamped)) << "\n";
  return kExitOk;
}

// ---- matrix ---------------------------------------------------------------

struct MatrixOptions {
  TransitionSource source;
  std::string marginal = "uniform";
  int k = 1;
  bool test_invertible = false;
  double tol = 1e-9;
};

int cmd_matrix(const MatrixOptions& o, std::ostream& out) {
  const Transition t = o.source.build();
  const int c = t.layout().space(0).size();
  std::vector<double> marginal;
  if (o.marginal == "uniform") {
    marginal.assign(c, 1.0 / c);
  } else {
    marginal = parse_double_list(o.marginal, "--marginal");
  }
  if (o.k < 1 || o.k > t.arity()) throw InvalidInput("--k must lie in 1..M");
  const TransitionMatrix m = build_transition_matrix(t, marginal, o.k - 1);
  out << "T_" << o.k << " rows=" << m.entries.rows() << " cols=" << m.entries.cols() << "\n";
  for (std::size_t r = 0; r < m.entries.rows(); ++r) {
    out << "s=" << m.row_labels[r] << ":";
    for (std::size_t col = 0; col < m.entries.cols(); ++col) out << " " << g12(m.entries(r, col));
    out << "\n";
  }
  if (!o.test_invertible) return kExitOk;
  const RankResult rank = left_invertible(m.entries, o.tol);
  out << "rank=" << rank.rank << " left_invertible=" << yes_no(rank.left_invertible) << "\n";
  return rank.left_invertible ? kExitOk : kExitConditionFailed;
}

// ---- train / sweep ----------------------------------------------------------

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
};

KeyValueConfig load_run_config(const RunOptions& o, const std::optional<std::uint64_t>& seed) {
  if (o.config_path.empty() == o.preset.empty()) {
    throw InvalidInput("give exactly one of --config or --preset");
  }
  KeyValueConfig kv =
      o.config_path.empty() ? load_preset(o.preset) : KeyValueConfig::load(o.config_path);
  for (const auto& a : o.overrides) kv.set_assignment(a);
  if (seed) kv.set("seed", std::to_string(*seed));
  return kv;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path.string() + "'");
  f << text;
}

int cmd_train(const RunOptions& o, const std::optional<std::uint64_t>& seed, std::ostream& out) {
  const ExperimentConfig cfg = experiment_from_config(load_run_config(o, seed));
  const ExperimentResult r = run_experiment(cfg);
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  write_history_csv(r.train.history, (dir / "history.csv").string());
  save_model(r.train.models, (dir / "model.txt").string());
  const std::string summary = r.summary_line();
  write_text(dir / "summary.txt", summary + "\n");
  out << summary << "\n";
  return kExitOk;
}

struct SweepOptions {
  RunOptions run;
  std::string axis;
  std::string values;
  std::string seeds;
};

int cmd_sweep(const SweepOptions& o, const std::optional<std::uint64_t>& seed,
              std::ostream& out) {
  const std::string key = o.axis == "M" ? "arity" : o.axis;
  if (o.axis != "M" && o.axis != "k" && o.axis != "m_P") {
    throw InvalidInput("--axis must be M, k or m_P");
  }
  const auto values = split(o.values, ',');
  if (values.empty()) throw InvalidInput("--values is empty");
  const KeyValueConfig base = load_run_config(o.run, seed);
  std::vector<std::uint64_t> seeds;
  for (const auto& s : split(o.seeds, ',')) seeds.push_back(parse_u64(s, "--seeds"));
  if (seeds.empty()) seeds.push_back(base.get_u64("seed", 0));

  if (o.axis == "M") {
    const std::string family = base.get_string("family", base.has("expr") ? "expr" : "sum");
    if (family == "expr" || base.get_string("mode", "single") != "single") {
      throw InvalidInput("axis M needs a single-block sum or product family");
    }
  }
  // Validate every point before spending time on training.
  std::vector<ExperimentConfig> points;
  for (const auto& v : values) {
    for (std::uint64_t s : seeds) {
      KeyValueConfig kv = base;
      kv.set(key, v);
      kv.set("seed", std::to_string(s));
      points.push_back(experiment_from_config(kv));
    }
  }

  std::string csv = "axis,value,seed,final_acc,partial01,topk_risk,thm2_bound\n";
  std::size_t at = 0;
  for (const auto& v : values) {
    for (std::uint64_t s : seeds) {
      const ExperimentResult r = run_experiment(points[at++]);
      const std::string row = o.axis + "," + v + "," + std::to_string(s) + "," +
                              g17(r.test.accuracy) + "," + g17(r.test.partial01_risk) + "," +
                              g17(r.train.history.back().topk_risk) + "," + g17(r.bound) + "\n";
      csv += row;
      out << row;
    }
  }
  const std::filesystem::path dir(o.run.out_dir);
  std::filesystem::create_directories(dir);
  write_text(dir / "sweep.csv", csv);
  return kExitOk;
}

}  // namespace

// ---- bounds -----------------------------------------------------------------

std::string evaluate_bound(const std::string& name, const KeyValueConfig& a) {
  auto need = [&](const char* key) {
    if (!a.has(key)) throw InvalidInput(name + " needs " + key + "=");
    return a.get_double(key, 0.0);
  };
  auto need_int = [&](const char* key) {
    if (!a.has(key)) throw InvalidInput(name + " needs " + key + "=");
    return a.get_int(key, 0);
  };
  auto form = [&](RiskExponent fallback) {
    const std::string f = a.get_string("form", "");
    if (f.empty()) return fallback;
    if (f == "statement") return RiskExponent::kStatement;
    if (f == "proof") return RiskExponent::kProof;
    throw InvalidInput("form must be statement or proof");
  };
  auto multi_problem = [&]() {
    if (!a.has("blocks")) throw InvalidInput(name + " needs blocks=count:labels,...");
    return MultiProblemSpec(parse_blocks(a.get_string("blocks", "")));
  };
  auto multi_spec = [&]() {
    MultiBoundSpec spec{multi_problem(), {}};
    for (const auto& d : split(a.get_string("dims", ""), ',')) {
      spec.dims.push_back(parse_double(d, "dims"));
    }
    return spec;
  };
  auto complexity = [](const SampleComplexity& sc, bool with_flag) {
    std::string line = g12(sc.required) + " raw=" + g12(sc.value);
    if (with_flag) line += std::string(" valid=") + yes_no(sc.valid);
    return line;
  };
  const double C = a.get_double("C", 1.0);

  std::string line;
  if (name == "risk_transfer_M") {
    line = g12(risk_transfer_M(need("t"), need_int("c"), need_int("M")));
  } else if (name == "phi_I") {
    line = g12(phi_I(need("t"), need_int("I"), need_int("M"), need_int("c")));
  } else if (name == "sample_complexity_thm1") {
    line = complexity(sample_complexity_thm1(need_int("c"), need_int("M"), need("eps"),
                                             need("delta"), need("d_F"), C),
                      false);
  } else if (name == "sample_complexity_prop1") {
    line = complexity(sample_complexity_prop1(need_int("c"), need_int("M"), need("eps"),
                                              need("delta"), need("d_F"), C),
                      true);
  } else if (name == "sample_complexity_thm3") {
    line = complexity(sample_complexity_thm3(multi_spec(), need("eps"), need("delta"), need("R"),
                                             C, form(RiskExponent::kStatement)),
                      false);
  } else if (name == "sample_complexity_thm5") {
    line = complexity(sample_complexity_thm5(need_int("c"), need_int("M"), need("eps"),
                                             need("delta"), need("r"), need("d_F"), need("d_G"),
                                             C),
                      false);
  } else if (name == "vc_bounds") {
    std::optional<MultiBoundSpec> spec;
    if (a.has("blocks")) spec = multi_spec();
    const VcBounds v = vc_bounds(need("d_F"), a.get_double("d_G", 0.0), need_int("M"),
                                 need_int("c"), spec ? &*spec : nullptr);
    line = "unknown=" + g12(v.unknown) + " known=" + g12(v.known);
    if (spec) line += " multi=" + g12(v.multi);
  } else if (name == "error_bound_thm2") {
    line = g12(error_bound_thm2(need("risk"), need("rad"), need("m_P"), need("delta"),
                                need_int("k"), need_int("M"), need_int("c")));
  } else if (name == "error_bound_thm4") {
    std::vector<double> rads;
    for (const auto& r : split(a.get_string("rads", ""), ',')) rads.push_back(parse_double(r, "rads"));
    line = g12(error_bound_thm4(need("risk"), rads, need("m_P"), need("delta"), need_int("k"),
                                multi_problem(), a.get_double("R", 0.0),
                                form(RiskExponent::kStatement)));
  } else if (name == "prop2_bound") {
    line = g12(prop2_bound(need("gamma"), need("t"), need_int("c"), need_int("M")));
  } else if (name == "risk_transfer_multi") {
    line = g12(risk_transfer_multi(need("t"), multi_problem(), a.get_double("R", 0.0),
                                   form(RiskExponent::kProof)));
  } else {
    throw InvalidInput("unknown calculator '" + name + "'");
  }
  if (const auto unread = a.unread_keys(); !unread.empty()) {
    throw InvalidInput(name + " does not take '" + unread.front() + "'");
  }
  return line;
}

std::string preset_directory() {
  if (const char* env = std::getenv("MIPLL_PRESET_DIR"); env && *env) return env;
  return MIPLL_PRESET_DIR;
}

KeyValueConfig load_preset(const std::string& name) {
  const std::filesystem::path path = std::filesystem::path(preset_directory()) / (name + ".cfg");
  if (!std::filesystem::exists(path)) throw InvalidInput("unknown preset '" + name + "'");
  return KeyValueConfig::load(path.string());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-instance partial-label learning toolkit", "mipll"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Seed for every random stream (default 0)");

  CheckOptions check;
  auto* c_check = app.add_subcommand("check", "Test learnability conditions of a transition");
  check.source.add_options(c_check);
  c_check->add_option("--space", check.space_path, "Transition-space spec file");
  c_check->add_option("--weight-values", check.weight_values,
                      "Weighted-sum space over values^M")->delimiter(',');
  c_check->add_option("--conditions", check.conditions, "Comma list of M,1,I,multi,space");
  c_check->add_option("--index-set", check.index_set, "1-based positions for I")->delimiter(',');
  c_check->add_option("--true-index", check.true_index, "1-based true candidate for space");

  WmcOptions wmc_opts;
  std::optional<long long> wmc_s;
  auto* c_wmc = app.add_subcommand("wmc", "Weighted model count and semantic loss");
  wmc_opts.source.add_options(c_wmc);
  c_wmc->add_option("--vectors", wmc_opts.vectors, "Label vectors a,b;c,d (canonical labels)");
  c_wmc->add_option("--weights", wmc_opts.weights_path, "One row of probabilities per position");
  c_wmc->add_flag("--uniform", wmc_opts.uniform, "Uniform weights");
  c_wmc->add_option("--s", wmc_s, "Partial label (display value) whose preimage is counted");
  c_wmc->add_option("--k", wmc_opts.k, "Keep the k most likely preimage vectors");
  c_wmc->add_flag("--exclusive", wmc_opts.exclusive, "One label per position");
  c_wmc->add_option("--method", wmc_opts.method, "auto, ie or brute");

  std::string bound_name;
  std::vector<std::string> bound_args;
  auto* c_bounds = app.add_subcommand("bounds", "Evaluate a risk or sample-complexity bound");
  c_bounds->add_option("name", bound_name, "Calculator name")->required();
  c_bounds->add_option("args", bound_args, "key=value arguments");

  MatrixOptions matrix;
  auto* c_matrix = app.add_subcommand("matrix", "Per-position transition matrix T_k");
  matrix.source.add_options(c_matrix);
  c_matrix->add_option("--marginal", matrix.marginal, "uniform or a comma list");
  c_matrix->add_option("--k", matrix.k, "1-based position");
  c_matrix->add_flag("--test-invertible", matrix.test_invertible, "Report rank and invertibility");
  c_matrix->add_option("--tol", matrix.tol, "Relative singular-value threshold");

  auto add_run = [](CLI::App* sub, RunOptions& run) {
    sub->add_option("--config", run.config_path, "key = value config file");
    sub->add_option("--preset", run.preset, "Shipped preset name");
    sub->add_option("--set", run.overrides, "Override key=value (repeatable)");
    sub->add_option("--out", run.out_dir, "Output directory");
  };
  RunOptions train;
  auto* c_train = app.add_subcommand("train", "Train on synthetic weak data");
  add_run(c_train, train);

  SweepOptions sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Train over a list of M, k or m_P values");
  add_run(c_sweep, sweep.run);
  c_sweep->add_option("--axis", sweep.axis, "M, k or m_P")->required();
  c_sweep->add_option("--values", sweep.values, "Comma list of axis values")->required();
  c_sweep->add_option("--seeds", sweep.seeds, "Comma list of seeds");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*c_check) return cmd_check(check, out);
    if (*c_wmc) {
      wmc_opts.s = wmc_s;
      return cmd_wmc(wmc_opts, out);
    }
    if (*c_bounds) {
      KeyValueConfig kv;
      for (const auto& a : bound_args) kv.set_assignment(a);
      out << evaluate_bound(bound_name, kv) << "\n";
      return kExitOk;
    }
    if (*c_matrix) return cmd_matrix(matrix, out);
    if (*c_train) return cmd_train(train, seed, out);
    if (*c_sweep) return cmd_sweep(sweep, seed, out);
  } catch (const TrainingDiverged& e) {
    err << "error: " << e.what() << "\n";
    return kExitTrainingFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace mipll::tools
