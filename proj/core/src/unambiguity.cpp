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

#include "mipll/unambiguity.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mipll/error.hpp"

namespace mipll {

namespace {

void require_single_block(const Transition& t, const char* what) {
  if (!t.layout().single_block()) {
    throw InvalidInput(std::string(what) + " needs a single-block transition");
  }
}

void charge(std::uint64_t work) {
  if (work > kCheckWorkCap) throw CapExceeded("unambiguity check exceeds the work cap");
}

struct FlipScan {
  std::uint64_t collisions = 0;
  std::optional<Witness> first;
};

// Visits every y that is constant on `index_set` in rank order and compares
// it with each flip of that shared label to a smaller one. Stops at the
// first collision unless `count_all`.
FlipScan scan_flips(const Transition& t, std::span<const int> index_set, bool count_all) {
  const InputLayout& layout = t.layout();
  const int m = layout.arity();
  const int c = layout.space(index_set.front()).size();
  std::uint64_t joint_stride = 0;
  for (int p : index_set) joint_stride += layout.stride(p);
  charge(t.row_count() * static_cast<std::uint64_t>(c));

  FlipScan out;
  std::vector<int> y(m, 0);
  for (std::uint64_t r = 0; r < t.row_count(); ++r) {
    if (r) {
      for (int i = m - 1; i >= 0; --i) {
        if (++y[i] < layout.space(i).size()) break;
        y[i] = 0;
      }
    }
    const int l = y[index_set.front()];
    bool constant = true;
    for (int p : index_set) constant = constant && y[p] == l;
    if (!constant || l == 0) continue;

    const auto s = t.output_index_of_rank(r);
    for (int l2 = 0; l2 < l; ++l2) {
      const std::uint64_t r2 = r - static_cast<std::uint64_t>(l - l2) * joint_stride;
      if (t.output_index_of_rank(r2) != s) continue;
      ++out.collisions;
      if (!out.first) out.first = Witness{{y, layout.unrank(r2)}, std::nullopt, std::nullopt};
      if (!count_all) return out;
    }
  }
  return out;
}

void validate_index_set(const Transition& t, std::span<const int> index_set) {
  if (index_set.empty()) throw InvalidInput("index set must be nonempty");
  std::vector<int> sorted(index_set.begin(), index_set.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("index set has repeated positions");
  }
  for (int p : sorted) {
    if (p < 0 || p >= t.arity()) {
      throw InvalidInput("position " + std::to_string(p + 1) + " is outside 1.." +
                         std::to_string(t.arity()));
    }
    if (!(t.layout().space(p) == t.layout().space(sorted.front()))) {
      throw InvalidInput("index set spans different label spaces");
    }
  }
}

}  // namespace

MultiProblemSpec::MultiProblemSpec(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidInput("multi-classifier spec needs n >= 1");
  for (const auto& b : blocks_) {
    if (b.count < 1) throw InvalidInput("block counts must be positive");
  }
}

int MultiProblemSpec::total_arity() const noexcept {
  int m = 0;
  for (const auto& b : blocks_) m += b.count;
  return m;
}

int MultiProblemSpec::max_arity() const noexcept {
  int m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.count);
  return m;
}

int MultiProblemSpec::min_arity() const noexcept {
  int m = std::numeric_limits<int>::max();
  for (const auto& b : blocks_) m = std::min(m, b.count);
  return m;
}

int MultiProblemSpec::max_labels() const noexcept {
  int c = 0;
  for (const auto& b : blocks_) c = std::max(c, b.space.size());
  return c;
}

CheckReport check_M_unambiguous(const Transition& t) {
  require_single_block(t, "M-unambiguity");
  const InputLayout& layout = t.layout();
  const int c = layout.space(0).size();
  std::uint64_t diag_stride = 0;
  for (int p = 0; p < t.arity(); ++p) diag_stride += layout.stride(p);

  // first[s] = smallest diagonal label mapped to output s.
  std::vector<int> first(t.output_count(), -1);
  for (int l = 0; l < c; ++l) {
    const auto s = t.output_index_of_rank(static_cast<std::uint64_t>(l) * diag_stride);
    if (first[s] >= 0) {
      CheckReport report;
      report.verdict = false;
      report.witness = Witness{{LabelVector(t.arity(), l), LabelVector(t.arity(), first[s])},
                               std::nullopt, std::nullopt};
      return report;
    }
    first[s] = l;
  }
  return {};
}

CheckReport check_I_unambiguous(const Transition& t, std::span<const int> index_set) {
  validate_index_set(t, index_set);
  FlipScan scan = scan_flips(t, index_set, false);
  CheckReport report;
  if (scan.first) {
    report.verdict = false;
    report.witness = std::move(scan.first);
  }
  report.witness_index = *std::min_element(index_set.begin(), index_set.end());
  return report;
}

CheckReport check_1_unambiguous(const Transition& t) {
  require_single_block(t, "1-unambiguity");
  charge(t.row_count() * static_cast<std::uint64_t>(t.arity()) *
         static_cast<std::uint64_t>(t.layout().space(0).size()));
  CheckReport best;
  best.verdict = false;
  std::uint64_t best_count = std::numeric_limits<std::uint64_t>::max();
  for (int i = 0; i < t.arity(); ++i) {
    const int position[] = {i};
    FlipScan scan = scan_flips(t, position, true);
    if (!scan.first) {
      CheckReport ok;
      ok.witness_index = i;
      return ok;
    }
    if (scan.collisions < best_count) {
      best_count = scan.collisions;
      best.witness = std::move(scan.first);
      best.witness_index = i;
    }
  }
  return best;
}

CheckReport check_multi_unambiguous(const Transition& t, const MultiProblemSpec& spec) {
  const InputLayout& layout = t.layout();
  if (layout.blocks() != spec.blocks()) {
    throw InvalidInput("transition blocks do not match the multi-classifier spec");
  }
  const int n = spec.n();
  std::vector<std::uint64_t> block_stride(n, 0);
  std::uint64_t tuples = 1;
  for (int b = 0; b < n; ++b) {
    for (int p = 0; p < spec.count(b); ++p) block_stride[b] += layout.stride(layout.block_begin(b) + p);
    tuples *= static_cast<std::uint64_t>(spec.labels(b));
    charge(tuples);
  }
  charge(tuples * static_cast<std::uint64_t>(spec.max_labels()) * static_cast<std::uint64_t>(n));

  std::vector<int> l(n, 0);
  for (std::uint64_t k = 0; k < tuples; ++k) {
    if (k) {
      for (int b = n - 1; b >= 0; --b) {
        if (++l[b] < spec.labels(b)) break;
        l[b] = 0;
      }
    }
    std::uint64_t r = 0;
    for (int b = 0; b < n; ++b) r += static_cast<std::uint64_t>(l[b]) * block_stride[b];
    const auto s = t.output_index_of_rank(r);

    // Earliest (smallest-rank) block-diagonal flip with the same image.
    std::optional<std::uint64_t> hit;
    for (int b = 0; b < n; ++b) {
      for (int l2 = 0; l2 < l[b]; ++l2) {
        const std::uint64_t r2 = r - static_cast<std::uint64_t>(l[b] - l2) * block_stride[b];
        if (t.output_index_of_rank(r2) == s && (!hit || r2 < *hit)) hit = r2;
      }
    }
    if (hit) {
      CheckReport report;
      report.verdict = false;
      report.witness = Witness{{layout.unrank(r), layout.unrank(*hit)}, std::nullopt, std::nullopt};
      return report;
    }
  }
  return {};
}

namespace {

// True if every y' in {l, l2}^M has sigma'(y') == target.
bool mimics(const Transition& candidate, PartialLabel target, int l, int l2) {
  const InputLayout& layout = candidate.layout();
  const int m = layout.arity();
  std::uint64_t base = 0;
  for (int p = 0; p < m; ++p) base += static_cast<std::uint64_t>(l) * layout.stride(p);
  const std::uint64_t masks = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    std::uint64_t r = base;
    for (int p = 0; p < m; ++p) {
      if (mask >> p & 1) r = r + static_cast<std::uint64_t>(l2) * layout.stride(p) -
                             static_cast<std::uint64_t>(l) * layout.stride(p);
    }
    if (candidate.apply_rank(r) != target) return false;
  }
  return true;
}

}  // namespace

CheckReport check_space_unambiguous(const TransitionSpace& g, std::size_t true_index) {
  if (true_index >= g.size()) throw InvalidInput("true transition index out of range");
  const Transition& truth = g[true_index];
  require_single_block(truth, "transition-space unambiguity");
  const InputLayout& layout = truth.layout();
  const int m = layout.arity();
  const int c = layout.space(0).size();
  if (m >= 40) throw CapExceeded("transition-space check needs arity below 40");
  charge(static_cast<std::uint64_t>(g.size()) * c * c * (std::uint64_t{1} << m));

  std::uint64_t diag_stride = 0;
  for (int p = 0; p < m; ++p) diag_stride += layout.stride(p);

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j != true_index) order.push_back(j);
  }
  order.push_back(true_index);

  for (std::size_t j : order) {
    for (int l = 0; l < c; ++l) {
      const PartialLabel target = truth.apply_rank(static_cast<std::uint64_t>(l) * diag_stride);
      for (int l2 = 0; l2 < c; ++l2) {
        if (l2 == l || !mimics(g[j], target, l, l2)) continue;
        CheckReport report;
        report.verdict = false;
        report.witness = Witness{{}, j, std::make_pair(l, l2)};
        return report;
      }
    }
  }
  return {};
}

CheckReport check_space_unambiguous_all(const TransitionSpace& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    CheckReport report = check_space_unambiguous(g, i);
    if (!report.verdict) {
      report.witness_index = static_cast<int>(i);
      return report;
    }
  }
  return {};
}

int ambiguity_degree_deterministic(const Transition& t) {
  return check_M_unambiguous(t).verdict ? 0 : 1;
}

bool is_diagonal_collision(const Transition& t, std::span<const int> y,
                           std::span<const int> y2) {
  return is_diagonal(y) && is_diagonal(y2) &&
         !std::equal(y.begin(), y.end(), y2.begin(), y2.end()) && t.apply(y) == t.apply(y2);
}

bool is_flip_collision(const Transition& t, std::span<const int> index_set,
                       std::span<const int> y, std::span<const int> y2) {
  if (index_set.empty() || y.size() != y2.size()) return false;
  const int l = y[index_set.front()];
  const int l2 = y2[index_set.front()];
  if (l == l2) return false;
  for (int p = 0; p < static_cast<int>(y.size()); ++p) {
    const bool in_set = std::find(index_set.begin(), index_set.end(), p) != index_set.end();
    if (in_set ? (y[p] != l || y2[p] != l2) : y[p] != y2[p]) return false;
  }
  return t.apply(y) == t.apply(y2);
}

bool is_space_collision(const TransitionSpace& g, std::size_t true_index,
                        std::size_t candidate, int l, int l2) {
  const Transition& truth = g[true_index];
  const int m = truth.arity();
  if (l == l2) return false;
  const PartialLabel target = truth.apply(LabelVector(m, l));
  LabelVector y(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (int p = 0; p < m; ++p) y[p] = (mask >> p & 1) ? l2 : l;
    if (g[candidate].apply(y) != target) return false;
  }
  return true;
}

std::string format_witness(const CheckReport& report, const InputLayout& layout) {
  if (!report.witness) return "none";
  const Witness& w = *report.witness;
  if (w.candidate) {
    std::string out = "candidate=" + std::to_string(*w.candidate);
    if (w.labels) {
      out += ",l=" + std::to_string(layout.space(0).to_display(w.labels->first)) +
             ",l'=" + std::to_string(layout.space(0).to_display(w.labels->second));
    }
    if (report.witness_index) out += ",true=" + std::to_string(*report.witness_index);
    return out;
  }
  std::string out;
  for (std::size_t i = 0; i < w.vectors.size(); ++i) {
    if (i) out += "->";
    out += format_vector(w.vectors[i], layout);
  }
  if (report.witness_index) out += ",i=" + std::to_string(*report.witness_index + 1);
  return out;
}

}  // namespace mipll
