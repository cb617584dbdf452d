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

#include "mipll/transition.hpp"

#include <algorithm>
#include <utility>

#include "mipll/error.hpp"

namespace mipll {

namespace {

void check_cap(const InputLayout& layout, std::uint64_t cap) {
  if (layout.cardinality() == 0 || layout.cardinality() > cap) {
    throw CapExceeded("transition has more than " + std::to_string(cap) +
                      " label vectors");
  }
}

}  // namespace

Transition::Transition(InputLayout layout, std::vector<PartialLabel> row_values,
                       std::string description)
    : layout_(std::move(layout)), description_(std::move(description)) {
  outputs_ = row_values;
  std::sort(outputs_.begin(), outputs_.end());
  outputs_.erase(std::unique(outputs_.begin(), outputs_.end()), outputs_.end());

  row_output_.resize(row_values.size());
  preimages_.resize(outputs_.size());
  for (std::uint64_t r = 0; r < row_values.size(); ++r) {
    const auto it = std::lower_bound(outputs_.begin(), outputs_.end(), row_values[r]);
    const auto idx = static_cast<std::uint32_t>(it - outputs_.begin());
    row_output_[r] = idx;
    preimages_[idx].push_back(r);
  }
}

Transition Transition::from_function(const InputLayout& layout, const Function& fn,
                                     std::string description, std::uint64_t cap) {
  check_cap(layout, cap);
  const auto rows = layout.cardinality();
  const int m = layout.arity();
  std::vector<PartialLabel> values(rows);
  std::vector<int> y(m, 0);
  std::vector<std::int64_t> shown(m);
  for (int i = 0; i < m; ++i) shown[i] = layout.space(i).to_display(0);
  for (std::uint64_t r = 0; r < rows; ++r) {
    values[r] = fn(shown);
    // Odometer increment, last position fastest.
    for (int i = m - 1; i >= 0; --i) {
      if (++y[i] < layout.space(i).size()) {
        shown[i] = layout.space(i).to_display(y[i]);
        break;
      }
      y[i] = 0;
      shown[i] = layout.space(i).to_display(0);
    }
  }
  return Transition(layout, std::move(values), std::move(description));
}

Transition Transition::from_table(const InputLayout& layout,
                                  std::span<const PartialLabel> row_values,
                                  std::string description) {
  if (layout.cardinality() == 0 || row_values.size() != layout.cardinality()) {
    throw InvalidInput("transition table has " + std::to_string(row_values.size()) +
                       " rows, expected " + std::to_string(layout.cardinality()));
  }
  return Transition(layout, std::vector<PartialLabel>(row_values.begin(), row_values.end()),
                    std::move(description));
}

std::optional<std::size_t> Transition::output_index(PartialLabel s) const {
  const auto it = std::lower_bound(outputs_.begin(), outputs_.end(), s);
  if (it == outputs_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - outputs_.begin());
}

PartialLabel Transition::apply(std::span<const int> y) const {
  layout_.validate(y);
  return apply_rank(layout_.rank(y));
}

std::vector<LabelVector> Transition::preimage(PartialLabel s) const {
  const auto idx = output_index(s);
  if (!idx) throw InvalidInput("partial label " + std::to_string(s) + " is not an output");
  std::vector<LabelVector> out;
  out.reserve(preimages_[*idx].size());
  for (auto r : preimages_[*idx]) out.push_back(layout_.unrank(r));
  return out;
}

Transition materialize(const TransitionExpr& expr, const InputLayout& layout,
                       std::uint64_t cap) {
  if (expr.max_variable() > layout.arity()) {
    throw InvalidInput("expression uses y" + std::to_string(expr.max_variable()) +
                       " but the arity is " + std::to_string(layout.arity()));
  }
  std::vector<std::int64_t> scratch;
  return Transition::from_function(
      layout,
      [&](std::span<const std::int64_t> vars) { return expr.evaluate(vars, scratch); },
      expr.to_string(), cap);
}

InputLayout uniform_layout(int arity, const LabelSpace& space) {
  return InputLayout({Block{arity, space}});
}

TransitionSpace::TransitionSpace(std::vector<Transition> candidates,
                                 std::vector<std::vector<int>> tags)
    : candidates_(std::move(candidates)), tags_(std::move(tags)) {
  if (candidates_.empty()) throw InvalidInput("transition space is empty");
  if (!tags_.empty() && tags_.size() != candidates_.size()) {
    throw InvalidInput("transition space tags do not match candidates");
  }
  for (const auto& t : candidates_) {
    if (!(t.layout() == candidates_.front().layout())) {
      throw InvalidInput("transition space candidates have different input layouts");
    }
    universe_.insert(universe_.end(), t.outputs().begin(), t.outputs().end());
  }
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
}

std::optional<std::size_t> TransitionSpace::find_tag(std::span<const int> tag) const {
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (std::equal(tags_[i].begin(), tags_[i].end(), tag.begin(), tag.end())) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> weight_grid(std::span<const int> values, int arity) {
  if (values.empty() || arity < 1) throw InvalidInput("weight grid needs values and arity");
  std::vector<std::vector<int>> grid;
  std::vector<std::size_t> digit(arity, 0);
  for (;;) {
    std::vector<int> tuple(arity);
    for (int i = 0; i < arity; ++i) tuple[i] = values[digit[i]];
    grid.push_back(std::move(tuple));
    int i = arity - 1;
    while (i >= 0 && ++digit[i] == values.size()) digit[i--] = 0;
    if (i < 0) break;
  }
  return grid;
}

TransitionSpace weighted_sum_space(const std::vector<std::vector<int>>& grid, int arity,
                                   const LabelSpace& space) {
  if (grid.empty()) throw InvalidInput("weight grid is empty");
  const InputLayout layout = uniform_layout(arity, space);
  std::vector<Transition> candidates;
  candidates.reserve(grid.size());
  for (const auto& w : grid) {
    if (static_cast<int>(w.size()) != arity) {
      throw InvalidInput("weight tuple has " + std::to_string(w.size()) +
                         " entries, expected " + std::to_string(arity));
    }
    if (std::all_of(w.begin(), w.end(), [](int v) { return v == 0; })) {
      throw InvalidInput("weight tuple must have at least one non-zero weight");
    }
    std::string desc = "weighted_sum(" + format_vector(w) + ")";
    candidates.push_back(Transition::from_function(
        layout,
        [&w](std::span<const std::int64_t> y) {
          PartialLabel s = 0;
          for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * y[i];
          return s;
        },
        std::move(desc)));
  }
  return TransitionSpace(std::move(candidates), grid);
}

}  // namespace mipll
