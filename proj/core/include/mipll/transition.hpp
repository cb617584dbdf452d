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

#ifndef MIPLL_TRANSITION_HPP_
#define MIPLL_TRANSITION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mipll/expr.hpp"
#include "mipll/labels.hpp"

namespace mipll {

/// Default cap on the number of tabulated label vectors.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// A fully tabulated transition sigma: Y^M -> S.
///
/// Rows are label vectors in lexicographic order (see InputLayout::rank).
/// Outputs are the distinct realised partial labels, sorted ascending; each
/// row stores the index of its output. Preimage lists hold row ranks in
/// ascending (hence lexicographic) order.
class Transition {
 public:
  /// Signature used by from_function: receives display values.
  using Function = std::function<PartialLabel(std::span<const std::int64_t>)>;

  const InputLayout& layout() const noexcept { return layout_; }
  int arity() const noexcept { return layout_.arity(); }
  std::uint64_t row_count() const noexcept { return row_output_.size(); }

  /// Distinct partial labels, ascending.
  const std::vector<PartialLabel>& outputs() const noexcept { return outputs_; }
  std::size_t output_count() const noexcept { return outputs_.size(); }

  /// Index of `s` in outputs(), if realised.
  std::optional<std::size_t> output_index(PartialLabel s) const;
  bool has_output(PartialLabel s) const { return output_index(s).has_value(); }

  /// sigma(y). Throws InvalidInput on a dimension or range error.
  PartialLabel apply(std::span<const int> y) const;

  /// sigma of the row with the given rank; no validation.
  PartialLabel apply_rank(std::uint64_t rank) const noexcept {
    return outputs_[row_output_[rank]];
  }
  std::uint32_t output_index_of_rank(std::uint64_t rank) const noexcept {
    return row_output_[rank];
  }

  /// Ranks of the vectors mapped to outputs()[index].
  const std::vector<std::uint64_t>& preimage_ranks(std::size_t index) const {
    return preimages_.at(index);
  }

  /// Label vectors mapped to s, lexicographic. Throws if s is not realised.
  std::vector<LabelVector> preimage(PartialLabel s) const;

  /// Optional human-readable description (expression text, "table", ...).
  const std::string& description() const noexcept { return description_; }

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.layout_ == b.layout_ && a.outputs_ == b.outputs_ &&
           a.row_output_ == b.row_output_;
  }

  /// Tabulates `fn` over every label vector.
  static Transition from_function(const InputLayout& layout, const Function& fn,
                                  std::string description = {},
                                  std::uint64_t cap = kDefaultEnumerationCap);

  /// One output per row, rows in lexicographic order.
  static Transition from_table(const InputLayout& layout,
                               std::span<const PartialLabel> row_values,
                               std::string description = "table");

 private:
  Transition(InputLayout layout, std::vector<PartialLabel> row_values,
             std::string description);

  InputLayout layout_;
  std::vector<PartialLabel> outputs_;
  std::vector<std::uint32_t> row_output_;
  std::vector<std::vector<std::uint64_t>> preimages_;
  std::string description_;
};

/// Tabulates an expression by exhaustive enumeration. Variables take the
/// display values of their positions' label spaces. Throws CapExceeded when
/// the number of label vectors exceeds `cap`.
Transition materialize(const TransitionExpr& expr, const InputLayout& layout,
                       std::uint64_t cap = kDefaultEnumerationCap);

/// Single-block layout: `arity` positions over `space`.
InputLayout uniform_layout(int arity, const LabelSpace& space);

/// Finite family of candidate transitions sharing one input layout.
class TransitionSpace {
 public:
  TransitionSpace(std::vector<Transition> candidates,
                  std::vector<std::vector<int>> tags = {});

  std::size_t size() const noexcept { return candidates_.size(); }
  const Transition& operator[](std::size_t i) const { return candidates_.at(i); }
  const std::vector<Transition>& candidates() const noexcept { return candidates_; }
  const InputLayout& layout() const noexcept { return candidates_.front().layout(); }

  /// Parameter tags such as weight tuples; empty when untagged.
  const std::vector<std::vector<int>>& tags() const noexcept { return tags_; }

  /// Union of the candidates' outputs, ascending.
  const std::vector<PartialLabel>& output_universe() const noexcept { return universe_; }

  /// Index of the candidate whose tag equals `tag`.
  std::optional<std::size_t> find_tag(std::span<const int> tag) const;

 private:
  std::vector<Transition> candidates_;
  std::vector<std::vector<int>> tags_;
  std::vector<PartialLabel> universe_;
};

/// Every tuple in values^arity, lexicographic.
std::vector<std::vector<int>> weight_grid(std::span<const int> values, int arity);

/// One transition y -> sum_i w_i * y_i per weight tuple, tagged with it.
/// Rejects empty grids, tuples of the wrong length and all-zero tuples.
TransitionSpace weighted_sum_space(const std::vector<std::vector<int>>& grid, int arity,
                                   const LabelSpace& space);

/// Parsed transition spec file.
struct TransitionSpec {
  InputLayout layout;
  std::vector<std::string> expressions;       // one per "expr" line
  std::vector<std::vector<int>> weights;      // one per "weights" line
  std::optional<std::vector<PartialLabel>> table;
};

/// Reads the text format
///
///   arity M
///   labels c [offset o]                    (single block), or
///   block i: count M_i labels c_i [offset o]   (one line per block)
///   expr <expression>                      (may repeat for a space file), or
///   weights w1 ... wM                      (may repeat; weighted-sum candidate), or
///   table
///   y1 ... yM -> s                         (display values, every vector once)
///
/// Blank lines and text after '#' are ignored.
TransitionSpec parse_transition_spec(const std::string& text);
TransitionSpec load_transition_spec(const std::string& path);

/// The single transition described by a spec (first expression or table).
Transition build_transition(const TransitionSpec& spec,
                            std::uint64_t cap = kDefaultEnumerationCap);

/// Every expression, then every weight tuple, as one candidate each. Weight
/// tuples tag their candidates when the spec has no expressions.
TransitionSpace build_transition_space(const TransitionSpec& spec,
                                       std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mipll

#endif  // MIPLL_TRANSITION_HPP_
