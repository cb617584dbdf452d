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

#ifndef MIPLL_UNAMBIGUITY_HPP_
#define MIPLL_UNAMBIGUITY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mipll/labels.hpp"
#include "mipll/transition.hpp"

namespace mipll {

/// Counterexample to a learnability condition.
///
/// For vector conditions, `vectors` holds (y, y') with sigma(y) == sigma(y'),
/// where y is the first vector in scan order whose image repeats and y' is
/// the earliest vector it collides with. For the transition-space condition,
/// `candidate` and `labels` = (l, l') are set instead.
struct Witness {
  std::vector<LabelVector> vectors;
  std::optional<std::size_t> candidate;
  std::optional<std::pair<int, int>> labels;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckReport {
  bool verdict = true;
  std::optional<Witness> witness;
  /// 0-based position (1-/I-unambiguity). On success it is the first
  /// qualifying index; on failure the index the witness refers to.
  std::optional<int> witness_index;
};

/// Block structure of a multi-classifier problem.
class MultiProblemSpec {
 public:
  explicit MultiProblemSpec(std::vector<Block> blocks);
  static MultiProblemSpec from_layout(const InputLayout& layout) {
    return MultiProblemSpec(layout.blocks());
  }

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  int n() const noexcept { return static_cast<int>(blocks_.size()); }
  int count(int i) const { return blocks_.at(i).count; }
  int labels(int i) const { return blocks_.at(i).space.size(); }
  int total_arity() const noexcept;  // M
  int max_arity() const noexcept;    // M*
  int min_arity() const noexcept;    // M_*
  int max_labels() const noexcept;   // c_0

 private:
  std::vector<Block> blocks_;
};

/// Upper bound on elementary comparisons a checker may perform.
inline constexpr std::uint64_t kCheckWorkCap = 4'000'000'000ULL;

CheckReport check_M_unambiguous(const Transition& t);

/// Searches i = 0..M-1; on failure the witness is for the position with the
/// fewest colliding flips (ties to the smallest index).
CheckReport check_1_unambiguous(const Transition& t);

/// `index_set` holds 0-based positions.
CheckReport check_I_unambiguous(const Transition& t, std::span<const int> index_set);

CheckReport check_multi_unambiguous(const Transition& t, const MultiProblemSpec& spec);

/// Definition of an unambiguous transition space with the true transition
/// fixed. Candidates other than `true_index` are scanned first (in order),
/// then the true one; within a candidate, l and then l' ascend.
CheckReport check_space_unambiguous(const TransitionSpace& g, std::size_t true_index);

/// Conjunction of check_space_unambiguous over every true index.
CheckReport check_space_unambiguous_all(const TransitionSpace& g);

/// 0 if sigma is injective on diagonal vectors, else 1.
int ambiguity_degree_deterministic(const Transition& t);

/// Direct table look-ups used to re-check a reported witness.
bool is_diagonal_collision(const Transition& t, std::span<const int> y,
                           std::span<const int> y2);
bool is_flip_collision(const Transition& t, std::span<const int> index_set,
                       std::span<const int> y, std::span<const int> y2);
bool is_space_collision(const TransitionSpace& g, std::size_t true_index,
                        std::size_t candidate, int l, int l2);

/// One-line rendering of a witness using display values.
std::string format_witness(const CheckReport& report, const InputLayout& layout);

}  // namespace mipll

#endif  // MIPLL_UNAMBIGUITY_HPP_
