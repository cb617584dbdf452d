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

#ifndef MIPLL_LABELS_HPP_
#define MIPLL_LABELS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mipll {

/// A vector of canonical (0-based) labels, one per input position.
using LabelVector = std::vector<int>;

/// Value of a partial label s. Transitions map label vectors to these.
using PartialLabel = std::int64_t;

/// Finite label space {0, ..., size-1}, shown to users as
/// {offset, ..., offset+size-1}.
class LabelSpace {
 public:
  LabelSpace(int size, int offset = 0);

  int size() const noexcept { return size_; }
  int offset() const noexcept { return offset_; }

  bool contains(int label) const noexcept { return label >= 0 && label < size_; }
  int to_display(int label) const noexcept { return label + offset_; }
  int from_display(int value) const noexcept { return value - offset_; }

  friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

 private:
  int size_;
  int offset_;
};

/// `count` consecutive positions that share one label space. A transition
/// over n classifiers has n blocks; single-classifier transitions have one.
struct Block {
  int count;
  LabelSpace space;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Per-position view of a block structure with mixed-radix ranking of label
/// vectors. Position 0 is the most significant digit, so ranks enumerate
/// vectors in lexicographic order.
class InputLayout {
 public:
  explicit InputLayout(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  int arity() const noexcept { return static_cast<int>(spaces_.size()); }
  const LabelSpace& space(int position) const { return spaces_.at(position); }
  int block_of(int position) const { return block_of_.at(position); }
  int block_begin(int block) const { return block_begin_.at(block); }

  /// Number of label vectors, or 0 if it would not fit in 64 bits.
  std::uint64_t cardinality() const noexcept { return cardinality_; }

  std::uint64_t rank(std::span<const int> y) const;
  /// Rank increment for a +1 change at `position`.
  std::uint64_t stride(int position) const { return stride_.at(position); }
  LabelVector unrank(std::uint64_t rank) const;
  void unrank_into(std::uint64_t rank, std::span<int> out) const;

  /// Throws InvalidInput unless y has the right arity and in-range entries.
  void validate(std::span<const int> y) const;

  bool single_block() const noexcept { return blocks_.size() == 1; }

  friend bool operator==(const InputLayout& a, const InputLayout& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<Block> blocks_;
  std::vector<LabelSpace> spaces_;
  std::vector<int> block_of_;
  std::vector<int> block_begin_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t cardinality_ = 0;
};

/// True if every entry of y equals the first.
bool is_diagonal(std::span<const int> y) noexcept;

/// "(a,b,c)" using the display values of each position.
std::string format_vector(std::span<const int> y, const InputLayout& layout);

/// "(a,b,c)" of the raw integers.
std::string format_vector(std::span<const int> y);

}  // namespace mipll

#endif  // MIPLL_LABELS_HPP_
