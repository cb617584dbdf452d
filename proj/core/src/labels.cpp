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

#include "mipll/labels.hpp"

#include <limits>
#include <sstream>
#include <utility>

#include "mipll/error.hpp"

namespace mipll {

LabelSpace::LabelSpace(int size, int offset) : size_(size), offset_(offset) {
  if (size < 2) {
    throw InvalidInput("label space needs at least 2 labels, got " +
                       std::to_string(size));
  }
}

InputLayout::InputLayout(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidInput("transition needs at least one block");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].count < 1) {
      throw InvalidInput("block " + std::to_string(b + 1) +
                         " must have a positive position count");
    }
    block_begin_.push_back(static_cast<int>(spaces_.size()));
    for (int i = 0; i < blocks_[b].count; ++i) {
      spaces_.push_back(blocks_[b].space);
      block_of_.push_back(static_cast<int>(b));
    }
  }

  // Strides from the least significant (last) position backwards.
  stride_.assign(spaces_.size(), 1);
  std::uint64_t total = 1;
  bool overflow = false;
  for (int i = arity() - 1; i >= 0; --i) {
    stride_[i] = total;
    const auto c = static_cast<std::uint64_t>(spaces_[i].size());
    if (total > std::numeric_limits<std::uint64_t>::max() / c) {
      overflow = true;
      total = 1;  // strides beyond this point are meaningless
    } else {
      total *= c;
    }
  }
  cardinality_ = overflow ? 0 : total;
}

std::uint64_t InputLayout::rank(std::span<const int> y) const {
  std::uint64_t r = 0;
  for (int i = 0; i < arity(); ++i) r += stride_[i] * static_cast<std::uint64_t>(y[i]);
  return r;
}

LabelVector InputLayout::unrank(std::uint64_t rank) const {
  LabelVector y(spaces_.size());
  unrank_into(rank, y);
  return y;
}

void InputLayout::unrank_into(std::uint64_t rank, std::span<int> out) const {
  for (int i = 0; i < arity(); ++i) {
    out[i] = static_cast<int>(rank / stride_[i]);
    rank %= stride_[i];
  }
}

void InputLayout::validate(std::span<const int> y) const {
  if (static_cast<int>(y.size()) != arity()) {
    throw InvalidInput("label vector has " + std::to_string(y.size()) +
                       " entries, expected " + std::to_string(arity()));
  }
  for (int i = 0; i < arity(); ++i) {
    if (!spaces_[i].contains(y[i])) {
      throw InvalidInput("label " + std::to_string(y[i]) + " at position " +
                         std::to_string(i + 1) + " is out of range");
    }
  }
}

bool is_diagonal(std::span<const int> y) noexcept {
  for (int v : y) {
    if (v != y.front()) return false;
  }
  return true;
}

std::string format_vector(std::span<const int> y, const InputLayout& layout) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) out << ',';
    out << layout.space(static_cast<int>(i)).to_display(y[i]);
  }
  out << ')';
  return out.str();
}

std::string format_vector(std::span<const int> y) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) out << ',';
    out << y[i];
  }
  out << ')';
  return out.str();
}

}  // namespace mipll
