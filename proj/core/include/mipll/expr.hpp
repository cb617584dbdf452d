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

#ifndef MIPLL_EXPR_HPP_
#define MIPLL_EXPR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mipll {

/// Integer expression over variables y1..yM.
///
/// Grammar, lowest precedence first:
///
///   compare := sum (("==" | "!=") sum)*
///   sum     := product (("+" | "-") product)*
///   product := unary ("*" unary)*
///   unary   := "-" unary | primary
///   primary := INTEGER | "y" INDEX | "(" compare ")"
///
/// Comparisons evaluate to 0 or 1. Nodes live in a flat arena; the root is
/// the last node.
class TransitionExpr {
 public:
  enum class Op : std::uint8_t { kConst, kVar, kNeg, kAdd, kSub, kMul, kEq, kNe };

  struct Node {
    Op op;
    std::int64_t value;  // literal for kConst, 0-based index for kVar
    int lhs;
    int rhs;

    friend bool operator==(const Node&, const Node&) = default;
  };

  /// Evaluates on variable values (display values of the labels).
  std::int64_t evaluate(std::span<const std::int64_t> vars) const;

  /// Same as evaluate(), reusing `scratch` for intermediate values.
  std::int64_t evaluate(std::span<const std::int64_t> vars,
                        std::vector<std::int64_t>& scratch) const;

  /// Fully parenthesised rendering that parses back to the same tree.
  std::string to_string() const;

  /// Largest 1-based variable index used, 0 if none.
  int max_variable() const noexcept;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  friend bool operator==(const TransitionExpr&, const TransitionExpr&) = default;

 private:
  friend class ExprParser;
  std::vector<Node> nodes_;
};

/// Parses `text` for a transition of arity `arity`. Throws ParseError with the
/// byte offset on syntax errors, unknown identifiers and variable indices
/// outside 1..arity.
TransitionExpr parse_transition_expr(std::string_view text, int arity);

/// "y1 + y2 + ... + yM".
std::string sum_expr_text(int arity);

/// "y1 * y2 * ... * yM".
std::string product_expr_text(int arity);

}  // namespace mipll

#endif  // MIPLL_EXPR_HPP_
