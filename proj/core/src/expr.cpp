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

#include "mipll/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "mipll/error.hpp"

namespace mipll {

class ExprParser {
 public:
  ExprParser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  TransitionExpr parse() {
    if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos) {
      throw ParseError("empty expression", 0);
    }
    parse_compare();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return std::move(expr_);
  }

 private:
  using Op = TransitionExpr::Op;

  int emit(Op op, std::int64_t value, int lhs, int rhs) {
    expr_.nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  int parse_compare() {
    int lhs = parse_sum();
    for (;;) {
      if (accept("==")) {
        lhs = emit(Op::kEq, 0, lhs, parse_sum());
      } else if (accept("!=")) {
        lhs = emit(Op::kNe, 0, lhs, parse_sum());
      } else {
        return lhs;
      }
    }
  }

  int parse_sum() {
    int lhs = parse_product();
    for (;;) {
      if (accept("+")) {
        lhs = emit(Op::kAdd, 0, lhs, parse_product());
      } else if (accept("-")) {
        lhs = emit(Op::kSub, 0, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    while (accept("*")) lhs = emit(Op::kMul, 0, lhs, parse_unary());
    return lhs;
  }

  int parse_unary() {
    if (accept("-")) return emit(Op::kNeg, 0, parse_unary(), -1);
    return parse_primary();
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      const int inner = parse_compare();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      return emit(Op::kConst, read_integer(start), -1, -1);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (ident.size() < 2 || ident[0] != 'y' ||
          ident.substr(1).find_first_not_of("0123456789") != std::string_view::npos) {
        throw ParseError("unknown variable '" + std::string(ident) + "'", start);
      }
      std::int64_t index = 0;
      for (char d : ident.substr(1)) {
        index = index * 10 + (d - '0');
        if (index > arity_) break;
      }
      if (index < 1 || index > arity_) {
        throw ParseError("variable '" + std::string(ident) + "' outside y1..y" +
                             std::to_string(arity_),
                         start);
      }
      return emit(Op::kVar, index - 1, -1, -1);
    }
    throw ParseError("unexpected '" + std::string(1, ch) + "'", pos_);
  }

  std::int64_t read_integer(std::size_t start) {
    std::int64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int digit = text_[pos_] - '0';
      if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
        throw ParseError("integer literal too large", start);
      }
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  std::string_view text_;
  int arity_;
  std::size_t pos_ = 0;
  TransitionExpr expr_;
};

TransitionExpr parse_transition_expr(std::string_view text, int arity) {
  if (arity < 1) throw InvalidInput("arity must be positive");
  return ExprParser(text, arity).parse();
}

std::int64_t TransitionExpr::evaluate(std::span<const std::int64_t> vars) const {
  std::vector<std::int64_t> scratch;
  return evaluate(vars, scratch);
}

std::int64_t TransitionExpr::evaluate(std::span<const std::int64_t> vars,
                                      std::vector<std::int64_t>& value) const {
  // Children always precede their parent in the arena, so a forward sweep
  // evaluates the tree without recursion.
  value.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::kConst: value[i] = n.value; break;
      case Op::kVar: value[i] = vars[static_cast<std::size_t>(n.value)]; break;
      case Op::kNeg: value[i] = -value[n.lhs]; break;
      case Op::kAdd: value[i] = value[n.lhs] + value[n.rhs]; break;
      case Op::kSub: value[i] = value[n.lhs] - value[n.rhs]; break;
      case Op::kMul: value[i] = value[n.lhs] * value[n.rhs]; break;
      case Op::kEq: value[i] = value[n.lhs] == value[n.rhs]; break;
      case Op::kNe: value[i] = value[n.lhs] != value[n.rhs]; break;
    }
  }
  return value.back();
}

namespace {

std::string render(const std::vector<TransitionExpr::Node>& nodes, int at) {
  using Op = TransitionExpr::Op;
  const auto& n = nodes[at];
  auto binary = [&](const char* op) {
    return "(" + render(nodes, n.lhs) + " " + op + " " + render(nodes, n.rhs) + ")";
  };
  switch (n.op) {
    case Op::kConst: return std::to_string(n.value);
    case Op::kVar: return "y" + std::to_string(n.value + 1);
    case Op::kNeg: return "(-" + render(nodes, n.lhs) + ")";
    case Op::kAdd: return binary("+");
    case Op::kSub: return binary("-");
    case Op::kMul: return binary("*");
    case Op::kEq: return binary("==");
    case Op::kNe: return binary("!=");
  }
  return {};
}

}  // namespace

std::string TransitionExpr::to_string() const {
  return nodes_.empty() ? std::string() : render(nodes_, static_cast<int>(nodes_.size()) - 1);
}

int TransitionExpr::max_variable() const noexcept {
  int best = 0;
  for (const auto& n : nodes_) {
    if (n.op == Op::kVar) best = std::max(best, static_cast<int>(n.value) + 1);
  }
  return best;
}

std::string sum_expr_text(int arity) {
  std::string text;
  for (int i = 1; i <= arity; ++i) {
    if (i > 1) text += " + ";
    text += "y" + std::to_string(i);
  }
  return text;
}

std::string product_expr_text(int arity) {
  std::string text;
  for (int i = 1; i <= arity; ++i) {
    if (i > 1) text += " * ";
    text += "y" + std::to_string(i);
  }
  return text;
}

}  // namespace mipll
