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

#include <fstream>
#include <sstream>

#include "mipll/error.hpp"
#include "mipll/transition.hpp"

namespace mipll {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InvalidInput("transition spec line " + std::to_string(line) + ": " + what);
}

int read_int(std::istringstream& in, std::size_t line, const char* what) {
  long long v = 0;
  if (!(in >> v) || v < INT32_MIN || v > INT32_MAX) {
    fail(line, std::string("expected integer ") + what);
  }
  return static_cast<int>(v);
}

// Optional trailing "offset o"; nothing else may follow.
int read_offset(std::istringstream& in, std::size_t line) {
  std::string word;
  if (!(in >> word)) return 0;
  if (word != "offset") fail(line, "unexpected '" + word + "'");
  const int o = read_int(in, line, "after 'offset'");
  if (in >> word) fail(line, "unexpected '" + word + "'");
  return o;
}

}  // namespace

TransitionSpec parse_transition_spec(const std::string& text) {
  std::istringstream lines(text);
  std::string raw;
  std::size_t line_no = 0;

  int arity = 0;
  std::optional<Block> single;
  std::vector<std::pair<int, Block>> blocks;
  std::vector<std::string> expressions;
  std::vector<std::vector<int>> weights;
  std::vector<std::pair<std::vector<int>, PartialLabel>> rows;
  bool in_table = false;

  while (std::getline(lines, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;

    if (in_table) {
      const auto arrow = line.find("->");
      if (arrow == std::string::npos) fail(line_no, "table row needs '->'");
      std::istringstream lhs(line.substr(0, arrow));
      std::istringstream rhs(line.substr(arrow + 2));
      std::vector<int> y;
      long long v = 0;
      while (lhs >> v) y.push_back(static_cast<int>(v));
      if (!lhs.eof()) fail(line_no, "malformed table row");
      long long s = 0;
      std::string extra;
      if (!(rhs >> s) || (rhs >> extra)) fail(line_no, "malformed table output");
      rows.emplace_back(std::move(y), s);
      continue;
    }

    std::istringstream in(line);
    std::string key;
    in >> key;
    if (key == "arity") {
      arity = read_int(in, line_no, "after 'arity'");
      if (arity < 1) fail(line_no, "arity must be positive");
    } else if (key == "labels") {
      const int c = read_int(in, line_no, "after 'labels'");
      const int o = read_offset(in, line_no);
      if (c < 2) fail(line_no, "label count must be at least 2");
      single = Block{0, LabelSpace(c, o)};
    } else if (key == "block") {
      std::string idx;
      in >> idx;
      if (idx.empty() || idx.back() != ':') fail(line_no, "expected 'block i:'");
      std::string word;
      in >> word;
      if (word != "count") fail(line_no, "expected 'count'");
      const int count = read_int(in, line_no, "after 'count'");
      in >> word;
      if (word != "labels") fail(line_no, "expected 'labels'");
      const int c = read_int(in, line_no, "after 'labels'");
      const int o = read_offset(in, line_no);
      if (count < 1) fail(line_no, "block count must be positive");
      if (c < 2) fail(line_no, "label count must be at least 2");
      int i = 0;
      try {
        i = std::stoi(idx.substr(0, idx.size() - 1));
      } catch (const std::exception&) {
        fail(line_no, "bad block index '" + idx + "'");
      }
      if (i != static_cast<int>(blocks.size()) + 1) fail(line_no, "blocks must be numbered 1, 2, ...");
      blocks.emplace_back(i, Block{count, LabelSpace(c, o)});
    } else if (key == "expr") {
      std::string rest;
      std::getline(in, rest);
      rest = trim(rest);
      if (rest.empty()) fail(line_no, "empty expression");
      expressions.push_back(rest);
    } else if (key == "weights") {
      std::vector<int> w;
      long long v = 0;
      while (in >> v) w.push_back(static_cast<int>(v));
      if (!in.eof() || w.empty()) fail(line_no, "malformed weights");
      weights.push_back(std::move(w));
    } else if (key == "table") {
      in_table = true;
    } else {
      fail(line_no, "unknown keyword '" + key + "'");
    }
  }

  if (arity == 0) throw InvalidInput("transition spec is missing 'arity'");
  if (single.has_value() == !blocks.empty()) {
    throw InvalidInput("transition spec needs either 'labels' or 'block' lines");
  }
  std::vector<Block> layout_blocks;
  if (single) {
    layout_blocks.push_back(Block{arity, single->space});
  } else {
    int total = 0;
    for (auto& [i, b] : blocks) {
      total += b.count;
      layout_blocks.push_back(b);
    }
    if (total != arity) {
      throw InvalidInput("block counts sum to " + std::to_string(total) + ", arity is " +
                         std::to_string(arity));
    }
  }

  TransitionSpec spec{InputLayout(std::move(layout_blocks)), std::move(expressions),
                      std::move(weights), std::nullopt};
  const int kinds = !spec.expressions.empty() + !spec.weights.empty() + in_table;
  if (kinds == 0) throw InvalidInput("transition spec needs 'expr', 'weights' or 'table'");
  if (in_table && kinds > 1) throw InvalidInput("'table' cannot be mixed with 'expr' or 'weights'");

  if (in_table) {
    const InputLayout& layout = spec.layout;
    if (layout.cardinality() == 0 || layout.cardinality() > kDefaultEnumerationCap) {
      throw CapExceeded("transition table is too large");
    }
    std::vector<PartialLabel> values(layout.cardinality());
    std::vector<bool> seen(layout.cardinality(), false);
    for (auto& [shown, s] : rows) {
      if (static_cast<int>(shown.size()) != arity) {
        throw InvalidInput("table row has " + std::to_string(shown.size()) +
                           " labels, expected " + std::to_string(arity));
      }
      std::vector<int> y(arity);
      for (int i = 0; i < arity; ++i) y[i] = layout.space(i).from_display(shown[i]);
      layout.validate(y);
      const auto r = layout.rank(y);
      if (seen[r]) throw InvalidInput("table repeats row " + format_vector(shown));
      seen[r] = true;
      values[r] = s;
    }
    if (rows.size() != layout.cardinality()) {
      throw InvalidInput("table is not total: " + std::to_string(rows.size()) + " of " +
                         std::to_string(layout.cardinality()) + " rows");
    }
    spec.table = std::move(values);
  }
  return spec;
}

TransitionSpec load_transition_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open transition spec '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_transition_spec(text.str());
}

Transition build_transition(const TransitionSpec& spec, std::uint64_t cap) {
  if (spec.table) return Transition::from_table(spec.layout, *spec.table);
  return build_transition_space(spec, cap)[0];
}

TransitionSpace build_transition_space(const TransitionSpec& spec, std::uint64_t cap) {
  if (spec.table) return TransitionSpace({Transition::from_table(spec.layout, *spec.table)});
  if (spec.expressions.empty() && spec.layout.single_block()) {
    return weighted_sum_space(spec.weights, spec.layout.arity(), spec.layout.space(0));
  }
  std::vector<Transition> candidates;
  for (const auto& text : spec.expressions) {
    candidates.push_back(
        materialize(parse_transition_expr(text, spec.layout.arity()), spec.layout, cap));
  }
  for (const auto& w : spec.weights) {
    if (static_cast<int>(w.size()) != spec.layout.arity()) {
      throw InvalidInput("weight tuple length does not match the arity");
    }
    std::string text;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) text += " + ";
      text += "(" + std::to_string(w[i]) + ") * y" + std::to_string(i + 1);
    }
    candidates.push_back(
        materialize(parse_transition_expr(text, spec.layout.arity()), spec.layout, cap));
  }
  return TransitionSpace(std::move(candidates));
}

}  // namespace mipll
