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

#include "mipll/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "mipll/error.hpp"

namespace mipll {

LabeledDataset make_synthetic_dataset(int classes, int per_class, int dim, double separation,
                                      std::uint64_t seed) {
  if (classes < 2) throw InvalidInput("synthetic data needs at least 2 classes");
  if (per_class < 1 || dim < 1) throw InvalidInput("per_class and dim must be positive");
  if (!(separation >= 0.0)) throw InvalidInput("separation must be nonnegative");

  std::vector<std::vector<double>> means(classes, std::vector<double>(dim, 0.0));
  if (dim == 1) {
    for (int l = 0; l < classes; ++l) means[l][0] = separation * l;
  } else {
    const double radius = separation / (2.0 * std::sin(std::numbers::pi / classes));
    for (int l = 0; l < classes; ++l) {
      const double angle = 2.0 * std::numbers::pi * l / classes;
      means[l][0] = radius * std::cos(angle);
      means[l][1] = radius * std::sin(angle);
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t n = static_cast<std::size_t>(classes) * per_class;
  std::vector<int> order_labels;
  order_labels.reserve(n);
  for (int l = 0; l < classes; ++l) order_labels.insert(order_labels.end(), per_class, l);
  std::shuffle(order_labels.begin(), order_labels.end(), rng);

  LabeledDataset data;
  data.classes = classes;
  data.dim = dim;
  data.labels = std::move(order_labels);
  data.features.resize(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (int d = 0; d < dim; ++d) data.features[i * dim + d] = means[data.labels[i]][d] + noise(rng);
  }
  return data;
}

WeakDataset weak_labelize(const std::vector<LabeledDataset>& per_block, const Transition& t,
                          std::size_t m_P, std::uint64_t seed) {
  const InputLayout& layout = t.layout();
  if (per_block.size() != layout.blocks().size()) {
    throw InvalidInput("need one labelled dataset per classifier block");
  }
  if (m_P == 0) throw InvalidInput("m_P must be positive");
  const int dim = per_block.front().dim;
  for (std::size_t b = 0; b < per_block.size(); ++b) {
    if (per_block[b].size() == 0) throw InvalidInput("labelled dataset is empty");
    if (per_block[b].dim != dim) throw InvalidInput("blocks must share the feature dimension");
    if (per_block[b].classes != layout.blocks()[b].space.size()) {
      throw InvalidInput("block " + std::to_string(b + 1) + " class count does not match");
    }
  }

  const int m = layout.arity();
  std::mt19937_64 rng(seed);
  WeakDataset ds;
  ds.arity = m;
  ds.dim = dim;
  ds.seed = seed;
  ds.samples.resize(m_P);
  ds.gold.resize(m_P);
  for (std::size_t j = 0; j < m_P; ++j) {
    WeakSample& sample = ds.samples[j];
    sample.features.resize(static_cast<std::size_t>(m) * dim);
    LabelVector y(m);
    for (int i = 0; i < m; ++i) {
      const LabeledDataset& src = per_block[layout.block_of(i)];
      std::uniform_int_distribution<std::size_t> pick(0, src.size() - 1);
      const std::size_t at = pick(rng);
      y[i] = src.labels[at];
      const auto row = src.row(at);
      std::copy(row.begin(), row.end(), sample.features.begin() + static_cast<std::ptrdiff_t>(i) * dim);
    }
    sample.s = t.apply(y);
    ds.gold[j] = std::move(y);
  }
  return ds;
}

WeakDataset weak_labelize(const LabeledDataset& data, const Transition& t, std::size_t m_P,
                          std::uint64_t seed) {
  return weak_labelize(std::vector<LabeledDataset>{data}, t, m_P, seed);
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("line " + std::to_string(line) + ": bad number '" + cell + "'");
  }
}

long long parse_integer(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("line " + std::to_string(line) + ": bad integer '" + cell + "'");
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  return out;
}

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

void write_labeled_csv(const LabeledDataset& data, const std::string& path) {
  auto out = open_out(path);
  for (int d = 0; d < data.dim; ++d) out << 'f' << d + 1 << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << format_double(v) << ',';
    out << data.labels[i] << '\n';
  }
}

LabeledDataset read_labeled_csv(const std::string& path, int classes) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("'" + path + "' is empty");
  const auto header = split_csv(trim_cr(line));
  if (header.size() < 2 || header.back() != "label") {
    throw InvalidInput("labelled CSV header must be f1,...,fD,label");
  }
  LabeledDataset data;
  data.classes = classes;
  data.dim = static_cast<int>(header.size()) - 1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " fields");
    }
    for (int d = 0; d < data.dim; ++d) data.features.push_back(parse_double(cells[d], line_no));
    const long long label = parse_integer(cells.back(), line_no);
    if (label < 0 || label >= classes) {
      throw InvalidInput("line " + std::to_string(line_no) + ": label out of range");
    }
    data.labels.push_back(static_cast<int>(label));
  }
  return data;
}

void write_weak_csv(const WeakDataset& data, const Transition& t, const std::string& path) {
  auto out = open_out(path);
  out << "block,idx,";
  for (int d = 0; d < data.dim; ++d) out << 'f' << d + 1 << ',';
  out << "s\n";
  for (std::size_t j = 0; j < data.size(); ++j) {
    const WeakSample& sample = data.samples[j];
    for (int i = 0; i < data.arity; ++i) {
      out << t.layout().block_of(i) + 1 << ',' << j << ',';
      for (int d = 0; d < data.dim; ++d) {
        out << format_double(sample.features[static_cast<std::size_t>(i) * data.dim + d]) << ',';
      }
      out << sample.s << '\n';
    }
  }
}

WeakDataset read_weak_csv(const std::string& path, const Transition& t) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("'" + path + "' is empty");
  const auto header = split_csv(trim_cr(line));
  if (header.size() < 4 || header[0] != "block" || header[1] != "idx" || header.back() != "s") {
    throw InvalidInput("weak CSV header must be block,idx,f1,...,fD,s");
  }
  WeakDataset data;
  data.arity = t.arity();
  data.dim = static_cast<int>(header.size()) - 3;
  std::size_t line_no = 1;
  int position = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " fields");
    }
    const long long block = parse_integer(cells[0], line_no);
    const long long idx = parse_integer(cells[1], line_no);
    if (position == 0) {
      if (idx != static_cast<long long>(data.samples.size())) {
        throw InvalidInput("line " + std::to_string(line_no) + ": sample indices must be consecutive");
      }
      data.samples.emplace_back();
      data.samples.back().s = parse_integer(cells.back(), line_no);
    } else if (idx != static_cast<long long>(data.samples.size()) - 1 ||
               parse_integer(cells.back(), line_no) != data.samples.back().s) {
      throw InvalidInput("line " + std::to_string(line_no) + ": sample rows are incomplete");
    }
    if (block != t.layout().block_of(position) + 1) {
      throw InvalidInput("line " + std::to_string(line_no) + ": unexpected block");
    }
    for (int d = 0; d < data.dim; ++d) {
      data.samples.back().features.push_back(parse_double(cells[2 + d], line_no));
    }
    position = (position + 1) % data.arity;
  }
  if (position != 0) throw InvalidInput("weak CSV ends inside a sample");
  if (data.samples.empty()) throw InvalidInput("weak CSV has no samples");
  return data;
}

}  // namespace mipll
