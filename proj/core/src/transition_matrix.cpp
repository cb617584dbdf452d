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

#include "mipll/transition_matrix.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "mipll/error.hpp"

namespace mipll {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

TransitionMatrix build_transition_matrix(const Transition& t, std::span<const double> marginal,
                                         int position) {
  const InputLayout& layout = t.layout();
  if (!layout.single_block()) throw InvalidInput("transition matrix needs a single-block transition");
  const int c = layout.space(0).size();
  if (static_cast<int>(marginal.size()) != c) {
    throw InvalidInput("marginal has " + std::to_string(marginal.size()) + " entries, expected " +
                       std::to_string(c));
  }
  long double total = 0;
  for (double p : marginal) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("marginal entries must be nonnegative");
    total += p;
  }
  if (std::fabs(static_cast<double>(total) - 1.0) > 1e-12) {
    throw InvalidInput("marginal must sum to 1");
  }
  if (position < 0 || position >= t.arity()) throw InvalidInput("position out of range");

  TransitionMatrix out;
  out.entries = Matrix(t.output_count(), c, 0.0);
  out.position = position;
  out.marginal.assign(marginal.begin(), marginal.end());
  out.row_labels = t.outputs();

  const int m = t.arity();
  std::vector<int> y(m, 0);
  for (std::uint64_t r = 0; r < t.row_count(); ++r) {
    if (r) {
      for (int i = m - 1; i >= 0; --i) {
        if (++y[i] < c) break;
        y[i] = 0;
      }
    }
    double w = 1.0;
    for (int j = 0; j < m; ++j) {
      if (j != position) w *= marginal[y[j]];
    }
    out.entries(t.output_index_of_rank(r), y[position]) += w;
  }
  return out;
}

RankResult left_invertible(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) throw InvalidInput("matrix is empty");
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!std::isfinite(m(r, c))) throw InvalidInput("matrix has non-finite entries");
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();

  RankResult out;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  for (double s : out.singular_values) {
    if (top > 0.0 && s > tol * top) ++out.rank;
  }
  out.left_invertible = out.rank == m.cols();
  return out;
}

double ambiguity_degree_sets(const Matrix& m, const std::vector<std::vector<int>>& row_sets) {
  if (row_sets.size() != m.rows()) throw InvalidInput("one label set per matrix row is required");
  const int c = static_cast<int>(m.cols());
  double gamma = 0.0;
  for (int y = 0; y < c; ++y) {
    for (int y2 = 0; y2 < c; ++y2) {
      if (y2 == y) continue;
      double p = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (std::find(row_sets[r].begin(), row_sets[r].end(), y2) != row_sets[r].end()) {
          p += m(r, static_cast<std::size_t>(y));
        }
      }
      gamma = std::max(gamma, p);
    }
  }
  return gamma;
}

}  // namespace mipll
