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

#ifndef MIPLL_TRANSITION_MATRIX_HPP_
#define MIPLL_TRANSITION_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mipll/transition.hpp"

namespace mipll {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// T_k: entry (s, y) = P(sigma(Y) = s | Y_k = y) under i.i.d. labels.
/// Rows follow Transition::outputs(); columns are canonical labels.
struct TransitionMatrix {
  Matrix entries;
  int position = 0;  // 0-based k
  std::vector<double> marginal;
  std::vector<PartialLabel> row_labels;
};

/// `marginal` must be nonnegative and sum to 1 within 1e-12.
TransitionMatrix build_transition_matrix(const Transition& t, std::span<const double> marginal,
                                         int position);

struct RankResult {
  bool left_invertible = false;
  std::size_t rank = 0;
  std::vector<double> singular_values;  // descending
};

/// Numeric column rank with threshold tol * largest singular value.
RankResult left_invertible(const Matrix& m, double tol = 1e-9);

/// Ambiguity degree of a set-valued transition matrix:
/// max over y and y' != y of sum over rows r with y' in row_sets[r] of m(r, y).
/// `row_sets` lists the 0-based labels in each row's partial-label set.
double ambiguity_degree_sets(const Matrix& m, const std::vector<std::vector<int>>& row_sets);

}  // namespace mipll

#endif  // MIPLL_TRANSITION_MATRIX_HPP_
