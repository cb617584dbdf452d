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

#ifndef MIPLL_MODEL_HPP_
#define MIPLL_MODEL_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace mipll {

/// Softmax-linear classifier: f(x) = softmax(W [x; 1]), W of shape
/// classes x (dim + 1) stored row-major with the bias in the last column.
class ScoringModel {
 public:
  ScoringModel() = default;
  ScoringModel(int classes, int dim);

  /// Weights uniform in [-scale, scale] drawn from `rng`.
  static ScoringModel random(int classes, int dim, std::mt19937_64& rng, double scale = 0.01);

  int classes() const noexcept { return classes_; }
  int dim() const noexcept { return dim_; }
  std::vector<double>& weights() noexcept { return w_; }
  const std::vector<double>& weights() const noexcept { return w_; }
  double& weight(int label, int column) { return w_[label * (dim_ + 1) + column]; }
  double weight(int label, int column) const { return w_[label * (dim_ + 1) + column]; }

  /// Writes the probability row for x into `out` (size classes()).
  void forward(std::span<const double> x, std::span<double> out) const;
  std::vector<double> forward(std::span<const double> x) const;

  /// argmax of the scores; ties go to the smallest label.
  int predict(std::span<const double> x) const;

  /// Adds d loss / d W for one input, given d loss / d logits.
  void accumulate_gradient(std::span<const double> x, std::span<const double> dlogits,
                           std::vector<double>& grad) const;

  friend bool operator==(const ScoringModel&, const ScoringModel&) = default;

 private:
  int classes_ = 0;
  int dim_ = 0;
  std::vector<double> w_;
};

/// Chain rule through softmax: dz_j = p_j (g_j - sum_l g_l p_l).
void softmax_backward(std::span<const double> p, std::span<const double> dp,
                      std::span<double> dz);

/// Text serialisation: "classes dim" then one line per class.
void save_model(const std::vector<ScoringModel>& models, const std::string& path);
std::vector<ScoringModel> load_model(const std::string& path);

}  // namespace mipll

#endif  // MIPLL_MODEL_HPP_
