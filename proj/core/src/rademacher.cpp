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

#include <cmath>
#include <random>

#include "mipll/error.hpp"
#include "mipll/evaluate.hpp"

namespace mipll {

namespace {

constexpr int kAscentSteps = 200;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double rademacher_estimate(double bound, std::span<const double> features, int dim,
                           std::size_t m, int draws, std::uint64_t seed) {
  if (!(bound >= 0.0)) throw InvalidInput("weight bound must be nonnegative");
  if (draws < 1 || m == 0 || dim < 1) throw InvalidInput("need draws >= 1, m >= 1 and dim >= 1");
  if (features.size() < static_cast<std::size_t>(dim) || features.size() % dim != 0) {
    throw InvalidInput("feature buffer does not hold whole rows");
  }
  const std::size_t rows = features.size() / dim;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
  std::bernoulli_distribution coin(0.5);

  const std::size_t width = static_cast<std::size_t>(dim) + 1;
  double total = 0.0;
  for (int d = 0; d < draws; ++d) {
    // The objective is linear in w: J(w) = w . g.
    std::vector<double> g(width, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t at = pick(rng);
      const double eps = coin(rng) ? 1.0 : -1.0;
      for (int k = 0; k < dim; ++k) g[k] += eps * features[at * dim + k];
      g[dim] += eps;
    }
    for (auto& v : g) v /= static_cast<double>(m);

    const double gnorm = norm(g);
    std::vector<double> w(width, 0.0);
    if (gnorm > 0.0 && bound > 0.0) {
      const double step = 0.1 * bound / gnorm;
      for (int t = 0; t < kAscentSteps; ++t) {
        for (std::size_t k = 0; k < width; ++k) w[k] += step * g[k];
        const double wn = norm(w);
        if (wn > bound) {
          for (auto& v : w) v *= bound / wn;
        }
      }
    }
    double value = 0.0;
    for (std::size_t k = 0; k < width; ++k) value += w[k] * g[k];
    total += value;
  }
  return total / draws;
}

double weight_norm_bound(const std::vector<ScoringModel>& models) {
  double best = 0.0;
  for (const auto& model : models) {
    for (int j = 0; j < model.classes(); ++j) {
      double s = 0.0;
      for (int d = 0; d <= model.dim(); ++d) s += model.weight(j, d) * model.weight(j, d);
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

}  // namespace mipll
