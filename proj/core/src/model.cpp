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

#include "mipll/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mipll/error.hpp"

namespace mipll {

ScoringModel::ScoringModel(int classes, int dim)
    : classes_(classes), dim_(dim), w_(static_cast<std::size_t>(classes) * (dim + 1), 0.0) {
  if (classes < 2 || dim < 1) throw InvalidInput("model needs classes >= 2 and dim >= 1");
}

ScoringModel ScoringModel::random(int classes, int dim, std::mt19937_64& rng, double scale) {
  ScoringModel m(classes, dim);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (auto& w : m.w_) w = u(rng);
  return m;
}

void ScoringModel::forward(std::span<const double> x, std::span<double> out) const {
  double top = -INFINITY;
  for (int j = 0; j < classes_; ++j) {
    const double* row = w_.data() + static_cast<std::size_t>(j) * (dim_ + 1);
    double z = row[dim_];
    for (int d = 0; d < dim_; ++d) z += row[d] * x[d];
    out[j] = z;
    top = std::max(top, z);
  }
  double total = 0.0;
  for (int j = 0; j < classes_; ++j) {
    out[j] = std::exp(out[j] - top);
    total += out[j];
  }
  for (int j = 0; j < classes_; ++j) out[j] /= total;
}

std::vector<double> ScoringModel::forward(std::span<const double> x) const {
  std::vector<double> p(classes_);
  forward(x, p);
  return p;
}

int ScoringModel::predict(std::span<const double> x) const {
  int best = 0;
  double best_z = -INFINITY;
  for (int j = 0; j < classes_; ++j) {
    const double* row = w_.data() + static_cast<std::size_t>(j) * (dim_ + 1);
    double z = row[dim_];
    for (int d = 0; d < dim_; ++d) z += row[d] * x[d];
    if (z > best_z) {
      best_z = z;
      best = j;
    }
  }
  return best;
}

void ScoringModel::accumulate_gradient(std::span<const double> x, std::span<const double> dlogits,
                                       std::vector<double>& grad) const {
  for (int j = 0; j < classes_; ++j) {
    double* row = grad.data() + static_cast<std::size_t>(j) * (dim_ + 1);
    const double g = dlogits[j];
    for (int d = 0; d < dim_; ++d) row[d] += g * x[d];
    row[dim_] += g;
  }
}

void softmax_backward(std::span<const double> p, std::span<const double> dp,
                      std::span<double> dz) {
  double dot = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) dot += dp[j] * p[j];
  for (std::size_t j = 0; j < p.size(); ++j) dz[j] = p[j] * (dp[j] - dot);
}

void save_model(const std::vector<ScoringModel>& models, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << models.size() << '\n';
  char buf[32];
  for (const auto& m : models) {
    out << m.classes() << ' ' << m.dim() << '\n';
    for (int j = 0; j < m.classes(); ++j) {
      for (int d = 0; d <= m.dim(); ++d) {
        std::snprintf(buf, sizeof buf, "%.17g", m.weight(j, d));
        out << (d ? " " : "") << buf;
      }
      out << '\n';
    }
  }
}

std::vector<ScoringModel> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw InvalidInput("model file has no models");
  std::vector<ScoringModel> models;
  for (std::size_t i = 0; i < n; ++i) {
    int classes = 0;
    int dim = 0;
    if (!(in >> classes >> dim)) throw InvalidInput("model file is truncated");
    ScoringModel m(classes, dim);
    for (auto& w : m.weights()) {
      if (!(in >> w)) throw InvalidInput("model file is truncated");
    }
    models.push_back(std::move(m));
  }
  return models;
}

}  // namespace mipll
