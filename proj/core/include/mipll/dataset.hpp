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

#ifndef MIPLL_DATASET_HPP_
#define MIPLL_DATASET_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mipll/labels.hpp"
#include "mipll/transition.hpp"

namespace mipll {

/// Fully labelled points; features are row-major, one row of `dim` per point.
struct LabeledDataset {
  int classes = 0;
  int dim = 0;
  std::vector<double> features;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

/// Isotropic unit-variance Gaussian clusters, `per_class` points per class,
/// shuffled. Class means lie on a circle in the first two coordinates with
/// neighbouring means `separation` apart (on a line when dim == 1).
LabeledDataset make_synthetic_dataset(int classes, int per_class, int dim, double separation,
                                      std::uint64_t seed);

/// Instance features and the partial label. Gold labels are not part of it.
struct WeakSample {
  std::vector<double> features;  // arity x dim, row-major
  PartialLabel s = 0;
};

struct WeakDataset {
  int arity = 0;
  int dim = 0;
  std::vector<WeakSample> samples;
  /// Hidden gold label vectors, for evaluation only; may be empty.
  std::vector<LabelVector> gold;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return samples.size(); }
};

/// Draws m_P samples: for each position, a point of the labelled dataset of
/// that position's block (uniformly, with replacement); s = sigma(labels).
/// `per_block` holds one dataset per block of t's layout.
WeakDataset weak_labelize(const std::vector<LabeledDataset>& per_block, const Transition& t,
                          std::size_t m_P, std::uint64_t seed);

/// Single-block convenience overload.
WeakDataset weak_labelize(const LabeledDataset& data, const Transition& t, std::size_t m_P,
                          std::uint64_t seed);

/// CSV with header f1,...,fD,label.
void write_labeled_csv(const LabeledDataset& data, const std::string& path);
LabeledDataset read_labeled_csv(const std::string& path, int classes);

/// CSV with header block,idx,f1,...,fD,s: one row per instance, `idx` is the
/// sample index and `block` the 1-based classifier block of the position.
void write_weak_csv(const WeakDataset& data, const Transition& t, const std::string& path);
WeakDataset read_weak_csv(const std::string& path, const Transition& t);

}  // namespace mipll

#endif  // MIPLL_DATASET_HPP_
