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

#ifndef MIPLL_DUAL_HPP_
#define MIPLL_DUAL_HPP_

#include <cstddef>
#include <vector>

namespace mipll {

/// Forward-mode dual number with a dense tangent vector. Operands must
/// share a tangent dimension or have an empty (constant) tangent.
class Dual {
 public:
  using Real = long double;

  Dual() = default;
  Dual(Real value) : value_(value) {}  // NOLINT: constants convert implicitly
  Dual(Real value, std::vector<Real> tangent) : value_(value), tangent_(std::move(tangent)) {}

  /// The `index`-th input variable among `dim`.
  static Dual variable(Real value, std::size_t index, std::size_t dim) {
    std::vector<Real> t(dim, 0.0L);
    t[index] = 1.0L;
    return Dual(value, std::move(t));
  }

  Real value() const noexcept { return value_; }
  const std::vector<Real>& tangent() const noexcept { return tangent_; }
  Real tangent(std::size_t i) const { return i < tangent_.size() ? tangent_[i] : 0.0L; }

  Dual& operator+=(const Dual& o) {
    axpy(1.0L, o);
    value_ += o.value_;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    axpy(-1.0L, o);
    value_ -= o.value_;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    // (a, a') * (b, b') = (ab, a'b + ab')
    for (auto& t : tangent_) t *= o.value_;
    axpy(value_, o);
    value_ *= o.value_;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    // (a/b)' = (a' - (a/b) b') / b
    const Real q = value_ / o.value_;
    axpy(-q, o);
    for (auto& t : tangent_) t /= o.value_;
    value_ = q;
    return *this;
  }
  Dual operator-() const {
    Dual r = *this;
    r.value_ = -r.value_;
    for (auto& t : r.tangent_) t = -t;
    return r;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

 private:
  // tangent_ += alpha * o.tangent_
  void axpy(Real alpha, const Dual& o) {
    if (o.tangent_.empty()) return;
    if (tangent_.empty()) tangent_.assign(o.tangent_.size(), 0.0L);
    for (std::size_t i = 0; i < o.tangent_.size(); ++i) tangent_[i] += alpha * o.tangent_[i];
  }

  Real value_ = 0.0L;
  std::vector<Real> tangent_;
};

}  // namespace mipll

#endif  // MIPLL_DUAL_HPP_
