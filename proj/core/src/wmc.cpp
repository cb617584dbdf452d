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

#include "mipll/wmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mipll/dual.hpp"
#include "mipll/error.hpp"

namespace mipll {

std::vector<LabelVariable> DnfFormula::variables() const {
  std::vector<LabelVariable> vars;
  for (const auto& d : disjuncts) vars.insert(vars.end(), d.begin(), d.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

DnfFormula make_formula(std::vector<std::vector<LabelVariable>> conjunctions, bool exclusive) {
  if (conjunctions.empty()) throw InvalidInput("formula needs at least one disjunct");
  DnfFormula phi;
  phi.exclusive = exclusive;
  for (auto& conj : conjunctions) {
    if (conj.empty()) throw InvalidInput("conjunctions must be nonempty");
    std::sort(conj.begin(), conj.end());
    conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
    if (std::find(phi.disjuncts.begin(), phi.disjuncts.end(), conj) == phi.disjuncts.end()) {
      phi.disjuncts.push_back(std::move(conj));
    }
  }
  return phi;
}

DnfFormula formula_from_vectors(std::span<const LabelVector> vectors, bool exclusive) {
  if (vectors.empty()) throw InvalidInput("formula needs at least one label vector");
  std::vector<std::vector<LabelVariable>> conjunctions;
  conjunctions.reserve(vectors.size());
  for (const auto& y : vectors) {
    if (y.size() != vectors.front().size()) throw InvalidInput("label vectors differ in arity");
    std::vector<LabelVariable> conj;
    for (std::size_t i = 0; i < y.size(); ++i) conj.push_back({static_cast<int>(i), y[i]});
    conjunctions.push_back(std::move(conj));
  }
  return make_formula(std::move(conjunctions), exclusive);
}

namespace {

// Formula re-indexed over its distinct variables 0..V-1.
struct Prepared {
  std::vector<LabelVariable> vars;
  std::vector<double> weight;     // clamped
  std::vector<bool> clamped;      // weight was moved by the clamp
  std::vector<int> position_of;   // var -> dense position id
  int positions = 0;
  std::vector<std::vector<int>> disjuncts;
  bool exclusive = false;
};

Prepared prepare(const DnfFormula& phi, const WeightTable& w) {
  if (phi.disjuncts.empty()) throw InvalidInput("formula needs at least one disjunct");
  Prepared p;
  p.exclusive = phi.exclusive;
  p.vars = phi.variables();
  for (const auto& v : p.vars) {
    if (v.position < 0 || v.position >= static_cast<int>(w.size()) || v.label < 0 ||
        v.label >= static_cast<int>(w[v.position].size())) {
      throw InvalidInput("no weight for variable A(" + std::to_string(v.position + 1) + "," +
                         std::to_string(v.label) + ")");
    }
    const double raw = w[v.position][v.label];
    if (!std::isfinite(raw)) throw InvalidInput("weights must be finite");
    const double c = std::clamp(raw, kWeightFloor, 1.0 - kWeightFloor);
    p.weight.push_back(c);
    p.clamped.push_back(c != raw);
    if (p.position_of.empty() || p.vars[p.position_of.size() - 1].position != v.position) {
      ++p.positions;
    }
    p.position_of.push_back(p.positions - 1);
  }
  for (const auto& d : phi.disjuncts) {
    std::vector<int> ids;
    for (const auto& v : d) {
      ids.push_back(static_cast<int>(std::lower_bound(p.vars.begin(), p.vars.end(), v) -
                                     p.vars.begin()));
    }
    p.disjuncts.push_back(std::move(ids));
  }
  return p;
}

// Inclusion-exclusion over nonempty subsets of disjuncts. Each subset's
// term is the probability that every variable in the union of its
// conjunctions is true (and, when exclusive, that every other variable of
// the formula sharing a position is false).
template <class T>
class InclusionExclusion {
 public:
  InclusionExclusion(const Prepared& p, const std::vector<T>& omega) : p_(p) {
    const std::size_t v = p.vars.size();
    cover_.assign(v, 0);
    occupant_.assign(p.positions, -1);
    if (!p.exclusive) {
      factor_ = omega;
      base_ = T(1.0L);
      return;
    }
    // Q_pos = P(at most one variable at pos is true); the subset term is
    // prod_pos Q_pos * prod_{forced A} g_A / Q_pos(A), where
    // g_A = w_A * prod_{B at pos(A), B != A} (1 - w_B).
    std::vector<T> none(p.positions, T(1.0L));
    for (std::size_t j = 0; j < v; ++j) none[p.position_of[j]] *= T(1.0L) - omega[j];
    std::vector<T> g(v);
    std::vector<T> q = none;
    for (std::size_t j = 0; j < v; ++j) {
      g[j] = omega[j];
      for (std::size_t b = 0; b < v; ++b) {
        if (b != j && p.position_of[b] == p.position_of[j]) g[j] *= T(1.0L) - omega[b];
      }
      q[p.position_of[j]] += g[j];
    }
    base_ = T(1.0L);
    for (const auto& qp : q) base_ *= qp;
    factor_.resize(v);
    for (std::size_t j = 0; j < v; ++j) factor_[j] = g[j] / q[p.position_of[j]];
  }

  T run() {
    total_ = T(0.0L);
    recurse(0, base_, true);
    return total_;
  }

 private:
  void recurse(std::size_t start, const T& product, bool positive) {
    for (std::size_t i = start; i < p_.disjuncts.size(); ++i) {
      T next = product;
      std::size_t applied = 0;
      bool conflict = false;
      const auto& d = p_.disjuncts[i];
      for (; applied < d.size(); ++applied) {
        const int var = d[applied];
        if (cover_[var]++ > 0) continue;
        if (p_.exclusive) {
          int& occ = occupant_[p_.position_of[var]];
          if (occ != -1) {
            conflict = true;
            ++applied;
            break;
          }
          occ = var;
        }
        next *= factor_[var];
      }
      if (!conflict) {
        if (positive) {
          total_ += next;
        } else {
          total_ -= next;
        }
        recurse(i + 1, next, !positive);
      }
      for (std::size_t a = 0; a < applied; ++a) {
        const int var = d[a];
        if (--cover_[var] == 0 && p_.exclusive && occupant_[p_.position_of[var]] == var) {
          occupant_[p_.position_of[var]] = -1;
        }
      }
    }
  }

  const Prepared& p_;
  std::vector<T> factor_;
  T base_;
  T total_;
  std::vector<int> cover_;
  std::vector<int> occupant_;
};

long double ie_value(const Prepared& p) {
  std::vector<long double> omega(p.weight.begin(), p.weight.end());
  return InclusionExclusion<long double>(p, omega).run();
}

long double brute_force_value(const Prepared& p) {
  const int v = static_cast<int>(p.vars.size());
  if (v > kMaxBruteForceVariables) {
    throw CapExceeded("interpretation enumeration needs at most 22 variables");
  }
  const std::uint32_t count = std::uint32_t{1} << v;

  // model[I] = some conjunction is a subset of I (superset closure).
  std::vector<std::uint8_t> model(count, 0);
  for (const auto& d : p.disjuncts) {
    std::uint32_t mask = 0;
    for (int var : d) mask |= std::uint32_t{1} << var;
    model[mask] = 1;
  }
  for (int b = 0; b < v; ++b) {
    const std::uint32_t bit = std::uint32_t{1} << b;
    for (std::uint32_t i = 0; i < count; ++i) {
      if (i & bit) model[i] |= model[i ^ bit];
    }
  }

  std::vector<std::uint32_t> position_mask(p.positions, 0);
  for (int j = 0; j < v; ++j) position_mask[p.position_of[j]] |= std::uint32_t{1} << j;

  // Interpretation weight = low-half product * high-half product.
  const int lo_bits = v / 2;
  const int hi_bits = v - lo_bits;
  auto half_products = [&](int first, int bits) {
    std::vector<long double> out(std::size_t{1} << bits);
    for (std::size_t i = 0; i < out.size(); ++i) {
      long double prod = 1.0L;
      for (int b = 0; b < bits; ++b) {
        const long double w = p.weight[first + b];
        prod *= (i >> b & 1) ? w : 1.0L - w;
      }
      out[i] = prod;
    }
    return out;
  };
  const auto lo = half_products(0, lo_bits);
  const auto hi = half_products(lo_bits, hi_bits);

  long double total = 0.0L;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!model[i]) continue;
    if (p.exclusive) {
      bool ok = true;
      for (auto pm : position_mask) {
        const std::uint32_t on = i & pm;
        if (on & (on - 1)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
    }
    total += lo[i & ((std::uint32_t{1} << lo_bits) - 1)] * hi[i >> lo_bits];
  }
  return total;
}

bool use_inclusion_exclusion(const Prepared& p) {
  if (static_cast<int>(p.disjuncts.size()) <= kMaxInclusionExclusionDisjuncts) return true;
  if (static_cast<int>(p.vars.size()) <= kMaxBruteForceVariables) return false;
  throw CapExceeded("formula has more than 20 disjuncts and more than 22 variables");
}

double clamp_wmc(long double v) {
  return static_cast<double>(std::clamp<long double>(v, kWmcFloor, 1.0L));
}

}  // namespace

double wmc_inclusion_exclusion(const DnfFormula& phi, const WeightTable& w) {
  const Prepared p = prepare(phi, w);
  if (static_cast<int>(p.disjuncts.size()) > 30) {
    throw CapExceeded("inclusion-exclusion limited to 30 disjuncts");
  }
  return static_cast<double>(ie_value(p));
}

double wmc_brute_force(const DnfFormula& phi, const WeightTable& w) {
  return static_cast<double>(brute_force_value(prepare(phi, w)));
}

double wmc(const DnfFormula& phi, const WeightTable& w) {
  const Prepared p = prepare(phi, w);
  const long double v = use_inclusion_exclusion(p) ? ie_value(p) : brute_force_value(p);
#ifndef NDEBUG
  if (static_cast<int>(p.vars.size()) <= 16 &&
      static_cast<int>(p.disjuncts.size()) <= kMaxInclusionExclusionDisjuncts) {
    const long double other = use_inclusion_exclusion(p) ? brute_force_value(p) : ie_value(p);
    if (std::fabs(static_cast<double>(v - other)) > 1e-9) {
      throw std::logic_error("WMC cross-check failed");
    }
  }
#endif
  return clamp_wmc(v);
}

double semantic_loss(const DnfFormula& phi, const WeightTable& w) { return -std::log(wmc(phi, w)); }

WmcGradient wmc_with_gradient(const DnfFormula& phi, const WeightTable& w) {
  const Prepared p = prepare(phi, w);
  if (static_cast<int>(p.disjuncts.size()) > kMaxInclusionExclusionDisjuncts) {
    throw CapExceeded("gradients need at most 20 disjuncts");
  }
  const std::size_t v = p.vars.size();
  std::vector<Dual> omega;
  omega.reserve(v);
  for (std::size_t j = 0; j < v; ++j) {
    // A clamped weight is locally constant.
    omega.push_back(p.clamped[j] ? Dual(p.weight[j]) : Dual::variable(p.weight[j], j, v));
  }
  const Dual result = InclusionExclusion<Dual>(p, omega).run();

  WmcGradient out;
  out.variables = p.vars;
  out.value = clamp_wmc(result.value());
  out.gradient.assign(v, 0.0);
  // Below the floor the clamp is locally constant; the ceiling only absorbs
  // rounding, so the tangent is kept there.
  if (result.value() >= kWmcFloor) {
    for (std::size_t j = 0; j < v; ++j) out.gradient[j] = static_cast<double>(result.tangent(j));
  }
  return out;
}

}  // namespace mipll
