// Copyright 2026 The Authors.
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

// Kullback-Leibler divergence between fitted models and the normalized
// distance between two tile sets given background knowledge.
//
// All divergences are in nats. With M = T u U u B,
//
//   d(T, U; B) = (KL(M || U u B) + KL(M || T u B)) / KL(M || B),
//
// and d = 1 when KL(M || B) = 0.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "tilediv/core.hpp"
#include "tilediv/error.hpp"
#include "tilediv/maxent.hpp"

namespace tilediv {

struct DistanceReport {
  double value = 1.0;
  double kl_m_t = 0.0;  // KL(M || T u B)
  double kl_m_u = 0.0;  // KL(M || U u B)
  double kl_m_b = 0.0;  // KL(M || B)
  bool used_jaccard_path = false;
};

enum class DistancePath {
  kAuto,     // Jaccard arithmetic when every tile is exact
  kGeneral,  // always fit the four models
};

// KL(M || B) at or below this is treated as zero.
inline constexpr double kZeroDivergence = 1e-10;

namespace detail {

inline void require_same_dims(const EntryModel& a, const EntryModel& b) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorCode::kDimMismatch, "models are " + to_string(a.dims()) +
                                             " and " + to_string(b.dims()));
  }
}

// Throws when b is deterministic at an entry where a disagrees.
inline void require_absolutely_continuous(double a, double b) {
  if ((b == 0.0 && a > 0.0) || (b == 1.0 && a < 1.0)) {
    throw Error(ErrorCode::kInfiniteDivergence,
                "second model rules out an outcome the first allows");
  }
}

}  // namespace detail

// Entrywise KL divergence of the two product distributions, summed row-major.
inline double kl(const EntryModel& a, const EntryModel& b) {
  detail::require_same_dims(a, b);
  const auto& pa = a.probabilities();
  const auto& pb = b.probabilities();
  double sum = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const double x = pa[k];
    const double y = pb[k];
    detail::require_absolutely_continuous(x, y);
    if (x > 0.0) sum += x * std::log(x / y);
    if (x < 1.0) sum += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  }
  return sum;
}

// H(b) - H(a); equals kl(a, b) when b's tiles are a subset of a's.
inline double kl_by_entropy(const EntryModel& a, const EntryModel& b) {
  detail::require_same_dims(a, b);
  const auto& pa = a.probabilities();
  const auto& pb = b.probabilities();
  for (std::size_t k = 0; k < pa.size(); ++k) {
    detail::require_absolutely_continuous(pa[k], pb[k]);
  }
  return entropy(b) - entropy(a);
}

// 1 - |X n Y| / |X u Y| with X = area(T) \ area(B), Y = area(U) \ area(B).
inline double jaccard_distance(const TileSet& t, const TileSet& u,
                               const TileSet& b) {
  for (const TileSet* ts : {&t, &u, &b}) {
    for (std::size_t k = 0; k < ts->size(); ++k) {
      if (!(*ts)[k].exact()) {
        throw Error(ErrorCode::kNotExact,
                    "Jaccard distance needs exact tiles", k);
      }
    }
  }
  if (t.dims() != u.dims() || t.dims() != b.dims()) {
    throw Error(ErrorCode::kDimMismatch, "tile sets differ in dims");
  }
  const auto mt = coverage_mask(t);
  const auto mu = coverage_mask(u);
  const auto mb = coverage_mask(b);
  std::size_t both = 0, either = 0;
  for (std::size_t k = 0; k < mt.size(); ++k) {
    if (mb[k]) continue;
    both += mt[k] && mu[k];
    either += mt[k] || mu[k];
  }
  if (either == 0) return 1.0;
  return static_cast<double>(either - both) / static_cast<double>(either);
}

namespace detail {

inline DistanceReport jaccard_report(const TileSet& t, const TileSet& u,
                                     const TileSet& b) {
  // Surfaces 0/1 conflicts the same way a fit would.
  const TileSet all = unite(t, u, b);
  std::vector<double> p(all.dims().size(), 0.5);
  std::vector<std::uint8_t> fixed(all.dims().size(), 0);
  clamp_exact(all, p, fixed);

  const auto mt = coverage_mask(t);
  const auto mu = coverage_mask(u);
  const auto mb = coverage_mask(b);
  std::size_t only_t = 0, only_u = 0, both = 0;
  for (std::size_t k = 0; k < mt.size(); ++k) {
    if (mb[k]) continue;
    if (mt[k] && mu[k]) {
      ++both;
    } else if (mt[k]) {
      ++only_t;
    } else if (mu[k]) {
      ++only_u;
    }
  }
  DistanceReport r;
  r.used_jaccard_path = true;
  const double ln2 = std::numbers::ln2;
  r.kl_m_t = static_cast<double>(only_u) * ln2;
  r.kl_m_u = static_cast<double>(only_t) * ln2;
  const std::size_t either = only_t + only_u + both;
  r.kl_m_b = static_cast<double>(either) * ln2;
  r.value = either == 0 ? 1.0
                        : static_cast<double>(only_t + only_u) /
                              static_cast<double>(either);
  return r;
}

}  // namespace detail

inline DistanceReport distance(const TileSet& t, const TileSet& u,
                               const TileSet& b, const FitOptions& opts = {},
                               DistancePath path = DistancePath::kAuto) {
  if (t.dims() != u.dims() || t.dims() != b.dims()) {
    throw Error(ErrorCode::kDimMismatch, "tile sets differ in dims");
  }
  if (path == DistancePath::kAuto && t.all_exact() && u.all_exact() &&
      b.all_exact()) {
    return detail::jaccard_report(t, u, b);
  }
  // Canonical tile order makes the joint fit, and hence d, symmetric in t, u.
  const TileSet all = canonical_order(unite(t, u, b));
  EntryModel joint = [&] {
    try {
      return fit(all, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoConvergence) throw;
      throw Error(ErrorCode::kConsistencyError,
                  std::string("joint model did not converge: ") + e.what());
    }
  }();
  const EntryModel with_t = fit(unite(t, b), opts);
  const EntryModel with_u = fit(unite(u, b), opts);
  const EntryModel background = fit(b, opts);

  DistanceReport r;
  r.kl_m_t = kl(joint, with_t);
  r.kl_m_u = kl(joint, with_u);
  r.kl_m_b = kl(joint, background);
  r.value = r.kl_m_b > kZeroDivergence ? (r.kl_m_u + r.kl_m_t) / r.kl_m_b : 1.0;
  return r;
}

}  // namespace tilediv
