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

// Maximum entropy distributions over n x m binary datasets constrained by
// tile frequencies.
//
// The maximum entropy distribution factorizes into independent Bernoulli
// entries, so a fitted model is just the matrix of P[(i,j) = 1]. Entries
// whose value is determined by the constraints (exact tiles, or noisy tiles
// whose frequency can only be met by pinning entries at 0 or 1) are clamped
// and recorded in the fixed mask. Everything else is fitted by iterative
// scaling: each noisy tile in turn multiplies the odds of its free entries by
// the factor x that makes the tile's expected frequency hit its target.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tilediv/core.hpp"
#include "tilediv/detail/simplex.hpp"
#include "tilediv/error.hpp"

namespace tilediv {

struct FitOptions {
  // Maximum permitted |freq(T; model) - alpha_T| over all tiles.
  double tolerance = 1e-6;
  std::size_t max_sweeps = 10000;
  // Geometric growth of the [1/g^k, g^k] root bracket.
  double bracket_growth = 4.0;

  void validate() const {
    if (!(tolerance > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
    }
    if (max_sweeps < 1) {
      throw Error(ErrorCode::kInvalidArgument, "max_sweeps must be >= 1");
    }
    if (!(bracket_growth > 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "bracket_growth must exceed 1");
    }
  }
};

class EntryModel {
 public:
  EntryModel(TileSet fitted_for, std::vector<double> p,
             std::vector<std::uint8_t> fixed, double residual = 0.0,
             std::size_t sweeps = 0)
      : fitted_for_(std::move(fitted_for)),
        p_(std::move(p)),
        fixed_(std::move(fixed)),
        residual_(residual),
        sweeps_(sweeps) {
    const std::size_t size = fitted_for_.dims().size();
    if (p_.size() != size || fixed_.size() != size) {
      throw Error(ErrorCode::kDimMismatch, "model matrices do not match dims");
    }
    for (std::size_t k = 0; k < size; ++k) {
      if (!(p_[k] >= 0.0 && p_[k] <= 1.0)) {
        throw Error(ErrorCode::kInvalidFrequency, "probability outside [0, 1]");
      }
      if (fixed_[k] && p_[k] != 0.0 && p_[k] != 1.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "fixed entries must have probability 0 or 1");
      }
    }
  }

  // The model of the empty tile set: every entry is a fair coin.
  static EntryModel uniform(Dims dims) {
    return EntryModel(TileSet(dims), std::vector<double>(dims.size(), 0.5),
                      std::vector<std::uint8_t>(dims.size(), 0));
  }

  Dims dims() const noexcept { return fitted_for_.dims(); }
  const TileSet& fitted_for() const noexcept { return fitted_for_; }
  const std::vector<double>& probabilities() const noexcept { return p_; }
  const std::vector<std::uint8_t>& fixed_mask() const noexcept {
    return fixed_;
  }
  double residual() const noexcept { return residual_; }
  std::size_t sweeps() const noexcept { return sweeps_; }

  // P[(i,j) = 1], 1-based.
  double p(Id i, Id j) const { return p_.at(index(i, j)); }
  bool fixed(Id i, Id j) const { return fixed_.at(index(i, j)) != 0; }

 private:
  std::size_t index(Id i, Id j) const {
    const Dims d = dims();
    if (i < 1 || i > d.rows || j < 1 || j > d.cols) {
      throw Error(ErrorCode::kOutOfBounds, "entry outside model dims");
    }
    return (static_cast<std::size_t>(i) - 1) * d.cols + (j - 1);
  }

  TileSet fitted_for_;
  std::vector<double> p_;
  std::vector<std::uint8_t> fixed_;
  double residual_;
  std::size_t sweeps_;
};

// Probability of a 1 after scaling the odds of probability y by x.
inline double bernoulli_update(double y, double x) {
  if (y <= 0.0 || y >= 1.0) return y;
  return x * y / (1.0 - y * (1.0 - x));
}

inline double model_frequency(const Tile& tile, const EntryModel& model) {
  if (!tile.fits(model.dims())) {
    throw Error(ErrorCode::kOutOfBounds,
                "tile does not fit within " + to_string(model.dims()));
  }
  const auto& p = model.probabilities();
  const std::size_t m = model.dims().cols;
  double sum = 0.0;
  tile.for_each_entry([&](Id i, Id j) {
    sum += p[(static_cast<std::size_t>(i) - 1) * m + (j - 1)];
  });
  return sum / static_cast<double>(tile.area());
}

// Entropy of a single Bernoulli(p) in nats.
inline double bernoulli_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

// Entropy of the model's distribution over datasets, in nats.
inline double entropy(const EntryModel& model) {
  double h = 0.0;
  for (double p : model.probabilities()) h += bernoulli_entropy(p);
  return h;
}

namespace detail {

// Above this many entry classes the linear-programming pass is skipped and
// only per-tile bound propagation is used.
inline constexpr std::size_t kMaxLpClasses = 400;
inline constexpr double kBoundEps = 1e-9;

struct NoisyTile {
  std::size_t index;  // position in the tile set
  double alpha;
  std::size_t area;
  std::vector<std::size_t> cells;  // all linear indices of the area
  std::vector<std::size_t> free;   // non-fixed subset, filled before scaling
  double fixed_ones = 0.0;
};

// Clamps entries of exact tiles. Throws on 0/1 conflicts.
inline void clamp_exact(const TileSet& ts, std::vector<double>& p,
                        std::vector<std::uint8_t>& fixed) {
  const Dims dims = ts.dims();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const FreqTile& t = ts[k];
    if (!t.exact()) continue;
    for (std::size_t idx : t.tile().linear_indices(dims)) {
      if (fixed[idx] && p[idx] != t.alpha()) {
        const std::size_t m = dims.cols;
        throw Error(ErrorCode::kConflictingExactTiles,
                    "entry (" + std::to_string(idx / m + 1) + "," +
                        std::to_string(idx % m + 1) +
                        ") is forced to both 0 and 1",
                    k);
      }
      p[idx] = t.alpha();
      fixed[idx] = 1;
    }
  }
}

inline void pin(const std::vector<std::size_t>& cells, double value,
                std::vector<double>& p, std::vector<std::uint8_t>& fixed) {
  for (std::size_t idx : cells) {
    if (!fixed[idx]) {
      p[idx] = value;
      fixed[idx] = 1;
    }
  }
}

// Checks each noisy tile's target against the range attainable given its
// fixed entries, pinning the free entries when the target sits on a bound.
// Repeats until nothing changes, since pins can tighten other tiles.
inline void propagate_tile_bounds(const std::vector<NoisyTile>& tiles,
                                  std::vector<double>& p,
                                  std::vector<std::uint8_t>& fixed) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : tiles) {
      std::size_t ones = 0, zeros = 0;
      for (std::size_t idx : t.cells) {
        if (!fixed[idx]) continue;
        if (p[idx] == 1.0) {
          ++ones;
        } else {
          ++zeros;
        }
      }
      const double area = static_cast<double>(t.area);
      const double target = t.alpha * area;
      const double lo = static_cast<double>(ones);
      const double hi = area - static_cast<double>(zeros);
      const double slack = kBoundEps * area;
      if (target < lo - slack || target > hi + slack) {
        throw Error(ErrorCode::kInfeasibleTile,
                    "frequency " + std::to_string(t.alpha) +
                        " outside attainable range [" +
                        std::to_string(lo / area) + ", " +
                        std::to_string(hi / area) + "]",
                    t.index);
      }
      if (ones + zeros == t.area) continue;
      if (target <= lo + slack) {
        pin(t.cells, 0.0, p, fixed);
        changed = true;
      } else if (target >= hi - slack) {
        pin(t.cells, 1.0, p, fixed);
        changed = true;
      }
    }
  }
}

// Finds free entries that every feasible assignment pins at 0 or 1 when the
// noisy tiles interact. Free entries are grouped into classes by the set of
// noisy tiles covering them; class value q_c in [0,1] is shared by symmetry.
// A class can be interior iff max min(q_c, 1 - q_c) > 0 over the polytope
//   sum_{c in T} |c| q_c = alpha_T |T| - fixed ones in T.
// One LP maximizing sum_c s_c, s_c <= q_c, s_c <= 1 - q_c, marks at least
// one interior class per round; when the optimum is zero the rest are pinned.
inline void pin_forced_classes(const std::vector<NoisyTile>& tiles,
                               std::vector<double>& p,
                               std::vector<std::uint8_t>& fixed) {
  std::map<std::vector<std::size_t>, std::size_t> class_of;
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::vector<std::size_t>> signature;
  {
    std::map<std::size_t, std::vector<std::size_t>> cover;
    for (std::size_t t = 0; t < tiles.size(); ++t) {
      for (std::size_t idx : tiles[t].cells) {
        if (!fixed[idx]) cover[idx].push_back(t);
      }
    }
    for (auto& [idx, sig] : cover) {
      auto [it, inserted] = class_of.emplace(sig, members.size());
      if (inserted) {
        members.emplace_back();
        signature.push_back(sig);
      }
      members[it->second].push_back(idx);
    }
  }
  const std::size_t num_classes = members.size();
  if (num_classes == 0 || num_classes > kMaxLpClasses) return;
  // Independent constraints are fully handled by per-tile bounds.
  const bool interacting =
      std::any_of(signature.begin(), signature.end(),
                  [](const auto& sig) { return sig.size() > 1; });
  if (!interacting) return;

  std::vector<std::size_t> rows_for_tile(tiles.size(), tiles.size());
  std::vector<double> rhs;
  std::vector<std::size_t> row_tile;
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    double ones = 0.0;
    bool has_free = false;
    for (std::size_t idx : tiles[t].cells) {
      if (fixed[idx]) {
        ones += p[idx];
      } else {
        has_free = true;
      }
    }
    if (!has_free) continue;
    const double area = static_cast<double>(tiles[t].area);
    rows_for_tile[t] = rhs.size();
    rhs.push_back(std::max(0.0, tiles[t].alpha - ones / area));
    row_tile.push_back(t);
  }

  // Variables: q_c, s_c, slack(s_c <= q_c), slack(s_c + q_c <= 1).
  const std::size_t eq_rows = rhs.size();
  const std::size_t num_rows = eq_rows + 2 * num_classes;
  const std::size_t num_vars = 4 * num_classes;
  auto q = [](std::size_t c) { return 4 * c; };
  auto s = [](std::size_t c) { return 4 * c + 1; };

  std::vector<std::uint8_t> undecided(num_classes, 1);
  for (;;) {
    detail::StandardFormLp lp(num_rows, num_vars);
    for (std::size_t r = 0; r < eq_rows; ++r) lp.b(r) = rhs[r];
    for (std::size_t c = 0; c < num_classes; ++c) {
      for (std::size_t t : signature[c]) {
        const std::size_t r = rows_for_tile[t];
        lp.a(r, q(c)) += static_cast<double>(members[c].size()) /
                         static_cast<double>(tiles[t].area);
      }
      const std::size_t r1 = eq_rows + 2 * c;
      lp.a(r1, s(c)) = 1.0;
      lp.a(r1, q(c)) = -1.0;
      lp.a(r1, 4 * c + 2) = 1.0;
      const std::size_t r2 = r1 + 1;
      lp.a(r2, s(c)) = 1.0;
      lp.a(r2, q(c)) = 1.0;
      lp.a(r2, 4 * c + 3) = 1.0;
      lp.b(r2) = 1.0;
      if (undecided[c]) lp.c(s(c)) = -1.0;
    }
    const auto result = lp.solve();
    if (result.status != detail::LpStatus::kOptimal) {
      throw Error(ErrorCode::kNoConvergence,
                  "noisy tile frequencies are mutually inconsistent");
    }
    if (-result.objective <= kBoundEps) {
      for (std::size_t c = 0; c < num_classes; ++c) {
        if (!undecided[c]) continue;
        pin(members[c], result.x[q(c)] > 0.5 ? 1.0 : 0.0, p, fixed);
      }
      return;
    }
    bool any_left = false;
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (undecided[c] && result.x[s(c)] > kBoundEps) undecided[c] = 0;
      any_left = any_left || undecided[c];
    }
    if (!any_left) return;
  }
}

// Solves sum_{e in free} u(p_e, x) = target for x and applies the update.
// The root is bracketed in log-space, t = ln x, then refined by regula falsi
// (Illinois variant) with bisection fallback.
inline void scale_tile(const NoisyTile& tile, std::vector<double>& p,
                       double target, double mass_tol, double growth) {
  auto excess = [&](double t) {
    const double x = std::exp(t);
    double g = 0.0;
    for (std::size_t idx : tile.free) g += bernoulli_update(p[idx], x);
    return g - target;
  };
  double f0 = excess(0.0);
  if (std::abs(f0) <= mass_tol) return;

  const double step = std::log(growth);
  double lo = 0.0, hi = 0.0, flo = f0, fhi = f0;
  constexpr int kMaxBracket = 256;
  int k = 1;
  for (; k <= kMaxBracket; ++k) {
    if (f0 < 0.0) {
      hi = k * step;
      fhi = excess(hi);
      if (fhi >= 0.0) break;
      lo = hi;
      flo = fhi;
    } else {
      lo = -k * step;
      flo = excess(lo);
      if (flo <= 0.0) break;
      hi = lo;
      fhi = flo;
    }
  }
  if (k > kMaxBracket) {
    throw Error(ErrorCode::kInfeasibleTile,
                "could not bracket the scaling factor", tile.index);
  }

  double t = lo;
  double ft = flo;
  int side = 0;
  for (int iter = 0; iter < 300; ++iter) {
    double next = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
    ft = excess(t);
    if (std::abs(ft) <= mass_tol) break;
    if (ft < 0.0) {
      lo = t;
      flo = ft;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = t;
      fhi = ft;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  const double x = std::exp(t);
  for (std::size_t idx : tile.free) p[idx] = bernoulli_update(p[idx], x);
}

inline double max_residual(const TileSet& ts, const std::vector<double>& p) {
  double worst = 0.0;
  const Dims dims = ts.dims();
  for (const auto& t : ts) {
    double sum = 0.0;
    t.tile().for_each_entry([&](Id i, Id j) {
      sum += p[(static_cast<std::size_t>(i) - 1) * dims.cols + (j - 1)];
    });
    const double freq = sum / static_cast<double>(t.tile().area());
    worst = std::max(worst, std::abs(freq - t.alpha()));
  }
  return worst;
}

}  // namespace detail

// Fits the maximum entropy model for the tile set. Noisy tiles are visited in
// tile-set order each sweep, so results are bit-reproducible.
inline EntryModel fit(const TileSet& ts, const FitOptions& opts = {}) {
  opts.validate();
  const Dims dims = ts.dims();
  std::vector<double> p(dims.size(), 0.5);
  std::vector<std::uint8_t> fixed(dims.size(), 0);
  detail::clamp_exact(ts, p, fixed);

  std::vector<detail::NoisyTile> noisy;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (ts[k].exact()) continue;
    noisy.push_back({k, ts[k].alpha(), ts[k].tile().area(),
                     ts[k].tile().linear_indices(dims), {}, 0.0});
  }
  if (!noisy.empty()) {
    detail::propagate_tile_bounds(noisy, p, fixed);
    detail::pin_forced_classes(noisy, p, fixed);
    detail::propagate_tile_bounds(noisy, p, fixed);
  }
  for (auto& t : noisy) {
    for (std::size_t idx : t.cells) {
      if (fixed[idx]) {
        t.fixed_ones += p[idx];
      } else {
        t.free.push_back(idx);
      }
    }
  }

  const double inner_tol = std::min(opts.tolerance / 10.0, 1e-13);
  std::size_t sweeps = 0;
  double residual = detail::max_residual(ts, p);
  while (residual > opts.tolerance) {
    if (sweeps == opts.max_sweeps) {
      throw Error(ErrorCode::kNoConvergence,
                  "residual " + std::to_string(residual) + " after " +
                      std::to_string(sweeps) +
                      " sweeps; noisy frequencies may be inconsistent");
    }
    for (const auto& t : noisy) {
      if (t.free.empty()) continue;
      const double area = static_cast<double>(t.area);
      detail::scale_tile(t, p, t.alpha * area - t.fixed_ones,
                         inner_tol * area, opts.bracket_growth);
    }
    ++sweeps;
    residual = detail::max_residual(ts, p);
  }
  return EntryModel(ts, std::move(p), std::move(fixed), residual, sweeps);
}

// Closed form for tile sets made only of exact tiles: covered entries take
// their tile's frequency, everything else is 1/2.
inline EntryModel exact_fastpath(const TileSet& ts) {
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!ts[k].exact()) {
      throw Error(ErrorCode::kNotExact, "fast path needs exact tiles", k);
    }
  }
  const Dims dims = ts.dims();
  std::vector<double> p(dims.size(), 0.5);
  std::vector<std::uint8_t> fixed(dims.size(), 0);
  detail::clamp_exact(ts, p, fixed);
  return EntryModel(ts, std::move(p), std::move(fixed));
}

}  // namespace tilediv
