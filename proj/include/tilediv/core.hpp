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

// Binary datasets, tiles and tile sets.
//
// All ids are 1-based: row ids live in [1, n] and column ids in [1, m].
// Storage is row-major; the linear index of entry (i, j) is (i-1)*m + (j-1).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tilediv/error.hpp"

namespace tilediv {

using Id = std::uint32_t;

struct Dims {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const noexcept { return rows * cols; }
  bool operator==(const Dims&) const = default;
};

inline std::string to_string(Dims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

struct Entry {
  Id row = 0;
  Id col = 0;

  auto operator<=>(const Entry&) const = default;
};

class BinaryDataset {
 public:
  // All-zero dataset.
  BinaryDataset(std::size_t n, std::size_t m) : dims_{n, m} {
    if (n == 0 || m == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dataset must have at least one row and one column");
    }
    cells_.assign(n * m, 0);
  }

  // `ones[i]` lists the 1-based column ids set in row i+1. Missing trailing
  // rows are all-zero.
  static BinaryDataset from_rows(std::size_t n, std::size_t m,
                                 const std::vector<std::vector<Id>>& ones) {
    BinaryDataset data(n, m);
    if (ones.size() > n) {
      throw Error(ErrorCode::kOutOfBounds,
                  "got " + std::to_string(ones.size()) + " rows, expected " +
                      std::to_string(n));
    }
    for (std::size_t r = 0; r < ones.size(); ++r) {
      for (Id c : ones[r]) {
        if (c < 1 || c > m) {
          throw Error(ErrorCode::kOutOfBounds,
                      "column id " + std::to_string(c) + " in row " +
                          std::to_string(r + 1) + " outside [1, " +
                          std::to_string(m) + "]");
        }
        data.cells_[r * m + (c - 1)] = 1;
      }
    }
    return data;
  }

  // Row-major dense 0/1 cells.
  static BinaryDataset from_dense(std::size_t n, std::size_t m,
                                  std::vector<std::uint8_t> cells) {
    BinaryDataset data(n, m);
    if (cells.size() != n * m) {
      throw Error(ErrorCode::kDimMismatch, "dense cell count does not match");
    }
    for (auto& v : cells) {
      if (v > 1) throw Error(ErrorCode::kInvalidArgument, "entries must be 0/1");
    }
    data.cells_ = std::move(cells);
    return data;
  }

  std::size_t n() const noexcept { return dims_.rows; }
  std::size_t m() const noexcept { return dims_.cols; }
  Dims dims() const noexcept { return dims_; }

  bool operator()(Id i, Id j) const {
    check(i, j);
    return cells_[index(i, j)] != 0;
  }

  std::size_t index(Id i, Id j) const noexcept {
    return (static_cast<std::size_t>(i) - 1) * dims_.cols + (j - 1);
  }

  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  std::size_t count_ones() const {
    return static_cast<std::size_t>(
        std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
  }

  // 1-based column ids of the ones in row i.
  std::vector<Id> row_ones(Id i) const {
    check(i, 1);
    std::vector<Id> out;
    for (std::size_t j = 0; j < dims_.cols; ++j) {
      if (cells_[index(i, 1) + j]) out.push_back(static_cast<Id>(j + 1));
    }
    return out;
  }

  bool operator==(const BinaryDataset&) const = default;

 private:
  void check(Id i, Id j) const {
    if (i < 1 || i > dims_.rows || j < 1 || j > dims_.cols) {
      throw Error(ErrorCode::kOutOfBounds,
                  "entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside " + to_string(dims_));
    }
  }

  Dims dims_;
  std::vector<std::uint8_t> cells_;
};

// A rectangle rows x cols. Ids are sorted and duplicate-free after
// construction.
class Tile {
 public:
  Tile(std::vector<Id> rows, std::vector<Id> cols)
      : rows_(normalize(std::move(rows), "rows")),
        cols_(normalize(std::move(cols), "cols")) {}

  // Inclusive id ranges.
  static Tile range(Id row_first, Id row_last, Id col_first, Id col_last) {
    return Tile(iota(row_first, row_last), iota(col_first, col_last));
  }

  const std::vector<Id>& rows() const noexcept { return rows_; }
  const std::vector<Id>& cols() const noexcept { return cols_; }
  std::size_t area() const noexcept { return rows_.size() * cols_.size(); }

  bool fits(Dims dims) const noexcept {
    return rows_.back() <= dims.rows && cols_.back() <= dims.cols;
  }

  bool contains(Id i, Id j) const {
    return std::binary_search(rows_.begin(), rows_.end(), i) &&
           std::binary_search(cols_.begin(), cols_.end(), j);
  }

  // Calls f(i, j) for every entry in row-major order.
  template <typename F>
  void for_each_entry(F&& f) const {
    for (Id i : rows_) {
      for (Id j : cols_) f(i, j);
    }
  }

  // Row-major linear indices of the area within `dims`.
  std::vector<std::size_t> linear_indices(Dims dims) const {
    std::vector<std::size_t> out;
    out.reserve(area());
    for_each_entry([&](Id i, Id j) {
      out.push_back((static_cast<std::size_t>(i) - 1) * dims.cols + (j - 1));
    });
    return out;
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(area());
    for_each_entry([&](Id i, Id j) { out.push_back({i, j}); });
    return out;
  }

  bool operator==(const Tile&) const = default;

 private:
  static std::vector<Id> iota(Id first, Id last) {
    if (first > last) {
      throw Error(ErrorCode::kInvalidTile,
                  "empty range " + std::to_string(first) + "-" +
                      std::to_string(last));
    }
    std::vector<Id> out;
    for (Id v = first; v <= last; ++v) out.push_back(v);
    return out;
  }

  static std::vector<Id> normalize(std::vector<Id> ids, const char* what) {
    if (ids.empty()) {
      throw Error(ErrorCode::kInvalidTile,
                  std::string("tile has no ") + what);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.front() == 0) {
      throw Error(ErrorCode::kInvalidTile,
                  std::string("tile ") + what + " contain id 0; ids are 1-based");
    }
    return ids;
  }

  std::vector<Id> rows_;
  std::vector<Id> cols_;
};

class FreqTile {
 public:
  FreqTile(Tile tile, double alpha) : tile_(std::move(tile)), alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
      throw Error(ErrorCode::kInvalidFrequency,
                  "frequency " + std::to_string(alpha) + " outside [0, 1]");
    }
  }

  const Tile& tile() const noexcept { return tile_; }
  double alpha() const noexcept { return alpha_; }
  bool exact() const noexcept { return alpha_ == 0.0 || alpha_ == 1.0; }

  bool operator==(const FreqTile&) const = default;

 private:
  Tile tile_;
  double alpha_;
};

// Ordered collection of frequency tiles over common dimensions. Duplicates
// and overlaps are allowed; the same rectangle given two different exact
// frequencies is rejected.
class TileSet {
 public:
  explicit TileSet(Dims dims) : dims_(dims) {
    if (dims.rows == 0 || dims.cols == 0) {
      throw Error(ErrorCode::kInvalidArgument, "tile set dims must be positive");
    }
  }

  TileSet(Dims dims, std::vector<FreqTile> tiles) : TileSet(dims) {
    for (auto& t : tiles) add(std::move(t));
  }

  void add(FreqTile tile) {
    if (!tile.tile().fits(dims_)) {
      throw Error(ErrorCode::kOutOfBounds,
                  "tile does not fit within " + to_string(dims_),
                  tiles_.size());
    }
    if (tile.exact()) {
      for (const auto& other : tiles_) {
        if (other.exact() && other.alpha() != tile.alpha() &&
            other.tile() == tile.tile()) {
          throw Error(ErrorCode::kConflictingExactTiles,
                      "same tile given frequencies 0 and 1", tiles_.size());
        }
      }
    }
    tiles_.push_back(std::move(tile));
  }

  Dims dims() const noexcept { return dims_; }
  const std::vector<FreqTile>& tiles() const noexcept { return tiles_; }
  std::size_t size() const noexcept { return tiles_.size(); }
  bool empty() const noexcept { return tiles_.empty(); }
  const FreqTile& operator[](std::size_t k) const { return tiles_.at(k); }
  auto begin() const noexcept { return tiles_.begin(); }
  auto end() const noexcept { return tiles_.end(); }

  bool contains(const FreqTile& t) const {
    return std::find(tiles_.begin(), tiles_.end(), t) != tiles_.end();
  }

  bool all_exact() const {
    return std::all_of(tiles_.begin(), tiles_.end(),
                       [](const FreqTile& t) { return t.exact(); });
  }

  bool operator==(const TileSet&) const = default;

 private:
  Dims dims_;
  std::vector<FreqTile> tiles_;
};

// Set union preserving first-occurrence order: the tiles of `a`, then those
// of `b` not already present.
inline TileSet unite(const TileSet& a, const TileSet& b) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorCode::kDimMismatch, "cannot unite " + to_string(a.dims()) +
                                             " and " + to_string(b.dims()));
  }
  TileSet out(a.dims());
  for (const auto& t : a) {
    if (!out.contains(t)) out.add(t);
  }
  for (const auto& t : b) {
    if (!out.contains(t)) out.add(t);
  }
  return out;
}

inline TileSet unite(const TileSet& a, const TileSet& b, const TileSet& c) {
  return unite(unite(a, b), c);
}

inline TileSet with_tile(const TileSet& ts, const FreqTile& t) {
  TileSet one(ts.dims());
  one.add(t);
  return unite(ts, one);
}

// Same tiles sorted by (rows, cols, alpha).
inline TileSet canonical_order(const TileSet& ts) {
  std::vector<FreqTile> tiles = ts.tiles();
  std::sort(tiles.begin(), tiles.end(),
            [](const FreqTile& x, const FreqTile& y) {
              if (x.tile().rows() != y.tile().rows()) {
                return x.tile().rows() < y.tile().rows();
              }
              if (x.tile().cols() != y.tile().cols()) {
                return x.tile().cols() < y.tile().cols();
              }
              return x.alpha() < y.alpha();
            });
  return TileSet(ts.dims(), std::move(tiles));
}

// Number of 1-entries of `data` inside the tile.
inline std::size_t count_ones(const Tile& tile, const BinaryDataset& data) {
  if (!tile.fits(data.dims())) {
    throw Error(ErrorCode::kOutOfBounds,
                "tile does not fit within " + to_string(data.dims()));
  }
  std::size_t ones = 0;
  const auto& cells = data.cells();
  tile.for_each_entry([&](Id i, Id j) { ones += cells[data.index(i, j)]; });
  return ones;
}

inline double empirical_frequency(const Tile& tile, const BinaryDataset& data) {
  return static_cast<double>(count_ones(tile, data)) /
         static_cast<double>(tile.area());
}

// Row-major 0/1 mask of entries covered by at least one tile.
inline std::vector<std::uint8_t> coverage_mask(const TileSet& ts) {
  std::vector<std::uint8_t> mask(ts.dims().size(), 0);
  for (const auto& t : ts) {
    for (std::size_t idx : t.tile().linear_indices(ts.dims())) mask[idx] = 1;
  }
  return mask;
}

// All entries covered by the tile set, sorted row-major.
inline std::vector<Entry> area_union(const TileSet& ts) {
  const auto mask = coverage_mask(ts);
  const std::size_t m = ts.dims().cols;
  std::vector<Entry> out;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k]) {
      out.push_back({static_cast<Id>(k / m + 1), static_cast<Id>(k % m + 1)});
    }
  }
  return out;
}

// Replaces every frequency by the empirical frequency in `data`.
inline TileSet annotate(const TileSet& ts, const BinaryDataset& data) {
  if (ts.dims() != data.dims()) {
    throw Error(ErrorCode::kDimMismatch, "tile set is " + to_string(ts.dims()) +
                                             ", data is " +
                                             to_string(data.dims()));
  }
  TileSet out(ts.dims());
  for (const auto& t : ts) {
    out.add(FreqTile(t.tile(), empirical_frequency(t.tile(), data)));
  }
  return out;
}

}  // namespace tilediv
