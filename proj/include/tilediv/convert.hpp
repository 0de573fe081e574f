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

// Conversion of mining results into tile sets.
//
// Bicluster and subspace-cluster results are already rectangles and are read
// directly as tile-set files; they need no converter here.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tilediv/core.hpp"
#include "tilediv/error.hpp"

namespace tilediv {

struct ItemsetResult {
  std::vector<std::vector<Id>> itemsets;  // column ids
  // Optional explicit row lists, one per itemset (fault-tolerant miners).
  std::optional<std::vector<std::vector<Id>>> supports;
};

struct ClusteringResult {
  std::vector<Id> labels;  // labels[i] is the cluster of row i+1, in [1, k]
  std::size_t k = 0;
};

enum class ClusterTiles {
  kSingleTile,  // one tile per cluster over all columns
  kPerColumn,   // one tile per (cluster, column)
};

enum class Axis { kColumns, kRows };

struct Conversion {
  TileSet tiles;
  // Itemsets without support or empty clusters that produced no tile.
  std::size_t skipped = 0;
};

namespace detail {

inline FreqTile annotated(Tile tile, const BinaryDataset& data) {
  const double alpha = empirical_frequency(tile, data);
  return FreqTile(std::move(tile), alpha);
}

inline std::vector<Id> all_ids(std::size_t count) {
  std::vector<Id> ids(count);
  for (std::size_t k = 0; k < count; ++k) ids[k] = static_cast<Id>(k + 1);
  return ids;
}

}  // namespace detail

// Each itemset becomes its supporting rows x its columns. Without explicit
// supports the rows containing every item are used, giving exact tiles.
inline Conversion itemsets_to_tiles(const ItemsetResult& r,
                                    const BinaryDataset& data) {
  if (r.supports && r.supports->size() != r.itemsets.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "support list count does not match itemset count");
  }
  Conversion out{TileSet(data.dims()), 0};
  for (std::size_t k = 0; k < r.itemsets.size(); ++k) {
    const auto& items = r.itemsets[k];
    if (items.empty()) {
      throw Error(ErrorCode::kInvalidTile, "empty itemset", k);
    }
    for (Id c : items) {
      if (c < 1 || c > data.m()) {
        throw Error(ErrorCode::kOutOfBounds,
                    "column id " + std::to_string(c) + " outside [1, " +
                        std::to_string(data.m()) + "]",
                    k);
      }
    }
    std::vector<Id> rows;
    if (r.supports) {
      rows = (*r.supports)[k];
      for (Id i : rows) {
        if (i < 1 || i > data.n()) {
          throw Error(ErrorCode::kOutOfBounds,
                      "row id " + std::to_string(i) + " outside [1, " +
                          std::to_string(data.n()) + "]",
                      k);
        }
      }
    } else {
      for (Id i = 1; i <= data.n(); ++i) {
        bool all = true;
        for (Id c : items) all = all && data(i, c);
        if (all) rows.push_back(i);
      }
    }
    if (rows.empty()) {
      ++out.skipped;
      continue;
    }
    out.tiles.add(detail::annotated(Tile(std::move(rows), items), data));
  }
  return out;
}

inline Conversion clustering_to_tiles(const ClusteringResult& r,
                                      const BinaryDataset& data,
                                      ClusterTiles mode) {
  if (r.labels.size() != data.n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "clustering labels " + std::to_string(r.labels.size()) +
                    " rows, data has " + std::to_string(data.n()));
  }
  std::vector<std::vector<Id>> members(r.k);
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const Id label = r.labels[i];
    if (label < 1 || label > r.k) {
      throw Error(ErrorCode::kOutOfBounds,
                  "cluster id " + std::to_string(label) + " of row " +
                      std::to_string(i + 1) + " outside [1, " +
                      std::to_string(r.k) + "]");
    }
    members[label - 1].push_back(static_cast<Id>(i + 1));
  }
  Conversion out{TileSet(data.dims()), 0};
  for (const auto& rows : members) {
    if (rows.empty()) {
      ++out.skipped;
      continue;
    }
    if (mode == ClusterTiles::kSingleTile) {
      out.tiles.add(detail::annotated(Tile(rows, detail::all_ids(data.m())), data));
    } else {
      for (Id c = 1; c <= data.m(); ++c) {
        out.tiles.add(detail::annotated(Tile(rows, {c}), data));
      }
    }
  }
  return out;
}

// One tile over the whole grid carrying the global density.
inline TileSet density_tile(const BinaryDataset& data) {
  TileSet out(data.dims());
  out.add(detail::annotated(
      Tile(detail::all_ids(data.n()), detail::all_ids(data.m())), data));
  return out;
}

inline TileSet margin_tiles(const BinaryDataset& data, Axis axis) {
  TileSet out(data.dims());
  if (axis == Axis::kColumns) {
    const auto rows = detail::all_ids(data.n());
    for (Id c = 1; c <= data.m(); ++c) {
      out.add(detail::annotated(Tile(rows, {c}), data));
    }
  } else {
    const auto cols = detail::all_ids(data.m());
    for (Id i = 1; i <= data.n(); ++i) {
      out.add(detail::annotated(Tile({i}, cols), data));
    }
  }
  return out;
}

enum class BackgroundPreset { kNone, kDensity, kColumns, kRows, kColumnsRows };

inline std::optional<BackgroundPreset> parse_background_preset(
    std::string_view name) {
  if (name == "none") return BackgroundPreset::kNone;
  if (name == "density") return BackgroundPreset::kDensity;
  if (name == "columns") return BackgroundPreset::kColumns;
  if (name == "rows") return BackgroundPreset::kRows;
  if (name == "columns+rows") return BackgroundPreset::kColumnsRows;
  return std::nullopt;
}

inline TileSet background_tiles(BackgroundPreset preset,
                                const BinaryDataset& data) {
  switch (preset) {
    case BackgroundPreset::kNone:
      return TileSet(data.dims());
    case BackgroundPreset::kDensity:
      return density_tile(data);
    case BackgroundPreset::kColumns:
      return margin_tiles(data, Axis::kColumns);
    case BackgroundPreset::kRows:
      return margin_tiles(data, Axis::kRows);
    case BackgroundPreset::kColumnsRows:
      return unite(margin_tiles(data, Axis::kColumns),
                   margin_tiles(data, Axis::kRows));
  }
  return TileSet(data.dims());
}

}  // namespace tilediv
