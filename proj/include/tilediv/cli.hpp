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

// Command runner behind the `tilediv` executable. Kept separate from argument
// parsing so every subcommand can be driven from tests.
//
// Exit status: 0 on success, 2 on input errors, 3 on numerical failures.

#pragma once

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tilediv/convert.hpp"
#include "tilediv/core.hpp"
#include "tilediv/divergence.hpp"
#include "tilediv/error.hpp"
#include "tilediv/io.hpp"
#include "tilediv/maxent.hpp"
#include "tilediv/rank.hpp"
#include "tilediv/redescribe.hpp"

namespace tilediv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalError = 3;

enum class Command {
  kConvertItemsets,
  kConvertClustering,
  kConvertMargins,
  kConvertDensity,
  kDistance,
  kDistanceMatrix,
  kRedescribe,
  kRank,
  kModelDump,
};

enum class OutputFormat { kTsv, kJsonl };

struct RunConfig {
  Command command = Command::kDistance;
  std::string data;                     // --data
  std::string input;                    // convert itemsets/clustering --input
  std::string left, right;              // distance
  std::vector<std::string> tile_files;  // distance-matrix
  std::string target, candidates;       // redescribe
  std::string tiles;                    // rank, model dump
  std::string background = "none";      // preset name or tile-set file
  ClusterTiles cluster_mode = ClusterTiles::kSingleTile;
  Axis axis = Axis::kColumns;
  RankMode rank_mode = RankMode::kHeuristic;
  FitOptions fit;
  OutputFormat format = OutputFormat::kTsv;
  std::string output;  // empty: standard output
};

namespace detail {

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

// Loads --data (if any) and the listed tile files, binding all of them to a
// common set of dims: the dataset's, or else the smallest grid holding every
// tile.
class Inputs {
 public:
  Inputs(const RunConfig& cfg, const std::vector<std::string>& tile_paths) {
    if (!cfg.data.empty()) data_ = io::read_dataset_file(cfg.data);
    const bool preset = parse_background_preset(cfg.background).has_value();
    std::vector<std::string> paths = tile_paths;
    if (!preset) paths.push_back(cfg.background);
    std::vector<std::vector<io::TileRecord>> records;
    Dims bound{0, 0};
    for (const auto& path : paths) {
      records.push_back(io::read_tile_records_file(path));
      const Dims d = io::bounding_dims(records.back());
      bound.rows = std::max(bound.rows, d.rows);
      bound.cols = std::max(bound.cols, d.cols);
    }
    if (data_) {
      dims_ = data_->dims();
    } else {
      require(bound.rows > 0, "no tiles given and no --data to size the grid");
      dims_ = bound;
    }
    const BinaryDataset* data = data_ ? &*data_ : nullptr;
    for (std::size_t k = 0; k < tile_paths.size(); ++k) {
      sets_.push_back(io::to_tile_set(records[k], dims_, data, paths[k]));
    }
    if (preset) {
      const auto which = *parse_background_preset(cfg.background);
      if (which == BackgroundPreset::kNone) {
        background_.emplace(dims_);
      } else {
        require(data != nullptr,
                "background preset '" + cfg.background + "' needs --data");
        background_ = background_tiles(which, *data);
      }
    } else {
      background_ = io::to_tile_set(records.back(), dims_, data, paths.back());
    }
  }

  const TileSet& set(std::size_t k) const { return sets_.at(k); }
  const TileSet& background() const { return *background_; }

 private:
  std::optional<BinaryDataset> data_;
  Dims dims_;
  std::vector<TileSet> sets_;
  std::optional<TileSet> background_;
};

inline BinaryDataset load_data(const RunConfig& cfg) {
  require(!cfg.data.empty(), "this command needs --data");
  return io::read_dataset_file(cfg.data);
}

inline std::vector<std::vector<Id>> read_id_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, path + ": cannot open file");
  std::vector<std::vector<Id>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream tokens(line);
    std::vector<Id> ids;
    std::string tok;
    while (tokens >> tok) ids.push_back(io::detail::parse_id(tok, path, lineno));
    if (!ids.empty()) out.push_back(std::move(ids));
  }
  return out;
}

inline ClusteringResult read_clustering(const std::string& path,
                                        std::size_t n) {
  ClusteringResult r;
  r.labels.assign(n, 0);
  const auto lines = read_id_lines(path);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].size() != 2) {
      throw Error(ErrorCode::kParseError,
                  path + ": expected \"row cluster\" pairs");
    }
    const Id row = lines[k][0];
    const Id cluster = lines[k][1];
    if (row > n) {
      throw Error(ErrorCode::kParseError,
                  path + ": row id " + std::to_string(row) + " exceeds n");
    }
    r.labels[row - 1] = cluster;
    r.k = std::max<std::size_t>(r.k, cluster);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (r.labels[i] == 0) {
      throw Error(ErrorCode::kParseError,
                  path + ": row " + std::to_string(i + 1) + " has no cluster");
    }
  }
  return r;
}

inline nlohmann::json tile_json(const FreqTile& t) { return io::to_json(t); }

inline void run_convert(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  const BinaryDataset data = load_data(cfg);
  Conversion conv{TileSet(data.dims()), 0};
  switch (cfg.command) {
    case Command::kConvertItemsets: {
      require(!cfg.input.empty(), "convert itemsets needs --input");
      conv = itemsets_to_tiles({read_id_lines(cfg.input), std::nullopt}, data);
      break;
    }
    case Command::kConvertClustering: {
      require(!cfg.input.empty(), "convert clustering needs --input");
      conv = clustering_to_tiles(read_clustering(cfg.input, data.n()), data,
                                 cfg.cluster_mode);
      break;
    }
    case Command::kConvertMargins:
      conv.tiles = margin_tiles(data, cfg.axis);
      break;
    default:
      conv.tiles = density_tile(data);
      break;
  }
  if (conv.skipped) {
    err << "warning: skipped " << conv.skipped << " empty result(s)\n";
  }
  io::write_tile_set(out, conv.tiles);
}

inline void run_distance(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.left.empty() && !cfg.right.empty(),
          "distance needs --left and --right");
  Inputs in(cfg, {cfg.left, cfg.right});
  const DistanceReport r =
      distance(in.set(0), in.set(1), in.background(), cfg.fit);
  if (cfg.format == OutputFormat::kJsonl) {
    nlohmann::json j{{"distance", r.value},
                     {"kl_m_t", r.kl_m_t},
                     {"kl_m_u", r.kl_m_u},
                     {"kl_m_b", r.kl_m_b},
                     {"jaccard_path", r.used_jaccard_path}};
    out << j.dump() << '\n';
  } else {
    out << fixed6(r.value) << '\n';
  }
}

// Pairs are spread over worker threads; output order follows input order.
inline void run_distance_matrix(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.tile_files.empty(), "distance-matrix needs tile-set files");
  Inputs in(cfg, cfg.tile_files);
  const std::size_t k = cfg.tile_files.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) pairs.emplace_back(a, b);
  }
  std::vector<double> value(k * k, 0.0);
  std::vector<std::exception_ptr> failure(pairs.size());
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                               pairs.size()));
  auto work = [&](std::size_t w) {
    for (std::size_t q = w; q < pairs.size(); q += workers) {
      const auto [a, b] = pairs[q];
      try {
        const double d =
            distance(in.set(a), in.set(b), in.background(), cfg.fit).value;
        value[a * k + b] = d;
        value[b * k + a] = d;
      } catch (...) {
        failure[q] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failure) {
    if (f) std::rethrow_exception(f);
  }

  if (cfg.format == OutputFormat::kJsonl) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        nlohmann::json j{{"left", cfg.tile_files[a]},
                         {"right", cfg.tile_files[b]},
                         {"distance", value[a * k + b]}};
        out << j.dump() << '\n';
      }
    }
    return;
  }
  for (const auto& name : cfg.tile_files) out << '\t' << name;
  out << '\n';
  for (std::size_t a = 0; a < k; ++a) {
    out << cfg.tile_files[a];
    for (std::size_t b = 0; b < k; ++b) out << '\t' << fixed6(value[a * k + b]);
    out << '\n';
  }
}

inline void run_redescribe(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.target.empty() && !cfg.candidates.empty(),
          "redescribe needs --target and --candidates");
  Inputs in(cfg, {cfg.target, cfg.candidates});
  const Redescription r =
      fruits(in.set(0), in.set(1), in.background(), cfg.fit);
  for (std::size_t s = 0; s < r.selected.size(); ++s) {
    nlohmann::json j{{"step", s + 1},
                     {"tile", tile_json(r.selected[s])},
                     {"distance", r.trace[s]}};
    out << j.dump() << '\n';
  }
}

inline void run_rank(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.tiles.empty(), "rank needs --tiles");
  Inputs in(cfg, {cfg.tiles});
  const Ranking r = fitamin(in.set(0), in.background(), cfg.rank_mode, cfg.fit);
  for (std::size_t s = 0; s < r.order.size(); ++s) {
    nlohmann::json j{{"step", s + 1},
                     {"tile", tile_json(r.order[s])},
                     {"distance_after", r.distances[s]},
                     {"gain", r.gains[s]}};
    out << j.dump() << '\n';
  }
}

inline void run_model_dump(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.tiles.empty(), "model dump needs --tiles");
  Inputs in(cfg, {cfg.tiles});
  const EntryModel model = fit(unite(in.set(0), in.background()), cfg.fit);
  io::write_model_tsv(out, model);
}

inline void dispatch(const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  switch (cfg.command) {
    case Command::kConvertItemsets:
    case Command::kConvertClustering:
    case Command::kConvertMargins:
    case Command::kConvertDensity:
      run_convert(cfg, out, err);
      return;
    case Command::kDistance:
      run_distance(cfg, out);
      return;
    case Command::kDistanceMatrix:
      run_distance_matrix(cfg, out);
      return;
    case Command::kRedescribe:
      run_redescribe(cfg, out);
      return;
    case Command::kRank:
      run_rank(cfg, out);
      return;
    case Command::kModelDump:
      run_model_dump(cfg, out);
      return;
  }
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.fit.validate();
    if (cfg.output.empty()) {
      detail::dispatch(cfg, out, err);
    } else {
      // Buffer so a failed run leaves no partial file behind.
      std::ostringstream buffer;
      detail::dispatch(cfg, buffer, err);
      std::ofstream file(cfg.output);
      if (!file) {
        err << "error: cannot write " << cfg.output << '\n';
        return kExitInputError;
      }
      file << buffer.str();
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumericalError : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace tilediv::cli
