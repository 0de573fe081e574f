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

// File formats.
//
// Dataset: first line "n m", then one line per row listing the 1-based column
// ids holding a 1, space separated. An empty line is an all-zero row; missing
// trailing rows are all-zero too.
//
// Tile set: one JSON object per line,
//   {"rows": [1, 2, "4-6"], "cols": ["1-5"], "freq": 0.5}
// where ids may be integers or "a-b" inclusive ranges and "freq" is optional
// (filled from a dataset when absent). Blank lines are skipped.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "tilediv/core.hpp"
#include "tilediv/error.hpp"
#include "tilediv/maxent.hpp"

namespace tilediv::io {

// Shortest text that parses back to the same binary64 (17 significant digits).
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

[[noreturn]] inline void parse_error(const std::string& source,
                                     std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              source + ":" + std::to_string(line) + ": " + what);
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError, path + ": cannot open file");
  }
  return in;
}

inline Id parse_id(const std::string& token, const std::string& source,
                   std::size_t line) {
  if (token.empty() ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    parse_error(source, line, "expected a positive integer id, got '" + token + "'");
  }
  unsigned long long v = 0;
  try {
    v = std::stoull(token);
  } catch (const std::exception&) {
    parse_error(source, line, "id out of range: '" + token + "'");
  }
  if (v == 0 || v > UINT32_MAX) {
    parse_error(source, line, "ids are 1-based, got '" + token + "'");
  }
  return static_cast<Id>(v);
}

inline void append_ids(const nlohmann::json& value, std::vector<Id>& out,
                       const std::string& source, std::size_t line) {
  if (value.is_number_unsigned() || value.is_number_integer()) {
    const auto v = value.get<long long>();
    if (v < 1 || v > static_cast<long long>(UINT32_MAX)) {
      parse_error(source, line, "ids are 1-based, got " + std::to_string(v));
    }
    out.push_back(static_cast<Id>(v));
    return;
  }
  if (!value.is_string()) {
    parse_error(source, line, "ids must be integers or \"a-b\" ranges");
  }
  const std::string text = value.get<std::string>();
  const auto dash = text.find('-');
  if (dash == std::string::npos) {
    out.push_back(parse_id(text, source, line));
    return;
  }
  const Id first = parse_id(text.substr(0, dash), source, line);
  const Id last = parse_id(text.substr(dash + 1), source, line);
  if (first > last) parse_error(source, line, "empty range '" + text + "'");
  for (Id v = first; v <= last; ++v) out.push_back(v);
}

inline std::vector<Id> parse_id_list(const nlohmann::json& obj, const char* key,
                                     const std::string& source,
                                     std::size_t line) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    parse_error(source, line, std::string("missing array \"") + key + "\"");
  }
  std::vector<Id> ids;
  for (const auto& v : obj[key]) append_ids(v, ids, source, line);
  if (ids.empty()) parse_error(source, line, std::string("empty \"") + key + "\"");
  return ids;
}

}  // namespace detail

inline BinaryDataset read_dataset(std::istream& in,
                                  const std::string& source = "<dataset>") {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) detail::parse_error(source, 1, "empty file");
  ++lineno;
  std::istringstream header(line);
  long long n = 0, m = 0;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n < 1 || m < 1) {
    detail::parse_error(source, lineno, "expected header \"n m\" with n, m >= 1");
  }
  std::vector<std::vector<Id>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::vector<Id> ids;
    std::string tok;
    while (tokens >> tok) {
      const Id c = detail::parse_id(tok, source, lineno);
      if (c > m) {
        detail::parse_error(source, lineno,
                            "column id " + tok + " exceeds m = " + std::to_string(m));
      }
      ids.push_back(c);
    }
    if (rows.size() == static_cast<std::size_t>(n)) {
      if (!ids.empty()) {
        detail::parse_error(source, lineno,
                            "more than n = " + std::to_string(n) + " rows");
      }
      continue;
    }
    rows.push_back(std::move(ids));
  }
  return BinaryDataset::from_rows(static_cast<std::size_t>(n),
                                  static_cast<std::size_t>(m), rows);
}

inline BinaryDataset read_dataset_file(const std::string& path) {
  auto in = detail::open(path);
  return read_dataset(in, path);
}

inline void write_dataset(std::ostream& out, const BinaryDataset& data) {
  out << data.n() << ' ' << data.m() << '\n';
  for (Id i = 1; i <= data.n(); ++i) {
    const auto ones = data.row_ones(i);
    for (std::size_t k = 0; k < ones.size(); ++k) {
      if (k) out << ' ';
      out << ones[k];
    }
    out << '\n';
  }
}

// A tile as read from a file, before it is bound to dims and a frequency.
struct TileRecord {
  Tile tile;
  std::optional<double> freq;
  std::size_t line = 0;
};

inline std::vector<TileRecord> read_tile_records(
    std::istream& in, const std::string& source = "<tiles>") {
  std::vector<TileRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      detail::parse_error(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) detail::parse_error(source, lineno, "expected a JSON object");
    auto rows = detail::parse_id_list(obj, "rows", source, lineno);
    auto cols = detail::parse_id_list(obj, "cols", source, lineno);
    std::optional<double> freq;
    if (obj.contains("freq") && !obj["freq"].is_null()) {
      if (!obj["freq"].is_number()) {
        detail::parse_error(source, lineno, "\"freq\" must be a number");
      }
      freq = obj["freq"].get<double>();
      if (!(*freq >= 0.0 && *freq <= 1.0)) {
        detail::parse_error(source, lineno, "\"freq\" outside [0, 1]");
      }
    }
    out.push_back({Tile(std::move(rows), std::move(cols)), freq, lineno});
  }
  return out;
}

inline std::vector<TileRecord> read_tile_records_file(const std::string& path) {
  auto in = detail::open(path);
  return read_tile_records(in, path);
}

// Smallest dims containing every record.
inline Dims bounding_dims(const std::vector<TileRecord>& records) {
  Dims d{0, 0};
  for (const auto& r : records) {
    d.rows = std::max<std::size_t>(d.rows, r.tile.rows().back());
    d.cols = std::max<std::size_t>(d.cols, r.tile.cols().back());
  }
  return d;
}

// Binds records to dims. Missing frequencies are taken from `data`; without
// data every record must carry one.
inline TileSet to_tile_set(const std::vector<TileRecord>& records, Dims dims,
                           const BinaryDataset* data,
                           const std::string& source = "<tiles>") {
  TileSet out(dims);
  for (const auto& r : records) {
    if (!r.tile.fits(dims)) {
      detail::parse_error(source, r.line, "tile does not fit within " + to_string(dims));
    }
    double alpha = 0.0;
    if (r.freq) {
      alpha = *r.freq;
    } else if (data) {
      alpha = empirical_frequency(r.tile, *data);
    } else {
      detail::parse_error(source, r.line, "no \"freq\" and no dataset to annotate from");
    }
    try {
      out.add(FreqTile(r.tile, alpha));
    } catch (const Error& e) {
      detail::parse_error(source, r.line, e.what());
    }
  }
  return out;
}

inline nlohmann::json to_json(const FreqTile& t) {
  return nlohmann::json{{"rows", t.tile().rows()},
                        {"cols", t.tile().cols()},
                        {"freq", t.alpha()}};
}

inline void write_tile_set(std::ostream& out, const TileSet& ts) {
  for (const auto& t : ts) out << to_json(t).dump() << '\n';
}

// One line per row, tab-separated probabilities.
inline void write_model_tsv(std::ostream& out, const EntryModel& model) {
  const Dims d = model.dims();
  const auto& p = model.probabilities();
  for (std::size_t i = 0; i < d.rows; ++i) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      if (j) out << '\t';
      out << format_double(p[i * d.cols + j]);
    }
    out << '\n';
  }
}

}  // namespace tilediv::io
