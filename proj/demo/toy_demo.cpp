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

// Walks through the 5x5 toy dataset: fits the models for T, U and their
// union, then prints distances, a redescription and a ranking.

#include <cstdio>
#include <string>
#include <vector>

#include "tilediv/tilediv.hpp"

namespace {

using tilediv::BinaryDataset;
using tilediv::Dims;
using tilediv::EntryModel;
using tilediv::FreqTile;
using tilediv::Tile;
using tilediv::TileSet;

void print_grid(const char* name, const EntryModel& model) {
  std::printf("%s\n", name);
  const Dims d = model.dims();
  for (tilediv::Id i = 1; i <= d.rows; ++i) {
    for (tilediv::Id j = 1; j <= d.cols; ++j) std::printf(" %6.4f", model.p(i, j));
    std::printf("\n");
  }
}

std::string describe(const FreqTile& t) {
  return "rows " + std::to_string(t.tile().rows().front()) + "-" +
         std::to_string(t.tile().rows().back()) + " x cols " +
         std::to_string(t.tile().cols().front()) + "-" +
         std::to_string(t.tile().cols().back()) + " @ " +
         std::to_string(t.alpha());
}

}  // namespace

int main() {
  const BinaryDataset data = BinaryDataset::from_rows(
      5, 5, {{1, 2, 5}, {1, 2}, {4, 5}, {3, 4, 5}, {3, 4, 5}});
  const Dims dims = data.dims();

  const Tile t1 = Tile::range(2, 5, 1, 5);
  const Tile t2 = Tile::range(1, 2, 1, 2);
  const Tile t3 = Tile::range(3, 5, 1, 2);
  const Tile t4 = Tile::range(4, 5, 3, 5);
  const Tile t5 = Tile::range(3, 5, 4, 5);
  auto annotated = [&](const Tile& t) {
    return FreqTile(t, tilediv::empirical_frequency(t, data));
  };

  const TileSet T(dims, {annotated(t2), annotated(t4)});
  const TileSet U(dims, {annotated(t2), annotated(t3), annotated(t5)});
  const TileSet B(dims, {annotated(t1)});
  const TileSet none(dims);

  tilediv::FitOptions opts;
  opts.tolerance = 1e-12;

  print_grid("model for T", tilediv::fit(T, opts));
  print_grid("model for U", tilediv::fit(U, opts));
  print_grid("model for T u U u B", tilediv::fit(tilediv::unite(T, U, B), opts));

  const auto plain = tilediv::distance(T, U, none, opts);
  const auto with_b = tilediv::distance(T, U, B, opts);
  std::printf("\nd(T, U; none) = %.6f  (Jaccard path: %s)\n", plain.value,
              plain.used_jaccard_path ? "yes" : "no");
  std::printf("d(T, U; B)    = %.6f  KL(M||T u B) = %.4f  KL(M||U u B) = %.4f\n",
              with_b.value, with_b.kl_m_t, with_b.kl_m_u);

  const TileSet M = tilediv::unite(T, U);
  const auto redesc = tilediv::fruits(M, U, none, opts);
  std::printf("\nredescribing T u U with tiles of U:\n");
  for (std::size_t k = 0; k < redesc.selected.size(); ++k) {
    std::printf("  + %s -> %.6f\n", describe(redesc.selected[k]).c_str(),
                redesc.trace[k]);
  }

  const TileSet all(dims, {annotated(t2), annotated(t3), annotated(t4),
                           annotated(t5)});
  for (auto mode : {tilediv::RankMode::kExact, tilediv::RankMode::kHeuristic}) {
    const auto ranking = tilediv::fitamin(all, B, mode, opts);
    std::printf("\nranking (%s) against B:\n",
                std::string(tilediv::to_string(mode)).c_str());
    for (std::size_t k = 0; k < ranking.order.size(); ++k) {
      std::printf("  %zu. %s  d = %.6f  gain = %.6f\n", k + 1,
                  describe(ranking.order[k]).c_str(), ranking.distances[k],
                  ranking.gains[k]);
    }
  }
  return 0;
}
