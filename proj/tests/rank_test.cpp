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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "random_instances.hpp"
#include "tilediv/rank.hpp"
#include "toy.hpp"

namespace tilediv {
namespace {

constexpr double kTol = 1e-9;

TileSet four() { return toy::set({toy::f2(), toy::f3(), toy::f4(), toy::f5()}); }

TEST(Surprise, Values) {
  const auto uniform = EntryModel::uniform(toy::kDims);
  EXPECT_EQ(surprise_score(FreqTile(toy::t1(), 0.5), uniform), 0.0);
  EXPECT_NEAR(surprise_score(toy::f4(), uniform), 6 * std::numbers::ln2, 1e-12);
  EXPECT_NEAR(surprise_score(toy::f3(), uniform), 6 * std::numbers::ln2, 1e-12);
  const auto u = fit(toy::U());
  EXPECT_EQ(surprise_score(toy::f3(), u), 0.0);
  try {
    surprise_score(FreqTile(toy::t3(), 0.5), u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfiniteSurprise);
  }
}

TEST(Rank, ToyExactFirstPickBreaksTieByInputOrder) {
  const auto r = fitamin(four(), toy::empty(), RankMode::kExact);
  ASSERT_EQ(r.order.size(), 4u);
  EXPECT_EQ(r.order[0], toy::f3());
  EXPECT_EQ(r.positions[0], 1u);
  // Jaccard arithmetic: 18 covered entries, T3 covers 6.
  EXPECT_NEAR(r.distances[0], 1.0 - 6.0 / 18.0, kTol);
  EXPECT_NEAR(r.distances.back(), 0.0, kTol);
}

TEST(Rank, ToyModesAgree) {
  for (const auto& b : {toy::empty(), toy::B()}) {
    const auto exact = fitamin(four(), b, RankMode::kExact);
    const auto heur = fitamin(four(), b, RankMode::kHeuristic);
    EXPECT_EQ(exact.positions, heur.positions);
  }
}

TEST(Rank, SingleTile) {
  const auto ts = toy::set({toy::f4()});
  const auto r = fitamin(ts, toy::B(), RankMode::kHeuristic);
  ASSERT_EQ(r.order.size(), 1u);
  EXPECT_NEAR(r.gains[0], r.initial_distance, kTol);
  EXPECT_NEAR(r.initial_distance, distance(toy::empty(), ts, toy::B()).value, kTol);
}

TEST(Rank, GainsSumAndTraceInvariants) {
  testing::Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = testing::random_dataset(rng, 6, 6);
    const auto tiles = testing::random_annotated(rng, data, 5);
    const auto b = testing::random_annotated(rng, data, 1);
    for (auto mode : {RankMode::kExact, RankMode::kHeuristic}) {
      const auto r = fitamin(tiles, b, mode);
      ASSERT_EQ(r.order.size(), tiles.size());
      for (double g : r.gains) EXPECT_GE(g, -kTol);
      const double sum = std::accumulate(r.gains.begin(), r.gains.end(), 0.0);
      EXPECT_NEAR(sum, r.initial_distance - r.distances.back(), 1e-12);
      EXPECT_NEAR(r.distances.back(), 0.0, 1e-6);
      std::vector<std::size_t> sorted = r.positions;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k) EXPECT_EQ(sorted[k], k);
    }
  }
}

TEST(Rank, ExactPickMaximizesKlOverBackground) {
  testing::Rng rng(43);
  FitOptions opts;
  opts.tolerance = 1e-12;
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = testing::random_dataset(rng, 5, 6);
    const auto tiles = testing::random_annotated(rng, data, 4);
    const auto b = testing::random_annotated(rng, data, 1);
    const auto r = fitamin(tiles, b, RankMode::kExact, opts);
    const auto background = fit(b, opts);
    TileSet known(tiles.dims());
    for (std::size_t step = 0; step < r.order.size(); ++step) {
      const double chosen = kl(fit(unite(with_tile(known, r.order[step]), b), opts),
                               background);
      for (std::size_t k = 0; k < tiles.size(); ++k) {
        const double other = kl(fit(unite(with_tile(known, tiles[k]), b), opts), background);
        EXPECT_LE(other, chosen + 1e-8);
      }
      known = with_tile(known, r.order[step]);
    }
  }
}

TEST(Rank, ModeNames) {
  EXPECT_EQ(to_string(RankMode::kExact), "exact");
  EXPECT_EQ(to_string(RankMode::kHeuristic), "heuristic");
}

}  // namespace
}  // namespace tilediv
