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
#include <random>
#include <vector>

#include "random_instances.hpp"
#include "tilediv/maxent.hpp"
#include "toy.hpp"

namespace tilediv {
namespace {

constexpr double kGrid = 1e-9;

FitOptions tight() {
  FitOptions o;
  o.tolerance = 1e-12;
  return o;
}

void expect_grid(const EntryModel& model, const std::vector<double>& want) {
  const auto& p = model.probabilities();
  ASSERT_EQ(p.size(), want.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_NEAR(p[k], want[k], kGrid)
        << "entry (" << k / model.dims().cols + 1 << ","
        << k % model.dims().cols + 1 << ")";
  }
}

ErrorCode fit_error(const TileSet& ts) {
  try {
    fit(ts);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(BernoulliUpdate, KnownValues) {
  for (double y : {0.0, 0.2, 0.5, 0.9, 1.0}) EXPECT_DOUBLE_EQ(bernoulli_update(y, 1.0), y);
  EXPECT_DOUBLE_EQ(bernoulli_update(0.5, 3.0), 0.75);
  for (double x : {1e-6, 0.3, 7.0, 1e6}) {
    EXPECT_DOUBLE_EQ(bernoulli_update(1.0, x), 1.0);
    EXPECT_DOUBLE_EQ(bernoulli_update(0.0, x), 0.0);
  }
  EXPECT_LT(bernoulli_update(0.3, 2.0), bernoulli_update(0.3, 2.1));
}

TEST(Fit, EmptySetIsUniform) {
  const auto model = fit(toy::empty());
  expect_grid(model, std::vector<double>(25, 0.5));
  EXPECT_NEAR(entropy(model), 25 * std::log(2.0), 1e-12);
  EXPECT_EQ(model_frequency(toy::t1(), model), 0.5);
}

TEST(Fit, ToyModels) {
  expect_grid(fit(toy::T(), tight()), toy::grid_T());
  expect_grid(fit(toy::U(), tight()), toy::grid_U());
  expect_grid(fit(unite(toy::T(), toy::U()), tight()), toy::grid_TU());
  expect_grid(fit(unite(toy::T(), toy::B()), tight()), toy::grid_TB());
  expect_grid(fit(unite(toy::U(), toy::B()), tight()), toy::grid_UB());
  expect_grid(fit(unite(toy::T(), toy::U(), toy::B()), tight()), toy::grid_TUB());
}

TEST(Fit, ToyModelsWithDefaultTolerance) {
  expect_grid(fit(unite(toy::T(), toy::B())), toy::grid_TB());
  expect_grid(fit(unite(toy::U(), toy::B())), toy::grid_UB());
}

TEST(Fit, ToyFrequencyAndEntropy) {
  const auto tb = fit(unite(toy::T(), toy::B()), tight());
  EXPECT_NEAR(model_frequency(toy::t1(), tb), 0.5, kGrid);
  const auto m = fit(unite(toy::T(), toy::U(), toy::B()), tight());
  EXPECT_NEAR(entropy(m), 3 * std::log(2.0), kGrid);
  EXPECT_FALSE(m.fixed(1, 3));
  EXPECT_TRUE(m.fixed(2, 3));
  EXPECT_TRUE(m.fixed(1, 1));
}

TEST(Fit, FixedMaskForExactTiles) {
  const auto model = fit(toy::U());
  EXPECT_TRUE(model.fixed(3, 1));
  EXPECT_EQ(model.p(3, 1), 0.0);
  EXPECT_FALSE(model.fixed(3, 3));
  EXPECT_EQ(model.residual(), 0.0);
  EXPECT_EQ(model.sweeps(), 0u);
}

TEST(Fit, WholeGridNoisyTileIsUniform) {
  const TileSet ts({2, 2}, {FreqTile(Tile::range(1, 2, 1, 2), 0.75)});
  expect_grid(fit(ts, tight()), {0.75, 0.75, 0.75, 0.75});
}

TEST(Fit, SaturatedNoisyTilePinsFreeEntries) {
  // Three of four entries are clamped to 1, so the fourth must be 0.
  const TileSet ts({2, 2}, {FreqTile(Tile({1}, {1, 2}), 1.0),
                            FreqTile(Tile({2}, {1}), 1.0),
                            FreqTile(Tile::range(1, 2, 1, 2), 0.75)});
  const auto model = fit(ts);
  expect_grid(model, {1, 1, 1, 0});
  EXPECT_TRUE(model.fixed(2, 2));
}

TEST(Fit, InteractingNoisyTilesForceEntries) {
  // Sum over the 2x2 block is 1 and row 1 alone already holds 1, so row 2 is
  // all zero; the column-2 tile then forces (1,2) = 1.
  const TileSet ts({2, 2}, {FreqTile(Tile({1}, {1, 2}), 0.5),
                            FreqTile(Tile({1, 2}, {2}), 0.5),
                            FreqTile(Tile::range(1, 2, 1, 2), 0.25)});
  const auto model = fit(ts);
  expect_grid(model, {0, 1, 0, 0});
  for (Id i = 1; i <= 2; ++i) {
    for (Id j = 1; j <= 2; ++j) EXPECT_TRUE(model.fixed(i, j));
  }
}

TEST(Fit, ConflictingExactTiles) {
  const TileSet ts(toy::kDims, {FreqTile(Tile::range(1, 2, 1, 2), 1.0),
                                FreqTile(Tile::range(2, 3, 2, 3), 0.0)});
  EXPECT_EQ(fit_error(ts), ErrorCode::kConflictingExactTiles);
}

TEST(Fit, InfeasibleTileNamesIndex) {
  const TileSet ts(toy::kDims, {FreqTile(Tile::range(1, 2, 1, 2), 1.0),
                                FreqTile(Tile::range(1, 2, 1, 3), 0.5)});
  try {
    fit(ts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleTile);
    ASSERT_TRUE(e.tile_index().has_value());
    EXPECT_EQ(*e.tile_index(), 1u);
  }
}

TEST(Fit, InconsistentNoisyTilesDoNotConverge) {
  const TileSet ts(toy::kDims, {FreqTile(Tile::range(1, 2, 1, 2), 0.5),
                                FreqTile(Tile::range(1, 2, 1, 2), 0.25)});
  EXPECT_EQ(fit_error(ts), ErrorCode::kNoConvergence);
}

TEST(Fit, RejectsBadOptions) {
  FitOptions o;
  o.tolerance = 0.0;
  EXPECT_THROW(fit(toy::T(), o), Error);
  o = {};
  o.max_sweeps = 0;
  EXPECT_THROW(fit(toy::T(), o), Error);
  o = {};
  o.bracket_growth = 1.0;
  EXPECT_THROW(fit(toy::T(), o), Error);
}

TEST(Fit, ExactFastPathMatchesFit) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    testing::ExactSampler sampler({6, 7});
    const auto ts = sampler.draw_set(rng, 1 + trial % 5);
    const auto a = fit(ts);
    const auto b = exact_fastpath(ts);
    EXPECT_EQ(a.probabilities(), b.probabilities());
    EXPECT_EQ(a.fixed_mask(), b.fixed_mask());
  }
  EXPECT_THROW(exact_fastpath(toy::B()), Error);
}

TEST(Fit, RandomResidualsWithinTolerance) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto data = testing::random_dataset(rng, 7, 8, 0.4);
    const auto ts = testing::random_annotated(rng, data, 5);
    const auto model = fit(ts);
    for (const auto& t : ts) {
      EXPECT_LE(std::abs(model_frequency(t.tile(), model) - t.alpha()), 1e-6);
    }
    EXPECT_LE(model.residual(), 1e-6);
  }
}

TEST(Fit, UncoveredEntriesStayHalf) {
  testing::Rng rng(5);
  const auto data = testing::random_dataset(rng, 6, 6);
  const TileSet ts(data.dims(), {FreqTile(Tile::range(1, 3, 1, 3), 1.0 / 3.0),
                                 FreqTile(Tile::range(2, 4, 2, 4), 0.5)});
  const auto model = fit(ts);
  const auto mask = coverage_mask(ts);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) {
      EXPECT_EQ(model.probabilities()[k], 0.5);
    }
  }
}

TEST(Fit, RefitIsIdempotent) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = testing::random_dataset(rng, 6, 6);
    const auto ts = testing::random_annotated(rng, data, 4);
    const auto first = fit(ts, tight());
    TileSet again(ts.dims());
    for (const auto& t : ts) {
      again.add(FreqTile(t.tile(), std::clamp(model_frequency(t.tile(), first), 0.0, 1.0)));
    }
    const auto second = fit(again, tight());
    for (std::size_t k = 0; k < ts.dims().size(); ++k) {
      EXPECT_NEAR(first.probabilities()[k], second.probabilities()[k], 1e-9);
    }
  }
}

TEST(Fit, IsDeterministic) {
  testing::Rng rng(9);
  const auto data = testing::random_dataset(rng, 8, 8);
  const auto ts = testing::random_annotated(rng, data, 6);
  EXPECT_EQ(fit(ts).probabilities(), fit(ts).probabilities());
}

TEST(EntryModel, ValidatesInvariants) {
  const TileSet ts({1, 2});
  EXPECT_THROW(EntryModel(ts, {0.5}, {0}), Error);
  EXPECT_THROW(EntryModel(ts, {0.5, 1.5}, {0, 0}), Error);
  EXPECT_THROW(EntryModel(ts, {0.5, 0.5}, {1, 0}), Error);
  EXPECT_THROW(model_frequency(Tile::range(1, 2, 1, 1), EntryModel::uniform({1, 2})),
               Error);
}

}  // namespace
}  // namespace tilediv
