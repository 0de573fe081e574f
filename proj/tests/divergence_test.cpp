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

#include <cmath>
#include <numbers>

#include "random_instances.hpp"
#include "tilediv/divergence.hpp"
#include "toy.hpp"

namespace tilediv {
namespace {

constexpr double kTol = 1e-9;
const double kLn2 = std::numbers::ln2;

FitOptions tight() {
  FitOptions o;
  o.tolerance = 1e-12;
  return o;
}

TileSet M() { return unite(toy::T(), toy::U(), toy::B()); }

TEST(Kl, ToyJointAgainstTB) {
  const auto m = fit(M(), tight());
  const auto tb = fit(unite(toy::T(), toy::B()), tight());
  EXPECT_NEAR(kl(m, tb), 2 * std::log(6.0) + 10 * std::log(1.2), kTol);
  EXPECT_NEAR(kl(m, tb), 5.4067, 1e-3);
  EXPECT_NEAR(kl_by_entropy(m, tb), kl(m, tb), kTol);
}

TEST(Kl, SelfIsZero) {
  const auto m = fit(unite(toy::U(), toy::B()));
  EXPECT_EQ(kl(m, m), 0.0);
  EXPECT_EQ(kl_by_entropy(m, m), 0.0);
}

TEST(Kl, AgainstUniformIsEntropyGap) {
  const auto m = fit(unite(toy::T(), toy::B()), tight());
  const auto none = fit(toy::empty());
  EXPECT_NEAR(kl(m, none), 25 * kLn2 - entropy(m), kTol);
}

TEST(Kl, ExactSubsetCountsUncoveredArea) {
  // area(U-model tiles) within area(T-model tiles).
  const TileSet big(toy::kDims, {toy::f2(), toy::f3(), toy::f4(), toy::f5()});
  const TileSet small(toy::kDims, {toy::f2(), toy::f3()});
  const auto a = fit(big);
  const auto b = fit(small);
  const std::size_t extra = area_union(big).size() - area_union(small).size();
  EXPECT_NEAR(kl(a, b), static_cast<double>(extra) * kLn2, kTol);
}

TEST(Kl, ToyEntropyPath) {
  const auto m = fit(M(), tight());
  const auto u = fit(toy::U(), tight());
  EXPECT_NEAR(kl_by_entropy(m, u), kl(m, u), kTol);
}

TEST(Kl, Errors) {
  const auto t = fit(toy::T());
  const auto u = fit(toy::U());
  try {
    kl(t, u);  // U rules out (3,1) = 1, T allows it
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfiniteDivergence);
  }
  EXPECT_THROW(kl_by_entropy(t, u), Error);
  EXPECT_THROW(kl(t, EntryModel::uniform({2, 2})), Error);
}

TEST(Distance, ToyWithoutBackground) {
  const auto r = distance(toy::T(), toy::U(), toy::empty());
  EXPECT_TRUE(r.used_jaccard_path);
  EXPECT_NEAR(r.value, 5.0 / 9.0, kTol);
  const auto g = distance(toy::T(), toy::U(), toy::empty(), tight(),
                          DistancePath::kGeneral);
  EXPECT_FALSE(g.used_jaccard_path);
  EXPECT_NEAR(g.value, 5.0 / 9.0, kTol);
  EXPECT_NEAR(g.kl_m_b, 18 * kLn2, kTol);
}

TEST(Distance, ToyWithBackground) {
  const auto r = distance(toy::T(), toy::U(), toy::B(), tight());
  EXPECT_FALSE(r.used_jaccard_path);
  EXPECT_NEAR(r.kl_m_t, 2 * std::log(6.0) + 10 * std::log(1.2), kTol);
  EXPECT_GE(r.value, 0.600);
  EXPECT_LE(r.value, 0.610);
  EXPECT_NEAR(r.value, (r.kl_m_t + r.kl_m_u) / r.kl_m_b, 1e-15);
}

// The joint model leaves 3 entries free (22 ln 2 against uniform). The model
// of U has 9 free entries and that of U u {T4} has 7, including (3,3).
TEST(Distance, ToyRedescriptionSteps) {
  const auto none = toy::empty();
  const auto u = distance(toy::U(), M(), none, tight());
  EXPECT_NEAR(u.kl_m_b, 22 * kLn2, kTol);
  EXPECT_NEAR(u.value, 6.0 / 22.0, kTol);
  const auto u4 = distance(with_tile(toy::U(), toy::f4()), M(), none, tight());
  EXPECT_NEAR(u4.kl_m_t, 4 * kLn2, kTol);
  EXPECT_NEAR(u4.value, 4.0 / 22.0, kTol);
  EXPECT_LE(u4.value, u.value);
}

TEST(Distance, ToySubsetRatio) {
  const auto none = toy::empty();
  const auto tu = unite(toy::U(), toy::T());
  const auto r = distance(toy::U(), tu, none, tight(), DistancePath::kGeneral);
  EXPECT_NEAR(r.value, 2.0 / 18.0, kTol);
  EXPECT_NEAR(r.value, 1.0 - 16.0 / 18.0, kTol);
  EXPECT_NEAR(distance(toy::U(), tu, none).value, 2.0 / 18.0, kTol);
}

TEST(Distance, ZeroBaseDivergenceGivesOne) {
  const auto r = distance(toy::empty(), toy::empty(), toy::B());
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(distance(toy::T(), toy::T(), toy::T()).value, 1.0);
}

TEST(Distance, SameSetIsZero) {
  EXPECT_NEAR(distance(toy::T(), toy::T(), toy::B(), tight()).value, 0.0, kTol);
  EXPECT_EQ(distance(toy::U(), toy::U(), toy::empty()).value, 0.0);
}

TEST(Distance, IsSymmetric) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = testing::random_dataset(rng, 6, 6);
    const auto t = testing::random_annotated(rng, data, 3);
    const auto u = testing::random_annotated(rng, data, 3);
    const auto b = testing::random_annotated(rng, data, 1);
    EXPECT_EQ(distance(t, u, b).value, distance(u, t, b).value);
  }
}

TEST(Distance, JointFailureIsConsistencyError) {
  const TileSet t(toy::kDims, {FreqTile(toy::t1(), 0.5)});
  const TileSet u(toy::kDims, {FreqTile(toy::t1(), 0.25)});
  try {
    distance(t, u, toy::empty());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConsistencyError);
  }
  EXPECT_THROW(distance(toy::T(), TileSet({2, 2}), toy::empty()), Error);
}

TEST(Jaccard, Examples) {
  EXPECT_NEAR(jaccard_distance(toy::T(), toy::U(), toy::empty()), 5.0 / 9.0, kTol);
  EXPECT_EQ(jaccard_distance(toy::U(), toy::U(), toy::empty()), 0.0);
  const TileSet a(toy::kDims, {toy::f3()});
  const TileSet b(toy::kDims, {toy::f4()});
  EXPECT_EQ(jaccard_distance(a, b, toy::empty()), 1.0);
  EXPECT_EQ(jaccard_distance(a, a, a), 1.0);
  EXPECT_THROW(jaccard_distance(toy::B(), toy::T(), toy::empty()), Error);
}

TEST(Jaccard, ConflictsStillSurface) {
  const TileSet t(toy::kDims, {FreqTile(toy::t2(), 1.0)});
  const TileSet u(toy::kDims, {FreqTile(Tile::range(2, 3, 2, 3), 0.0)});
  try {
    distance(t, u, toy::empty());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflictingExactTiles);
  }
}

}  // namespace
}  // namespace tilediv
