#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "shelfrec/core/errors.hpp"
#include "shelfrec/similarity/similarity_model.hpp"
#include "shelfrec/similarity/vector_math.hpp"

using namespace shelfrec;

TEST(VectorMath, MinkowskiHandValues) {
  const FeatureVector o{0.0, 0.0}, p{3.0, 4.0};
  EXPECT_NEAR(minkowski_distance(o, p, 2.0), 5.0, 1e-9);
  EXPECT_NEAR(minkowski_distance(o, p, 1.0), 7.0, 1e-9);
  EXPECT_EQ(minkowski_distance(p, p, 3.0), 0.0);
  // Odd order with negative differences uses magnitudes.
  EXPECT_NEAR(minkowski_distance(p, o, 3.0), std::cbrt(27.0 + 64.0), 1e-9);
}

TEST(VectorMath, MinkowskiRejectsBadInput) {
  const FeatureVector a{1.0, 2.0}, b{1.0};
  EXPECT_THROW(minkowski_distance(a, b, 2.0), Error);
  EXPECT_THROW(minkowski_distance(a, a, 0.5), Error);
  EXPECT_THROW(FeatureVector(std::vector<double>{}), Error);
  EXPECT_THROW(FeatureVector({1.0, std::nan("")}), Error);
}

TEST(VectorMath, CosineHandValues) {
  EXPECT_NEAR(cosine_similarity({1.0, 2.0}, {2.0, 1.0}), 0.8, 1e-9);
  EXPECT_NEAR(cosine_similarity({1.0, 0.0}, {0.0, 1.0}), 0.0, 1e-9);
  EXPECT_NEAR(cosine_similarity({3.0, -1.0, 2.0}, {3.0, -1.0, 2.0}), 1.0, 1e-9);
  EXPECT_EQ(cosine_similarity({0.0, 0.0}, {1.0, 2.0}), 0.0);
  EXPECT_THROW(cosine_similarity({1.0}, {1.0, 2.0}), Error);
}

TEST(VectorMath, CosinePropertiesOnRandomVectors) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> value(-10.0, 10.0), alpha(0.01, 100.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = len(rng);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = value(rng);
    for (auto& v : y) v = value(rng);
    const double c = cosine_similarity(FeatureVector(x), FeatureVector(y));
    ASSERT_GE(c, -1.0);
    ASSERT_LE(c, 1.0);
    ASSERT_EQ(c, cosine_similarity(FeatureVector(y), FeatureVector(x)));
    const double a = alpha(rng);
    std::vector<double> ax(x);
    for (auto& v : ax) v *= a;
    ASSERT_NEAR(cosine_similarity(FeatureVector(ax), FeatureVector(y)), c, 1e-9);
    ASSERT_NEAR(c, oracle::cosine(x, y), 1e-12);
  }
}

namespace {

RatingMatrix two_users_identical() {
  RatingMatrix m;
  for (const char* u : {"u1", "u2"}) {
    m.set(UserId(u), ItemId("A"), 3);
    m.set(UserId(u), ItemId("B"), 3);
  }
  return m;
}

void expect_matches_oracle(const RatingMatrix& m) {
  const auto d = oracle::densify(m);
  const auto items = build_item_model(m);
  const auto users = build_user_model(m);
  for (std::size_t i = 0; i < d.items.size(); ++i)
    for (std::size_t j = 0; j < d.items.size(); ++j) {
      const auto want = oracle::item_similarity(d, i, j);
      const auto got = items.similarity(d.items[i], d.items[j]);
      ASSERT_EQ(want.has_value(), got.has_value()) << d.items[i] << "," << d.items[j];
      if (want) { ASSERT_NEAR(*got, *want, 1e-9); }
    }
  for (std::size_t u = 0; u < d.users.size(); ++u)
    for (std::size_t v = 0; v < d.users.size(); ++v) {
      const auto want = oracle::user_similarity(d, u, v);
      const auto got = users.similarity(d.users[u], d.users[v]);
      ASSERT_EQ(want.has_value(), got.has_value());
      if (want) { ASSERT_NEAR(*got, *want, 1e-9); }
    }
}

}  // namespace

TEST(SimilarityModel, IdenticalColumnsGiveOne) {
  const auto m = two_users_identical();
  EXPECT_NEAR(*build_item_model(m).similarity("A", "B"), 1.0, 1e-12);
  EXPECT_NEAR(*build_user_model(m).similarity("u1", "u2"), 1.0, 1e-12);
}

TEST(SimilarityModel, NoCoRaterMeansAbsent) {
  RatingMatrix m;
  m.set(UserId("u1"), ItemId("A"), 4);
  m.set(UserId("u2"), ItemId("B"), 4);
  const auto items = build_item_model(m);
  EXPECT_FALSE(items.similarity("A", "B"));
  EXPECT_EQ(*items.similarity("A", "A"), 1.0);
  EXPECT_EQ(items.pair_count(), 0u);
  EXPECT_FALSE(build_user_model(m).similarity("u1", "u2"));
}

TEST(SimilarityModel, EmptyMatrixGivesEmptyModel) {
  const RatingMatrix m;
  const auto model = build_item_model(m);
  EXPECT_TRUE(model.empty());
  EXPECT_EQ(model.entity_count(), 0u);
  EXPECT_FALSE(model.similarity("A", "B"));
}

TEST(SimilarityModel, DenseOracleSmallCases) {
  std::mt19937_64 rng(5);
  expect_matches_oracle(oracle::random_ratings(rng, 5, 4, 0.6));
  expect_matches_oracle(oracle::random_ratings(rng, 6, 7, 0.5));
}

TEST(SimilarityModel, DenseOracleRandomInstancesWithFeedbackScores) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_real_distribution<double> density(0.05, 0.9);
  std::uniform_int_distribution<int> half_steps(-10, 10);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = oracle::random_ratings(rng, dim(rng), dim(rng), density(rng));
    // Mix in negative and fractional scores as feedback would produce.
    for (int k = 0; k < 10; ++k)
      m.set(UserId("u" + std::to_string(k % 7)), ItemId("i" + std::to_string(k % 5)), half_steps(rng) / 2.0);
    expect_matches_oracle(m);
  }
}

TEST(SimilarityModel, SymmetryRangeAndDiagonal) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = oracle::random_ratings(rng, 15, 15, 0.3);
    m.set(UserId("u0"), ItemId("i0"), -2.5);
    for (const auto& model : {build_item_model(m), build_user_model(m)}) {
      for (SimilarityModel::Index a = 0; a < model.entity_count(); ++a) {
        for (const auto& nb : model.neighbors(a)) {
          ASSERT_GE(nb.similarity, -1.0);
          ASSERT_LE(nb.similarity, 1.0);
          const auto back = model.similarity(nb.index, a);
          ASSERT_TRUE(back);
          ASSERT_EQ(*back, nb.similarity);  // bit-identical
        }
        const auto self = model.similarity(a, a);
        if (self) { ASSERT_EQ(*self, 1.0); }
      }
    }
  }
}

TEST(SimilarityModel, ScaleInvarianceOfOneEntity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> alpha(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = oracle::random_ratings(rng, 8, 8, 0.5);
    if (m.user_count() == 0) continue;
    const auto before = build_user_model(m);
    const auto target = m.user_at(0);
    const double a = alpha(rng);
    RatingMatrix scaled;
    for (const auto& [u, i, s] : m.triples()) scaled.set(u, i, u == target ? s * a : s);
    const auto after = build_user_model(scaled);
    for (SimilarityModel::Index v = 0; v < before.entity_count(); ++v) {
      const auto x = before.similarity(target.str(), before.id_at(v));
      const auto y = after.similarity(target.str(), before.id_at(v));
      ASSERT_EQ(x.has_value(), y.has_value());
      if (x) { ASSERT_NEAR(*x, *y, 1e-9); }
    }
  }
}

TEST(SimilarityModel, RebuildIsBitIdenticalAndThreadIndependent) {
  std::mt19937_64 rng(10);
  const auto m = oracle::random_ratings(rng, 40, 30, 0.3);
  const auto a = build_item_model(m);
  EXPECT_EQ(a, build_item_model(m));
  EXPECT_EQ(a, build_item_model(m, 4));
  EXPECT_EQ(build_user_model(m), build_user_model(m, 3));
  EXPECT_EQ(a.source_revision(), m.revision());
  EXPECT_GE(a.build_seconds(), 0.0);
}

TEST(SimilarityModel, SnapshotRoundTrip) {
  std::mt19937_64 rng(12);
  const auto m = oracle::random_ratings(rng, 12, 9, 0.4);
  const auto model = build_user_model(m);
  std::stringstream buf;
  model.save(buf);
  const auto back = SimilarityModel::load(buf);
  EXPECT_EQ(back, model);
  EXPECT_EQ(back.kind(), ModelKind::user_user);
  std::stringstream bad("garbage");
  EXPECT_THROW(SimilarityModel::load(bad), Error);
}

TEST(SimilarityModel, KindNames) {
  EXPECT_EQ(model_kind_from_string("item_item"), ModelKind::item_item);
  EXPECT_EQ(model_kind_from_string("user_user"), ModelKind::user_user);
  EXPECT_FALSE(model_kind_from_string("pearson"));
}
