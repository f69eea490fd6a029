#include <gtest/gtest.h>

#include "shelfrec/core/rating_matrix.hpp"

using namespace shelfrec;

TEST(RatingMatrix, AbsentDiffersFromExplicitZero) {
  RatingMatrix m;
  EXPECT_FALSE(m.score(UserId("u"), ItemId("a")));
  m.set(UserId("u"), ItemId("a"), 0.0);
  ASSERT_TRUE(m.score(UserId("u"), ItemId("a")));
  EXPECT_EQ(*m.score(UserId("u"), ItemId("a")), 0.0);
  EXPECT_EQ(m.entry_count(), 1u);
  EXPECT_FALSE(m.empty());
}

TEST(RatingMatrix, ScoresAreClamped) {
  RatingMatrix m;
  EXPECT_EQ(m.set(UserId("u"), ItemId("a"), 9.0), 5.0);
  EXPECT_EQ(m.add(UserId("u"), ItemId("a"), 1.5), 5.0);
  EXPECT_EQ(m.add(UserId("u"), ItemId("b"), -7.0), -5.0);
  EXPECT_EQ(m.add(UserId("u"), ItemId("c"), 1.5), 1.5);
  EXPECT_EQ(RatingMatrix::clamp_score(-5.0000001), -5.0);
}

TEST(RatingMatrix, EnumerationIsStableAndRowsSorted) {
  RatingMatrix m;
  m.set(UserId("u2"), ItemId("z"), 1);
  m.set(UserId("u1"), ItemId("a"), 2);
  m.set(UserId("u2"), ItemId("a"), 3);
  EXPECT_EQ(m.user_at(0), UserId("u2"));
  EXPECT_EQ(m.item_at(0), ItemId("z"));
  EXPECT_EQ(*m.find_item(ItemId("a")), 1u);
  const auto row = m.row(0);
  ASSERT_EQ(row.size(), 2u);
  EXPECT_LT(row[0].index, row[1].index);
  const auto cols = m.columns();
  ASSERT_EQ(cols.size(), 2u);
  EXPECT_EQ(cols[1].size(), 2u);
  EXPECT_LT(cols[1][0].index, cols[1][1].index);
}

TEST(RatingMatrix, RevisionCountsMutations) {
  RatingMatrix m;
  const auto r0 = m.revision();
  m.set(UserId("u"), ItemId("a"), 1);
  m.add(UserId("u"), ItemId("a"), 1);
  EXPECT_EQ(m.revision(), r0 + 2);
}

TEST(RatingMatrix, SameContentsIgnoresEnumerationOrder) {
  RatingMatrix a, b;
  a.set(UserId("u1"), ItemId("x"), 1);
  a.set(UserId("u2"), ItemId("y"), 2);
  b.set(UserId("u2"), ItemId("y"), 2);
  b.set(UserId("u1"), ItemId("x"), 1);
  EXPECT_TRUE(a.same_contents(b));
  b.set(UserId("u1"), ItemId("x"), 1.5);
  EXPECT_FALSE(a.same_contents(b));
  RatingMatrix c = a;
  c.intern_item(ItemId("unused"));
  EXPECT_TRUE(a.same_contents(c));
}
