#include <gtest/gtest.h>

#include <random>

#include "shelfrec/core/errors.hpp"
#include "shelfrec/core/session.hpp"
#include "shelfrec/feedback/scoring.hpp"

using namespace shelfrec;

namespace {

const UserId kUser("u");

std::vector<ItemId> items(std::initializer_list<const char*> v) {
  std::vector<ItemId> out;
  for (const char* s : v) out.emplace_back(s);
  return out;
}

}  // namespace

TEST(Scoring, BuiltInRules) {
  EXPECT_EQ(delta_for(PanelOutcome::info_buy), 1.0);
  EXPECT_EQ(delta_for(PanelOutcome::info_decline), -1.0);
  EXPECT_EQ(delta_for(PanelOutcome::rec_buy), 1.5);
  EXPECT_EQ(delta_for(PanelOutcome::rec_decline), -0.5);
  EXPECT_EQ(scoring_rules().size(), 4u);
}

TEST(Scoring, InfoPanelBuyAndPutBack) {
  RatingMatrix m;
  const auto buy = apply_event(m, kUser, ItemId("A"), PanelOutcome::info_buy);
  EXPECT_EQ(buy.delta, 1.0);
  EXPECT_EQ(buy.score_after, 1.0);
  const auto back = apply_event(m, kUser, ItemId("B"), "info_decline");
  EXPECT_EQ(back.score_after, -1.0);
  EXPECT_EQ(*m.score(kUser, ItemId("B")), -1.0);
}

TEST(Scoring, ClampAtUpperBound) {
  RatingMatrix m;
  m.set(kUser, ItemId("A"), 5.0);
  const auto d = apply_event(m, kUser, ItemId("A"), PanelOutcome::rec_buy);
  EXPECT_EQ(d.delta, 1.5);
  EXPECT_EQ(d.score_after, 5.0);
}

TEST(Scoring, UnknownOutcomeRejected) {
  RatingMatrix m;
  EXPECT_THROW(apply_event(m, kUser, ItemId("A"), "stare"), Error);
  EXPECT_TRUE(m.empty());
}

TEST(Scoring, SettlementExamples) {
  RatingMatrix m;
  auto d = settle_recommendation_panel(m, kUser, items({"B", "C"}), items({"B"}));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(*m.score(kUser, ItemId("B")), 1.5);
  EXPECT_EQ(*m.score(kUser, ItemId("C")), -0.5);

  RatingMatrix m2;
  settle_recommendation_panel(m2, kUser, items({"B"}), {});
  EXPECT_EQ(*m2.score(kUser, ItemId("B")), -0.5);

  RatingMatrix m3;
  settle_recommendation_panel(m3, kUser, items({"B", "C"}), items({"B", "C"}));
  EXPECT_EQ(*m3.score(kUser, ItemId("B")), 1.5);
  EXPECT_EQ(*m3.score(kUser, ItemId("C")), 1.5);
}

TEST(Scoring, SettlementPreconditions) {
  RatingMatrix m;
  EXPECT_THROW(settle_recommendation_panel(m, kUser, {}, {}), Error);
  EXPECT_THROW(settle_recommendation_panel(m, kUser, items({"B"}), items({"Z"})), Error);
  EXPECT_TRUE(m.empty());
}

TEST(Scoring, PanelSettlesExactlyOnce) {
  RatingMatrix m;
  PanelRecord panel{PanelKind::recommendation, "s1-r1", items({"B", "C"}), items({"C"}), false};
  EXPECT_EQ(settle_panel(m, kUser, panel).size(), 2u);
  EXPECT_TRUE(panel.settled);
  const auto before = m.triples();
  try {
    settle_panel(m, kUser, panel);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::conflict);
  }
  EXPECT_EQ(m.triples(), before);
}

TEST(Scoring, SessionDeltaSumAndBoundsProperty) {
  std::mt19937_64 rng(41);
  const PanelOutcome outcomes[] = {PanelOutcome::info_buy, PanelOutcome::info_decline, PanelOutcome::rec_buy,
                                   PanelOutcome::rec_decline};
  for (int trial = 0; trial < 300; ++trial) {
    RatingMatrix m;
    double nominal = 0, expected = 0;
    int counts[4] = {};
    for (int k = 0; k < 40; ++k) {
      const int o = static_cast<int>(rng() % 4);
      const auto d = apply_event(m, kUser, ItemId("i" + std::to_string(rng() % 3)), outcomes[o]);
      ++counts[o];
      nominal += d.delta;
      ASSERT_GE(d.score_after, -5.0);
      ASSERT_LE(d.score_after, 5.0);
    }
    expected = 1.0 * counts[0] - 1.0 * counts[1] + 1.5 * counts[2] - 0.5 * counts[3];
    ASSERT_DOUBLE_EQ(nominal, expected);
  }
}
