#include <gtest/gtest.h>

#include <random>

#include "../support/fixtures.hpp"
#include "shelfrec/core/errors.hpp"
#include "shelfrec/session/flow.hpp"
#include "shelfrec/session/spatial.hpp"

using namespace shelfrec;

namespace {

const Point2 kAisle{2.5, 0.5};
const Point2 kInA{1.0, 0.5};
const Point2 kInB{4.0, 0.5};

Session fresh() {
  Session s;
  s.session_id = SessionId("s1");
  s.user_id = UserId("u");
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::storage;
}

// Stands at `where` from t0 to t1 (inclusive) sampling every `step`, then
// steps into the aisle at t1 + 0.5.
AdvanceResult dwell(Session& s, const StoreLayout& layout, Point2 where, double t0, double t1,
                    double step = 0.5) {
  for (double t = t0; t < t1; t += step) advance(s, where, t, layout);
  advance(s, where, t1, layout);
  return advance(s, kAisle, t1 + 0.5, layout);
}

}  // namespace

TEST(Locate, HalfOpenZones) {
  const auto layout = fixture::three_shelves();
  EXPECT_EQ(locate({1.0, 0.5}, layout), ShelfId("A"));
  EXPECT_EQ(locate({0.0, 0.0}, layout), ShelfId("A"));
  EXPECT_FALSE(locate({2.0, 0.5}, layout));  // max edge of A
  EXPECT_FALSE(locate({2.5, 0.5}, layout));
  EXPECT_EQ(locate({3.0, 0.5}, layout), ShelfId("B"));
  EXPECT_FALSE(locate({1.0, 1.0}, layout));
}

TEST(Dwell, TwelveSecondsQualifies) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kAisle, 0.0, layout);
  const auto r = dwell(s, layout, kInA, 1.0, 13.0);
  EXPECT_EQ(r.qualified, ShelfId("A"));
  EXPECT_EQ(s.last_qualifying_shelf, ShelfId("A"));
  EXPECT_EQ(r.dwell_seconds, 0.0);
}

TEST(Dwell, EightSecondsDoesNot) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  dwell(s, layout, kInA, 0.0, 8.0);
  EXPECT_FALSE(s.last_qualifying_shelf);
}

TEST(Dwell, BoundaryNinePointNineVersusTen) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 0.0, layout);
  advance(s, kInA, 9.9, layout);
  EXPECT_FALSE(advance(s, kAisle, 10.5, layout).qualified);
  EXPECT_FALSE(s.last_qualifying_shelf);

  Session t = fresh();
  advance(t, kInA, 0.0, layout);
  const auto inside = advance(t, kInA, 10.0, layout);
  EXPECT_EQ(inside.dwell_seconds, 10.0);
  EXPECT_FALSE(inside.qualified);  // evaluated when the stay ends
  EXPECT_EQ(advance(t, kAisle, 10.5, layout).qualified, ShelfId("A"));
}

TEST(Dwell, ContinuousDwellTracksTrace) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  for (int k = 0; k <= 40; ++k) {
    const auto r = advance(s, kInA, 2.0 + 0.25 * k, layout);
    EXPECT_DOUBLE_EQ(r.dwell_seconds, 0.25 * k);
    EXPECT_EQ(r.current_shelf, ShelfId("A"));
  }
}

TEST(Dwell, PurchaseFromShelfPoisonsStay) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 0.0, layout);
  advance(s, kInA, 5.0, layout);
  handle_pickup(s, ItemId("a1"), layout);
  handle_purchase_decision(s, ItemId("a1"), true, layout);
  advance(s, kInA, 20.0, layout);
  EXPECT_FALSE(advance(s, kAisle, 21.0, layout).qualified);
  EXPECT_FALSE(s.last_qualifying_shelf);
  // A later stay at the same shelf can qualify again.
  EXPECT_EQ(dwell(s, layout, kInA, 22.0, 33.0).qualified, ShelfId("A"));
}

TEST(Dwell, PurchaseFromElsewhereEndsAndRestartsStay) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 0.0, layout);
  advance(s, kInA, 11.0, layout);
  handle_pickup(s, ItemId("b1"), layout);
  const auto d = handle_purchase_decision(s, ItemId("b1"), true, layout);
  EXPECT_EQ(d.qualified, ShelfId("A"));
  ASSERT_TRUE(s.stay);
  EXPECT_EQ(s.stay->entered_at, 11.0);
}

TEST(Dwell, PutBackDoesNotPoison) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 0.0, layout);
  handle_pickup(s, ItemId("a1"), layout);
  handle_purchase_decision(s, ItemId("a1"), false, layout);
  advance(s, kInA, 10.0, layout);
  EXPECT_EQ(advance(s, kAisle, 11.0, layout).qualified, ShelfId("A"));
}

TEST(Dwell, MostRecentQualifyingShelfWins) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  dwell(s, layout, kInA, 0.0, 12.0);
  EXPECT_EQ(s.last_qualifying_shelf, ShelfId("A"));
  dwell(s, layout, kInB, 20.0, 31.0);
  EXPECT_EQ(s.last_qualifying_shelf, ShelfId("B"));
  dwell(s, layout, kInA, 40.0, 45.0);  // too short, B stays
  EXPECT_EQ(s.last_qualifying_shelf, ShelfId("B"));
}

TEST(Dwell, DirectZoneToZoneMoveEndsStay) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 0.0, layout);
  advance(s, kInA, 10.0, layout);
  const auto r = advance(s, kInB, 10.5, layout);
  EXPECT_EQ(r.qualified, ShelfId("A"));
  EXPECT_EQ(r.current_shelf, ShelfId("B"));
}

TEST(Dwell, CustomThreshold) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 0.0, layout, 3.0);
  advance(s, kInA, 3.0, layout, 3.0);
  EXPECT_EQ(advance(s, kAisle, 4.0, layout, 3.0).qualified, ShelfId("A"));
}

TEST(Dwell, TimestampsMustIncrease) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  advance(s, kInA, 1.0, layout);
  EXPECT_EQ(code_of([&] { advance(s, kInA, 1.0, layout); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { advance(s, kInA, 0.5, layout); }), ErrorCode::invalid_argument);
}

TEST(Flow, PickupGuards) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  EXPECT_EQ(code_of([&] { handle_pickup(s, ItemId("nope"), layout); }), ErrorCode::not_found);
  handle_pickup(s, ItemId("a1"), layout);
  EXPECT_EQ(s.phase, SessionPhase::info_panel);
  EXPECT_EQ(code_of([&] { handle_pickup(s, ItemId("a2"), layout); }), ErrorCode::conflict);
  EXPECT_EQ(code_of([&] { handle_purchase_decision(s, ItemId("a2"), true, layout); }), ErrorCode::conflict);
  const auto d = handle_purchase_decision(s, ItemId("a1"), true, layout);
  EXPECT_TRUE(d.recommendation_requested);
  EXPECT_EQ(d.outcome, PanelOutcome::info_buy);
  EXPECT_EQ(s.cart, std::vector<ItemId>{ItemId("a1")});
  const auto rec = open_recommendation_panel(s, {ItemId("b1"), ItemId("b2")});
  EXPECT_EQ(rec, "s1-r1");
  EXPECT_EQ(s.phase, SessionPhase::recommendation_panel);
  EXPECT_EQ(code_of([&] { handle_pickup(s, ItemId("a2"), layout); }), ErrorCode::conflict);
}

TEST(Flow, PanelGuards) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  EXPECT_EQ(code_of([&] { open_recommendation_panel(s, {}); }), ErrorCode::invalid_argument);
  const auto rec = open_recommendation_panel(s, {ItemId("b1")});
  EXPECT_EQ(code_of([&] { handle_panel_purchase(s, "s1-r9", ItemId("b1"), layout); }), ErrorCode::not_found);
  EXPECT_EQ(code_of([&] { handle_panel_purchase(s, rec, ItemId("c1"), layout); }), ErrorCode::not_found);
  handle_panel_purchase(s, rec, ItemId("b1"), layout);
  EXPECT_EQ(code_of([&] { handle_panel_purchase(s, rec, ItemId("b1"), layout); }), ErrorCode::conflict);
  auto& panel = handle_panel_dismiss(s, rec);
  EXPECT_EQ(panel.purchased, std::vector<ItemId>{ItemId("b1")});
  EXPECT_EQ(s.phase, SessionPhase::browsing);
  EXPECT_EQ(code_of([&] { handle_panel_dismiss(s, rec); }), ErrorCode::conflict);
}

TEST(Flow, CheckoutGuards) {
  const auto layout = fixture::three_shelves();
  Session s = fresh();
  handle_pickup(s, ItemId("a1"), layout);
  EXPECT_EQ(code_of([&] { handle_checkout(s); }), ErrorCode::conflict);
  handle_purchase_decision(s, ItemId("a1"), false, layout);
  open_recommendation_panel(s, {ItemId("b1")});
  const auto pending = handle_checkout(s);
  ASSERT_EQ(pending.size(), 1u);
  EXPECT_EQ(pending[0]->items, std::vector<ItemId>{ItemId("b1")});
  EXPECT_EQ(s.phase, SessionPhase::checked_out);
  EXPECT_EQ(code_of([&] { handle_checkout(s); }), ErrorCode::conflict);
  EXPECT_EQ(code_of([&] { advance(s, kInA, 99.0, layout); }), ErrorCode::conflict);
  EXPECT_EQ(code_of([&] { handle_pickup(s, ItemId("a1"), layout); }), ErrorCode::conflict);
  EXPECT_EQ(code_of([&] { handle_purchase_decision(s, ItemId("a1"), true, layout); }), ErrorCode::conflict);
}

TEST(Flow, EmptyCartCheckout) {
  Session s = fresh();
  EXPECT_TRUE(handle_checkout(s).empty());
  EXPECT_TRUE(s.cart.empty());
}

TEST(Flow, RandomEventFuzzRespectsPhaseGraph) {
  const auto layout = fixture::three_shelves();
  const auto catalog = layout.sorted_item_ids();
  const Point2 spots[] = {kAisle, kInA, kInB, {7.0, 0.5}};
  std::mt19937_64 rng(51);
  auto allowed = [](SessionPhase from, SessionPhase to) {
    using P = SessionPhase;
    if (from == to) return true;
    switch (from) {
      case P::browsing: return to == P::info_panel || to == P::recommendation_panel || to == P::checked_out;
      case P::info_panel: return to == P::browsing;
      case P::recommendation_panel: return to == P::browsing || to == P::checked_out;
      case P::checked_out: return false;
    }
    return false;
  };
  for (int trial = 0; trial < 300; ++trial) {
    Session s = fresh();
    double t = 0.0;
    std::string last_rec;
    for (int step = 0; step < 60; ++step) {
      const SessionPhase before = s.phase;
      const auto cart_before = s.cart;
      const ItemId item = catalog[rng() % catalog.size()];
      try {
        switch (rng() % 7) {
          case 0: advance(s, spots[rng() % 4], t += 0.5 + (rng() % 40) / 4.0, layout); break;
          case 1: handle_pickup(s, item, layout); break;
          case 2: {
            const ItemId open = s.current_panel() && !s.current_panel()->items.empty()
                                    ? s.current_panel()->items.front()
                                    : item;
            handle_purchase_decision(s, rng() % 2 ? open : item, rng() % 2, layout);
            break;
          }
          case 3: last_rec = open_recommendation_panel(s, {item}); break;
          case 4: handle_panel_purchase(s, last_rec, item, layout); break;
          case 5: handle_panel_dismiss(s, last_rec); break;
          case 6:
            if (rng() % 5 == 0) handle_checkout(s);
            break;
        }
      } catch (const Error&) {
        ASSERT_EQ(s.phase, before);
        ASSERT_EQ(s.cart, cart_before);
      }
      ASSERT_TRUE(allowed(before, s.phase)) << to_string(before) << " -> " << to_string(s.phase);
      ASSERT_GE(s.stay ? s.stay->continuous_dwell() : 0.0, 0.0);
      if (before == SessionPhase::checked_out) { ASSERT_EQ(s.cart, cart_before); }
    }
  }
}
