#include "shelfrec/session/flow.hpp"

#include <algorithm>

#include "shelfrec/core/errors.hpp"
#include "shelfrec/session/spatial.hpp"

namespace shelfrec {

namespace {

void require_open(const Session& s) {
  if (s.phase == SessionPhase::checked_out)
    fail(ErrorCode::conflict, "session '" + s.session_id.str() + "' is checked out");
}

void require_phase(const Session& s, SessionPhase phase, const char* action) {
  require_open(s);
  if (s.phase != phase)
    fail(ErrorCode::conflict, std::string(action) + " not allowed in phase " +
                                  std::string(to_string(s.phase)));
}

// Ends the current stay and reports its shelf if it qualified.
std::optional<ShelfId> end_stay(Session& s, double threshold) {
  if (!s.stay) return std::nullopt;
  std::optional<ShelfId> qualified;
  if (!s.stay->purchased_here && s.stay->continuous_dwell() >= threshold) {
    s.last_qualifying_shelf = s.stay->shelf;
    qualified = s.stay->shelf;
  }
  s.stay.reset();
  return qualified;
}

std::optional<ShelfId> note_purchase(Session& s, const ItemId& item, const StoreLayout& layout,
                                     double threshold) {
  if (!s.stay) return std::nullopt;
  const Item* it = layout.find_item(item);
  if (it != nullptr && it->shelf_id == s.stay->shelf) {
    s.stay->purchased_here = true;
    return std::nullopt;
  }
  // Bought from another shelf while standing here: the observation ends now
  // and a fresh stay starts at the same spot.
  const ShelfId shelf = s.stay->shelf;
  auto qualified = end_stay(s, threshold);
  s.stay = ShelfStay{shelf, s.clock(), s.clock(), false};
  return qualified;
}

PanelRecord& open_recommendation(Session& s, std::string_view rec_id) {
  require_open(s);
  PanelRecord* panel = s.find_recommendation_panel(rec_id);
  if (panel == nullptr)
    fail(ErrorCode::not_found, "unknown recommendation panel '" + std::string(rec_id) + "'");
  if (s.phase != SessionPhase::recommendation_panel || s.current_panel() != panel)
    fail(ErrorCode::conflict, "recommendation panel '" + std::string(rec_id) + "' is not open");
  return *panel;
}

}  // namespace

AdvanceResult advance(Session& s, Point2 position, double t, const StoreLayout& layout,
                      double dwell_threshold) {
  require_open(s);
  if (s.position && !(t > s.position->t))
    fail(ErrorCode::invalid_argument, "position timestamps must be strictly increasing");

  AdvanceResult result;
  const auto zone = locate(position, layout);
  if (s.stay) {
    if (zone && *zone == s.stay->shelf) {
      s.stay->last_inside_at = t;
    } else {
      result.qualified = end_stay(s, dwell_threshold);
    }
  }
  if (!s.stay && zone) s.stay = ShelfStay{*zone, t, t, false};
  s.position = TimedPoint{position, t};

  result.current_shelf = zone;
  result.dwell_seconds = s.stay ? s.stay->continuous_dwell() : 0.0;
  result.last_qualifying_shelf = s.last_qualifying_shelf;
  return result;
}

const Item& handle_pickup(Session& s, const ItemId& item, const StoreLayout& layout) {
  require_open(s);
  const Item* found = layout.find_item(item);
  if (found == nullptr) fail(ErrorCode::not_found, "unknown item '" + item.str() + "'");
  require_phase(s, SessionPhase::browsing, "pickup");
  s.panels.push_back(PanelRecord{PanelKind::info, {}, {item}, {}, false});
  s.open_panel = s.panels.size() - 1;
  s.phase = SessionPhase::info_panel;
  return *found;
}

DecisionResult handle_purchase_decision(Session& s, const ItemId& item, bool bought,
                                        const StoreLayout& layout, double dwell_threshold) {
  require_phase(s, SessionPhase::info_panel, "purchase decision");
  const PanelRecord* panel = s.current_panel();
  if (panel == nullptr || panel->kind != PanelKind::info || panel->items.front() != item)
    fail(ErrorCode::conflict, "no info panel open for item '" + item.str() + "'");

  s.open_panel.reset();
  s.phase = SessionPhase::browsing;
  DecisionResult result{bought ? PanelOutcome::info_buy : PanelOutcome::info_decline, bought, {}};
  if (bought) {
    s.cart.push_back(item);
    result.qualified = note_purchase(s, item, layout, dwell_threshold);
  }
  return result;
}

std::string open_recommendation_panel(Session& s, std::vector<ItemId> items) {
  require_phase(s, SessionPhase::browsing, "opening a recommendation panel");
  if (items.empty()) fail(ErrorCode::invalid_argument, "recommendation panel needs items");
  std::string rec_id = s.session_id.str() + "-r" + std::to_string(++s.panels_opened);
  s.panels.push_back(PanelRecord{PanelKind::recommendation, rec_id, std::move(items), {}, false});
  s.open_panel = s.panels.size() - 1;
  s.phase = SessionPhase::recommendation_panel;
  return rec_id;
}

void handle_panel_purchase(Session& s, std::string_view rec_id, const ItemId& item,
                           const StoreLayout& layout, double dwell_threshold) {
  PanelRecord& panel = open_recommendation(s, rec_id);
  if (std::find(panel.items.begin(), panel.items.end(), item) == panel.items.end())
    fail(ErrorCode::not_found, "item '" + item.str() + "' is not on panel '" + panel.rec_id + "'");
  if (std::find(panel.purchased.begin(), panel.purchased.end(), item) != panel.purchased.end())
    fail(ErrorCode::conflict, "item '" + item.str() + "' already bought from this panel");
  panel.purchased.push_back(item);
  s.cart.push_back(item);
  note_purchase(s, item, layout, dwell_threshold);
}

PanelRecord& handle_panel_dismiss(Session& s, std::string_view rec_id) {
  PanelRecord& panel = open_recommendation(s, rec_id);
  s.open_panel.reset();
  s.phase = SessionPhase::browsing;
  return panel;
}

std::vector<PanelRecord*> handle_checkout(Session& s) {
  require_open(s);
  if (s.phase == SessionPhase::info_panel)
    fail(ErrorCode::conflict, "close the info panel before checking out");
  std::vector<PanelRecord*> unsettled;
  for (auto& p : s.panels)
    if (p.kind == PanelKind::recommendation && !p.settled) unsettled.push_back(&p);
  s.open_panel.reset();
  s.phase = SessionPhase::checked_out;
  return unsettled;
}

}  // namespace shelfrec
