#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shelfrec/core/layout.hpp"
#include "shelfrec/core/session.hpp"
#include "shelfrec/feedback/scoring.hpp"

namespace shelfrec {

inline constexpr double kDefaultDwellSeconds = 10.0;

// Shopping-flow state machine:
//
//   browsing --pickup--> info_panel --decline--> browsing
//                        info_panel --buy--> browsing (recommendation pending)
//   browsing --open panel--> recommendation_panel --dismiss--> browsing
//   browsing | recommendation_panel --checkout--> checked_out
//
// A shelf stay qualifies when it ends (zone exit, or a purchase from another
// shelf while standing in it) with at least `dwell_threshold` seconds of
// continuous dwell and no purchase from that shelf during the stay. The
// most recent qualifying stay overwrites older ones.

struct AdvanceResult {
  std::optional<ShelfId> current_shelf;
  double dwell_seconds = 0.0;
  std::optional<ShelfId> last_qualifying_shelf;
  std::optional<ShelfId> qualified;  // set when this sample ended a qualifying stay
};

/// Requires t strictly greater than the previous sample's time.
AdvanceResult advance(Session& session, Point2 position, double t, const StoreLayout& layout,
                      double dwell_threshold = kDefaultDwellSeconds);

/// Opens the info panel for an item. Requires phase browsing.
const Item& handle_pickup(Session& session, const ItemId& item, const StoreLayout& layout);

struct DecisionResult {
  PanelOutcome outcome;
  bool recommendation_requested = false;
  std::optional<ShelfId> qualified;
};

/// Closes the open info panel. Buying adds the item to the cart, poisons the
/// current stay if it is at the item's shelf, and requests a recommendation
/// panel; putting back returns to browsing.
DecisionResult handle_purchase_decision(Session& session, const ItemId& item, bool bought,
                                        const StoreLayout& layout,
                                        double dwell_threshold = kDefaultDwellSeconds);

/// Records a recommendation panel and returns its rec_id. Requires phase
/// browsing and a non-empty item list.
std::string open_recommendation_panel(Session& session, std::vector<ItemId> items);

/// Buys an item shown on the open recommendation panel.
void handle_panel_purchase(Session& session, std::string_view rec_id, const ItemId& item,
                           const StoreLayout& layout,
                           double dwell_threshold = kDefaultDwellSeconds);

/// Closes the open recommendation panel and returns it for settlement.
PanelRecord& handle_panel_dismiss(Session& session, std::string_view rec_id);

/// Closes the session and returns every recommendation panel that still
/// needs settling.
std::vector<PanelRecord*> handle_checkout(Session& session);

}  // namespace shelfrec
