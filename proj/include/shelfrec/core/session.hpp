#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shelfrec/core/geometry.hpp"
#include "shelfrec/core/ids.hpp"

namespace shelfrec {

enum class SessionPhase { browsing, info_panel, recommendation_panel, checked_out };

std::string_view to_string(SessionPhase phase) noexcept;

struct TimedPoint {
  Point2 point;
  double t = 0.0;  // seconds
};

/// One continuous visit inside a single shelf zone.
struct ShelfStay {
  ShelfId shelf;
  double entered_at = 0.0;
  double last_inside_at = 0.0;
  bool purchased_here = false;

  double continuous_dwell() const noexcept { return last_inside_at - entered_at; }
};

enum class PanelKind { info, recommendation };

struct PanelRecord {
  PanelKind kind = PanelKind::info;
  std::string rec_id;  // empty for info panels
  std::vector<ItemId> items;
  std::vector<ItemId> purchased;  // recommendation panels only
  bool settled = false;
};

struct Session {
  SessionId session_id;
  UserId user_id;
  std::optional<TimedPoint> position;
  std::vector<ItemId> cart;
  std::optional<ShelfStay> stay;
  std::optional<ShelfId> last_qualifying_shelf;
  std::vector<PanelRecord> panels;
  SessionPhase phase = SessionPhase::browsing;
  std::optional<std::size_t> open_panel;  // index into panels
  int panels_opened = 0;

  /// Latest timestamp seen; events without their own time use this.
  double clock() const noexcept { return position ? position->t : 0.0; }

  bool in_cart(const ItemId& item) const;
  PanelRecord* current_panel();
  const PanelRecord* current_panel() const;
  PanelRecord* find_recommendation_panel(std::string_view rec_id);
};

}  // namespace shelfrec
