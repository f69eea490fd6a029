#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shelfrec/core/geometry.hpp"
#include "shelfrec/core/ids.hpp"

namespace shelfrec {

enum class EventKind {
  position,
  pickup,
  purchase,
  decline,
  rec_shown,
  rec_accepted,
  rec_dismissed,
  checkout,
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view text) noexcept;

/// Persisted fact. Payload fields are populated according to kind:
/// position -> position; pickup/purchase/decline -> item; rec_shown -> rec_id
/// + items; rec_accepted -> rec_id + item; rec_dismissed -> rec_id.
struct EventRecord {
  std::uint64_t sequence_number = 0;
  SessionId session_id;
  UserId user_id;
  double timestamp = 0.0;
  EventKind kind = EventKind::position;

  std::optional<ItemId> item;
  std::optional<std::string> rec_id;
  std::vector<ItemId> items;
  std::optional<Point2> position;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// Checks the payload matches the kind. Throws Error(invalid_argument).
void validate_event(const EventRecord& record);

}  // namespace shelfrec
