#include "shelfrec/core/event.hpp"

#include <array>
#include <utility>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 8> kKindNames{{
    {EventKind::position, "position"},
    {EventKind::pickup, "pickup"},
    {EventKind::purchase, "purchase"},
    {EventKind::decline, "decline"},
    {EventKind::rec_shown, "rec_shown"},
    {EventKind::rec_accepted, "rec_accepted"},
    {EventKind::rec_dismissed, "rec_dismissed"},
    {EventKind::checkout, "checkout"},
}};

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  return std::nullopt;
}

void validate_event(const EventRecord& r) {
  auto bad = [&](const char* why) {
    fail(ErrorCode::invalid_argument,
         std::string("invalid ") + std::string(to_string(r.kind)) + " event: " + why);
  };
  if (r.session_id.empty()) bad("missing session_id");
  if (r.user_id.empty()) bad("missing user_id");
  switch (r.kind) {
    case EventKind::position:
      if (!r.position) bad("missing position");
      break;
    case EventKind::pickup:
    case EventKind::purchase:
    case EventKind::decline:
      if (!r.item) bad("missing item");
      break;
    case EventKind::rec_shown:
      if (!r.rec_id) bad("missing rec_id");
      if (r.items.empty()) bad("empty item list");
      break;
    case EventKind::rec_accepted:
      if (!r.rec_id || !r.item) bad("missing rec_id or item");
      break;
    case EventKind::rec_dismissed:
      if (!r.rec_id) bad("missing rec_id");
      break;
    case EventKind::checkout:
      break;
  }
}

}  // namespace shelfrec
