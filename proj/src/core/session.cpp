#include "shelfrec/core/session.hpp"

#include <algorithm>

namespace shelfrec {

std::string_view to_string(SessionPhase phase) noexcept {
  switch (phase) {
    case SessionPhase::browsing: return "browsing";
    case SessionPhase::info_panel: return "info_panel";
    case SessionPhase::recommendation_panel: return "recommendation_panel";
    case SessionPhase::checked_out: return "checked_out";
  }
  return "unknown";
}

bool Session::in_cart(const ItemId& item) const {
  return std::find(cart.begin(), cart.end(), item) != cart.end();
}

PanelRecord* Session::current_panel() {
  return open_panel ? &panels[*open_panel] : nullptr;
}

const PanelRecord* Session::current_panel() const {
  return open_panel ? &panels[*open_panel] : nullptr;
}

PanelRecord* Session::find_recommendation_panel(std::string_view rec_id) {
  for (auto& p : panels)
    if (p.kind == PanelKind::recommendation && p.rec_id == rec_id) return &p;
  return nullptr;
}

}  // namespace shelfrec
