#include "shelfrec/feedback/scoring.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

namespace {

constexpr std::array<ScoringRule, 4> kRules{{
    {PanelOutcome::info_buy, +1.0},
    {PanelOutcome::info_decline, -1.0},
    {PanelOutcome::rec_buy, +1.5},
    {PanelOutcome::rec_decline, -0.5},
}};

}  // namespace

std::string_view to_string(PanelOutcome outcome) noexcept {
  switch (outcome) {
    case PanelOutcome::info_buy: return "info_buy";
    case PanelOutcome::info_decline: return "info_decline";
    case PanelOutcome::rec_buy: return "rec_buy";
    case PanelOutcome::rec_decline: return "rec_decline";
  }
  return "unknown";
}

std::optional<PanelOutcome> panel_outcome_from_string(std::string_view text) noexcept {
  for (const auto& rule : kRules)
    if (to_string(rule.outcome) == text) return rule.outcome;
  return std::nullopt;
}

std::span<const ScoringRule> scoring_rules() noexcept { return kRules; }

double delta_for(PanelOutcome outcome) noexcept {
  for (const auto& rule : kRules)
    if (rule.outcome == outcome) return rule.delta;
  return 0.0;
}

AppliedDelta apply_event(RatingMatrix& ratings, const UserId& user, const ItemId& item,
                         PanelOutcome outcome) {
  const double delta = delta_for(outcome);
  const double after = ratings.add(user, item, delta);
  return {user, item, outcome, delta, after};
}

AppliedDelta apply_event(RatingMatrix& ratings, const UserId& user, const ItemId& item,
                         std::string_view outcome) {
  auto parsed = panel_outcome_from_string(outcome);
  if (!parsed)
    fail(ErrorCode::invalid_argument, "unknown scoring event '" + std::string(outcome) + "'");
  return apply_event(ratings, user, item, *parsed);
}

std::vector<AppliedDelta> settle_recommendation_panel(RatingMatrix& ratings, const UserId& user,
                                                      std::span<const ItemId> shown,
                                                      std::span<const ItemId> purchased) {
  if (shown.empty()) fail(ErrorCode::invalid_argument, "recommendation panel showed no items");
  for (const auto& item : purchased)
    if (std::find(shown.begin(), shown.end(), item) == shown.end())
      fail(ErrorCode::invalid_argument,
           "purchased item '" + item.str() + "' was not shown on the panel");

  std::vector<AppliedDelta> applied;
  applied.reserve(shown.size());
  for (const auto& item : shown) {
    const bool bought = std::find(purchased.begin(), purchased.end(), item) != purchased.end();
    applied.push_back(
        apply_event(ratings, user, item, bought ? PanelOutcome::rec_buy : PanelOutcome::rec_decline));
  }
  return applied;
}

std::vector<AppliedDelta> settle_panel(RatingMatrix& ratings, const UserId& user,
                                       PanelRecord& panel) {
  if (panel.kind != PanelKind::recommendation)
    fail(ErrorCode::invalid_argument, "only recommendation panels are settled");
  if (panel.settled)
    fail(ErrorCode::conflict, "recommendation panel '" + panel.rec_id + "' already settled");
  auto applied = settle_recommendation_panel(ratings, user, panel.items, panel.purchased);
  panel.settled = true;
  return applied;
}

}  // namespace shelfrec
