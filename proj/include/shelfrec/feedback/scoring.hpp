#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/core/session.hpp"

namespace shelfrec {

/// Outcome of a panel the shopper has seen.
enum class PanelOutcome { info_buy, info_decline, rec_buy, rec_decline };

std::string_view to_string(PanelOutcome outcome) noexcept;
std::optional<PanelOutcome> panel_outcome_from_string(std::string_view text) noexcept;

struct ScoringRule {
  PanelOutcome outcome;
  double delta;
};

/// The four built-in rules: buy after the info panel +1.0, put back -1.0,
/// buy a recommended item +1.5, leave a recommended item -0.5.
std::span<const ScoringRule> scoring_rules() noexcept;
double delta_for(PanelOutcome outcome) noexcept;

struct AppliedDelta {
  UserId user;
  ItemId item;
  PanelOutcome outcome;
  double delta;        // nominal rule delta
  double score_after;  // stored score after clamping

  friend bool operator==(const AppliedDelta&, const AppliedDelta&) = default;
};

AppliedDelta apply_event(RatingMatrix& ratings, const UserId& user, const ItemId& item,
                         PanelOutcome outcome);

/// Parses the outcome name first; unknown names throw invalid_argument.
AppliedDelta apply_event(RatingMatrix& ratings, const UserId& user, const ItemId& item,
                         std::string_view outcome);

/// rec_buy for each purchased item, rec_decline for each other shown item,
/// in shown order. purchased must be a subset of shown.
std::vector<AppliedDelta> settle_recommendation_panel(RatingMatrix& ratings, const UserId& user,
                                                      std::span<const ItemId> shown,
                                                      std::span<const ItemId> purchased);

/// Settles a session panel exactly once; a second call throws conflict and
/// leaves the ratings untouched.
std::vector<AppliedDelta> settle_panel(RatingMatrix& ratings, const UserId& user,
                                       PanelRecord& panel);

}  // namespace shelfrec
