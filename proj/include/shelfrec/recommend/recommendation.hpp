#pragma once

#include <string_view>
#include <vector>

#include "shelfrec/core/ids.hpp"

namespace shelfrec {

enum class RecSource { icf, ucf, apriori, str_random, str_shelf };

std::string_view to_string(RecSource source) noexcept;

struct Recommendation {
  ItemId item_id;
  double score = 0.0;
  RecSource source = RecSource::icf;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

/// Ranking order used by every recommender: score descending, then item id
/// ascending.
bool ranks_before(const Recommendation& a, const Recommendation& b) noexcept;

/// Sorts by rank and keeps the first top_n.
void rank_and_truncate(std::vector<Recommendation>& recs, std::size_t top_n);

}  // namespace shelfrec
