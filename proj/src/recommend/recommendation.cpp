#include "shelfrec/recommend/recommendation.hpp"

#include <algorithm>

namespace shelfrec {

std::string_view to_string(RecSource source) noexcept {
  switch (source) {
    case RecSource::icf: return "icf";
    case RecSource::ucf: return "ucf";
    case RecSource::apriori: return "apriori";
    case RecSource::str_random: return "str_random";
    case RecSource::str_shelf: return "str_shelf";
  }
  return "unknown";
}

bool ranks_before(const Recommendation& a, const Recommendation& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  return a.item_id < b.item_id;
}

void rank_and_truncate(std::vector<Recommendation>& recs, std::size_t top_n) {
  if (recs.size() > top_n) {
    std::partial_sort(recs.begin(), recs.begin() + static_cast<std::ptrdiff_t>(top_n), recs.end(),
                      ranks_before);
    recs.resize(top_n);
  } else {
    std::sort(recs.begin(), recs.end(), ranks_before);
  }
}

}  // namespace shelfrec
