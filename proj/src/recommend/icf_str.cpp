#include "shelfrec/recommend/icf_str.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "shelfrec/core/errors.hpp"
#include "shelfrec/recommend/icf.hpp"

namespace shelfrec {

std::string_view to_string(StrStage stage) noexcept {
  switch (stage) {
    case StrStage::icf: return "icf";
    case StrStage::shelf: return "shelf";
    case StrStage::random: return "random";
    case StrStage::exhausted: return "exhausted";
  }
  return "unknown";
}

StrResult icf_str_recommend(const SimilarityModel& model, const RatingMatrix& ratings,
                            const UserId& user, std::span<const ItemId> cart,
                            std::size_t top_n, const StrContext& ctx,
                            const StoreLayout& layout) {
  if (top_n == 0) fail(ErrorCode::invalid_argument, "top_n must be >= 1");
  if (ctx.random_count == 0) fail(ErrorCode::invalid_argument, "random_count must be >= 1");
  if (ctx.random_count > layout.items().size())
    fail(ErrorCode::invalid_argument, "random_count exceeds catalog size");

  StrResult result;
  result.recommendations = icf_recommend(model, ratings, user, cart, top_n);
  if (!result.recommendations.empty()) {
    result.stage = StrStage::icf;
    return result;
  }

  const std::unordered_set<ItemId> in_cart(cart.begin(), cart.end());

  if (ctx.last_qualifying_shelf) {
    if (const Shelf* shelf = layout.find_shelf(*ctx.last_qualifying_shelf)) {
      std::vector<ItemId> picks;
      for (const auto& id : shelf->item_ids) {
        if (picks.size() == top_n) break;
        if (!in_cart.contains(id)) picks.push_back(id);
      }
      if (!picks.empty()) {
        const auto count = static_cast<double>(picks.size());
        for (std::size_t k = 0; k < picks.size(); ++k)
          result.recommendations.push_back(
              {picks[k], (count - static_cast<double>(k)) / count, RecSource::str_shelf});
        result.stage = StrStage::shelf;
        return result;
      }
    }
  }

  std::vector<ItemId> pool;
  for (auto& id : layout.sorted_item_ids())
    if (!in_cart.contains(id)) pool.push_back(std::move(id));
  if (pool.empty()) {
    result.stage = StrStage::exhausted;
    return result;
  }

  // Partial Fisher-Yates: the first `draws` slots become a uniform sample
  // without replacement, in draw order.
  std::mt19937_64 rng(ctx.random_seed);
  const std::size_t draws = std::min({ctx.random_count, pool.size(), top_n});
  for (std::size_t k = 0; k < draws; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
    std::swap(pool[k], pool[pick(rng)]);
  }
  const auto count = static_cast<double>(draws);
  for (std::size_t k = 0; k < draws; ++k)
    result.recommendations.push_back(
        {pool[k], (count - static_cast<double>(k)) / count, RecSource::str_random});
  result.stage = StrStage::random;
  return result;
}

}  // namespace shelfrec
