#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shelfrec/core/layout.hpp"
#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/recommend/recommendation.hpp"
#include "shelfrec/similarity/similarity_model.hpp"

namespace shelfrec {

inline constexpr std::size_t kDefaultRandomCount = 5;

struct StrContext {
  std::optional<ShelfId> last_qualifying_shelf;
  std::uint64_t random_seed = 0;
  std::size_t random_count = kDefaultRandomCount;
};

/// Which stage produced the list.
enum class StrStage { icf, shelf, random, exhausted };

std::string_view to_string(StrStage stage) noexcept;

struct StrResult {
  std::vector<Recommendation> recommendations;
  StrStage stage = StrStage::icf;

  bool catalog_exhausted() const noexcept { return stage == StrStage::exhausted; }
};

/// ICF with two cold-start fallbacks, tried in order when the previous stage
/// returns nothing:
///  1. ICF over the current model.
///  2. Items of the most recent qualifying shelf that are not in the cart,
///     in stocking order.
///  3. random_count (at most top_n) distinct catalog items outside the cart, drawn
///     uniformly with a generator seeded from random_seed.
/// Fallback lists carry descending pseudo-scores so the usual ranking order
/// reproduces stocking (or draw) order. Empty only when every catalog item
/// is in the cart.
StrResult icf_str_recommend(const SimilarityModel& model, const RatingMatrix& ratings,
                            const UserId& user, std::span<const ItemId> cart,
                            std::size_t top_n, const StrContext& ctx,
                            const StoreLayout& layout);

}  // namespace shelfrec
