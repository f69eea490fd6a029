#pragma once

#include <span>
#include <vector>

#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/recommend/recommendation.hpp"
#include "shelfrec/similarity/similarity_model.hpp"

namespace shelfrec {

/// Item-based CF. Each seed item j (rated by the user, or in the cart) adds
/// sim(i, j) * weight(j) to every neighbor i, where weight is the user's
/// score for j or 1.0 for an unscored cart item. Seeds are summed in
/// ascending item id order. Returns up to top_n positive-scoring items that
/// are not in the cart; empty when the model has no evidence.
std::vector<Recommendation> icf_recommend(const SimilarityModel& model,
                                          const RatingMatrix& ratings, const UserId& user,
                                          std::span<const ItemId> cart, std::size_t top_n);

}  // namespace shelfrec
