#pragma once

#include <vector>

#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/recommend/recommendation.hpp"
#include "shelfrec/similarity/similarity_model.hpp"

namespace shelfrec {

inline constexpr std::size_t kDefaultNeighbors = 20;

/// User-based CF over the k most similar users with positive similarity
/// (ties by ascending user id). score(i) = sum over those neighbors, in rank
/// order, of sim(u, v) * score(v, i), for items u has not rated.
std::vector<Recommendation> ucf_recommend(const SimilarityModel& model,
                                          const RatingMatrix& ratings, const UserId& user,
                                          std::size_t top_n,
                                          std::size_t k_neighbors = kDefaultNeighbors);

}  // namespace shelfrec
