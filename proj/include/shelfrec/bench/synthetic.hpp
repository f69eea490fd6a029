#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shelfrec/core/layout.hpp"
#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/persist/movielens.hpp"

namespace shelfrec::bench {

/// Parameters for a MovieLens-1M-shaped synthetic ratings file: heavy-tailed
/// item popularity and user activity, a minimum of 20 ratings per user, and
/// latent taste groups so co-liking is correlated.
struct SyntheticSpec {
  std::size_t users = 6040;
  std::size_t movie_id_space = 3952;
  std::size_t rated_movies = 3706;
  std::size_t target_ratings = 1'000'209;
  std::size_t min_per_user = 20;
  std::size_t taste_groups = 6;
  std::uint64_t seed = 7;
};

std::vector<MovieLensRecord> generate_synthetic_movielens(const SyntheticSpec& spec);
void write_synthetic_movielens(const std::string& path, const SyntheticSpec& spec);

/// The demo store: six shelves, including a housewares shelf stocking
/// mug, band-aid, disinfectant, coffee and slippers in that order, and a
/// bath shelf with shower gel.
StoreLayout demo_store_layout();

/// Lays every item of a rating matrix onto shelves of `per_shelf` items in a
/// grid so shelf-based fallbacks can run against MovieLens data.
StoreLayout layout_from_catalog(const RatingMatrix& ratings, std::size_t per_shelf = 25);

}  // namespace shelfrec::bench
