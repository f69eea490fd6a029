#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/recommend/apriori.hpp"

namespace shelfrec {

/// One "UserID::MovieID::Rating::Timestamp" line.
struct MovieLensRecord {
  std::int64_t user_id = 0;
  std::int64_t movie_id = 0;
  int rating = 0;  // 1..5
  std::int64_t timestamp = 0;

  friend bool operator==(const MovieLensRecord&, const MovieLensRecord&) = default;
};

/// Throws parse_error naming line_number on malformed input.
MovieLensRecord parse_movielens_line(std::string_view line, std::size_t line_number);
std::string format_movielens_line(const MovieLensRecord& record);

enum class Split { train, test, all };

/// Deterministic ~80/20 assignment hashed from (user, movie, timestamp, seed).
bool in_test_split(const MovieLensRecord& record, std::uint64_t seed) noexcept;

struct MovieLensLoadOptions {
  Split split = Split::all;
  std::uint64_t seed = 0;
  // Keeps a deterministic hash-selected fraction of users; 1.0 keeps all.
  double user_fraction = 1.0;
};

struct MovieLensData {
  RatingMatrix ratings;
  std::size_t record_count = 0;  // records kept after split and subsampling
  std::size_t total_lines = 0;   // valid records in the file
  std::int64_t max_movie_id = 0;
};

/// Loads raw 1-5 ratings. Errors: unreadable file -> storage; empty file or
/// malformed line -> parse_error with the line number.
MovieLensData load_movielens(const std::string& path, const MovieLensLoadOptions& options = {});

inline constexpr int kDefaultLikeThreshold = 4;

/// Per-user itemsets of items scored >= like_threshold, in user index order.
/// Users whose itemset would be empty are dropped.
std::vector<Itemset> binarize_transactions(const RatingMatrix& ratings,
                                           int like_threshold = kDefaultLikeThreshold);

}  // namespace shelfrec
