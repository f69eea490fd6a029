#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shelfrec/core/rating_matrix.hpp"

namespace shelfrec {

enum class ModelKind { item_item, user_user };

std::string_view to_string(ModelKind kind) noexcept;
std::optional<ModelKind> model_kind_from_string(std::string_view text) noexcept;

/// Immutable symmetric similarity snapshot. Entities are the items (or
/// users) of the source matrix, indexed as in that matrix. Each row stores
/// its neighbors sorted by index, the diagonal included, so a lookup is a
/// binary search and sim(a, b) and sim(b, a) are the same stored double.
class SimilarityModel {
 public:
  using Index = RatingMatrix::Index;

  struct Neighbor {
    Index index;
    double similarity;
  };

  SimilarityModel() = default;

  ModelKind kind() const noexcept { return kind_; }
  std::size_t entity_count() const noexcept { return ids_.size(); }
  /// Unordered pairs a != b with a stored similarity.
  std::size_t pair_count() const noexcept;
  bool empty() const noexcept { return neighbors_.empty(); }

  double build_seconds() const noexcept { return build_seconds_; }
  std::uint64_t source_revision() const noexcept { return source_revision_; }

  const std::string& id_at(Index index) const { return ids_.at(index); }
  std::optional<Index> find(std::string_view id) const;

  std::span<const Neighbor> neighbors(Index index) const;
  std::optional<double> similarity(Index a, Index b) const;
  std::optional<double> similarity(std::string_view a, std::string_view b) const;

  void save(std::ostream& out) const;
  static SimilarityModel load(std::istream& in);

  friend bool operator==(const SimilarityModel& a, const SimilarityModel& b);

 private:
  friend SimilarityModel build_model(const RatingMatrix&, ModelKind, unsigned);

  void index_ids();

  ModelKind kind_ = ModelKind::item_item;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> id_index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  double build_seconds_ = 0.0;
  std::uint64_t source_revision_ = 0;
};

/// Full rebuild over item columns (item_item) or user rows (user_user).
/// Pairs with at least one co-rater get their cosine over the dense vectors
/// (absent entries as zero); pairs without one are absent. threads > 1
/// splits rows across workers; results are identical for any thread count.
SimilarityModel build_model(const RatingMatrix& ratings, ModelKind kind, unsigned threads = 1);

inline SimilarityModel build_item_model(const RatingMatrix& ratings, unsigned threads = 1) {
  return build_model(ratings, ModelKind::item_item, threads);
}

inline SimilarityModel build_user_model(const RatingMatrix& ratings, unsigned threads = 1) {
  return build_model(ratings, ModelKind::user_user, threads);
}

}  // namespace shelfrec
