#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "shelfrec/core/ids.hpp"

namespace shelfrec {

/// Sparse user x item score matrix. Users and items are enumerated in order
/// of first appearance and indices never change once assigned, so models
/// built from an earlier revision stay addressable.
///
/// An absent entry means "no interaction"; an explicit 0.0 is a recorded
/// score. Every stored score is clamped to [kMinScore, kMaxScore].
class RatingMatrix {
 public:
  using Index = std::uint32_t;

  static constexpr double kMinScore = -5.0;
  static constexpr double kMaxScore = 5.0;

  struct Entry {
    Index index;  // item index in a row, user index in a column
    double score;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static double clamp_score(double score) noexcept;

  std::size_t user_count() const noexcept { return users_.size(); }
  std::size_t item_count() const noexcept { return items_.size(); }
  std::size_t entry_count() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_ == 0; }

  /// Incremented on every mutation.
  std::uint64_t revision() const noexcept { return revision_; }

  std::optional<Index> find_user(const UserId& user) const;
  std::optional<Index> find_item(const ItemId& item) const;
  const UserId& user_at(Index index) const { return users_.at(index); }
  const ItemId& item_at(Index index) const { return items_.at(index); }

  std::optional<double> score(const UserId& user, const ItemId& item) const;

  /// Assigns an index without recording a score (used to restore a saved
  /// enumeration order).
  Index intern_user(const UserId& user);
  Index intern_item(const ItemId& item);

  /// Stores clamp_score(score) and returns the stored value.
  double set(const UserId& user, const ItemId& item, double score);

  /// Absent entries count as 0.0 before the delta. Returns the stored value.
  double add(const UserId& user, const ItemId& item, double delta);

  /// Items rated by a user, sorted by item index. Empty if unknown.
  std::span<const Entry> row(Index user) const;

  /// Per-item list of (user index, score) sorted by user index.
  std::vector<std::vector<Entry>> columns() const;

  /// Every (user, item, score) triple ordered by external ids; independent
  /// of enumeration order.
  std::vector<std::tuple<UserId, ItemId, double>> triples() const;

  /// Compares contents, not enumeration order or revision.
  bool same_contents(const RatingMatrix& other) const;

 private:
  std::vector<UserId> users_;
  std::vector<ItemId> items_;
  std::unordered_map<UserId, Index> user_index_;
  std::unordered_map<ItemId, Index> item_index_;
  std::vector<std::vector<Entry>> rows_;
  std::size_t entries_ = 0;
  std::uint64_t revision_ = 0;
};

}  // namespace shelfrec
