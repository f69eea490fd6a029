#include "shelfrec/core/rating_matrix.hpp"

#include <algorithm>

namespace shelfrec {

double RatingMatrix::clamp_score(double score) noexcept {
  return std::clamp(score, kMinScore, kMaxScore);
}

std::optional<RatingMatrix::Index> RatingMatrix::find_user(const UserId& user) const {
  auto it = user_index_.find(user);
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<RatingMatrix::Index> RatingMatrix::find_item(const ItemId& item) const {
  auto it = item_index_.find(item);
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

RatingMatrix::Index RatingMatrix::intern_user(const UserId& user) {
  auto [it, fresh] = user_index_.try_emplace(user, static_cast<Index>(users_.size()));
  if (fresh) {
    users_.push_back(user);
    rows_.emplace_back();
  }
  return it->second;
}

RatingMatrix::Index RatingMatrix::intern_item(const ItemId& item) {
  auto [it, fresh] = item_index_.try_emplace(item, static_cast<Index>(items_.size()));
  if (fresh) items_.push_back(item);
  return it->second;
}

namespace {

auto lower(std::vector<RatingMatrix::Entry>& row, RatingMatrix::Index item) {
  return std::lower_bound(row.begin(), row.end(), item,
                          [](const RatingMatrix::Entry& e, RatingMatrix::Index i) {
                            return e.index < i;
                          });
}

}  // namespace

std::optional<double> RatingMatrix::score(const UserId& user, const ItemId& item) const {
  auto u = find_user(user);
  auto i = find_item(item);
  if (!u || !i) return std::nullopt;
  const auto& r = rows_[*u];
  auto it = std::lower_bound(r.begin(), r.end(), *i,
                             [](const Entry& e, Index idx) { return e.index < idx; });
  if (it == r.end() || it->index != *i) return std::nullopt;
  return it->score;
}

double RatingMatrix::set(const UserId& user, const ItemId& item, double score) {
  const Index u = intern_user(user);
  const Index i = intern_item(item);
  const double stored = clamp_score(score);
  auto& r = rows_[u];
  auto it = lower(r, i);
  if (it != r.end() && it->index == i) {
    it->score = stored;
  } else {
    r.insert(it, Entry{i, stored});
    ++entries_;
  }
  ++revision_;
  return stored;
}

double RatingMatrix::add(const UserId& user, const ItemId& item, double delta) {
  return set(user, item, score(user, item).value_or(0.0) + delta);
}

std::span<const RatingMatrix::Entry> RatingMatrix::row(Index user) const {
  if (user >= rows_.size()) return {};
  return rows_[user];
}

std::vector<std::vector<RatingMatrix::Entry>> RatingMatrix::columns() const {
  std::vector<std::size_t> counts(items_.size(), 0);
  for (const auto& r : rows_)
    for (const auto& e : r) ++counts[e.index];
  std::vector<std::vector<Entry>> cols(items_.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i].reserve(counts[i]);
  // Users are visited in index order, so every column comes out sorted.
  for (Index u = 0; u < rows_.size(); ++u)
    for (const auto& e : rows_[u]) cols[e.index].push_back(Entry{u, e.score});
  return cols;
}

std::vector<std::tuple<UserId, ItemId, double>> RatingMatrix::triples() const {
  std::vector<std::tuple<UserId, ItemId, double>> out;
  out.reserve(entries_);
  for (Index u = 0; u < rows_.size(); ++u)
    for (const auto& e : rows_[u]) out.emplace_back(users_[u], items_[e.index], e.score);
  std::sort(out.begin(), out.end());
  return out;
}

bool RatingMatrix::same_contents(const RatingMatrix& other) const {
  return entries_ == other.entries_ && triples() == other.triples();
}

}  // namespace shelfrec
