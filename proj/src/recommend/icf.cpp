#include "shelfrec/recommend/icf.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

std::vector<Recommendation> icf_recommend(const SimilarityModel& model,
                                          const RatingMatrix& ratings, const UserId& user,
                                          std::span<const ItemId> cart, std::size_t top_n) {
  if (top_n == 0) fail(ErrorCode::invalid_argument, "top_n must be >= 1");
  if (model.empty()) return {};

  std::map<ItemId, double> seeds;
  if (auto u = ratings.find_user(user)) {
    for (const auto& e : ratings.row(*u)) seeds.emplace(ratings.item_at(e.index), e.score);
  }
  for (const auto& item : cart) seeds.try_emplace(item, 1.0);

  const std::size_t n = model.entity_count();
  std::vector<double> score(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<SimilarityModel::Index> touched;
  for (const auto& [item, weight] : seeds) {
    auto j = model.find(item.str());
    if (!j) continue;
    for (const auto& nb : model.neighbors(*j)) {
      if (!seen[nb.index]) {
        seen[nb.index] = 1;
        touched.push_back(nb.index);
      }
      score[nb.index] += nb.similarity * weight;
    }
  }

  const std::unordered_set<ItemId> in_cart(cart.begin(), cart.end());
  std::vector<Recommendation> out;
  for (auto i : touched) {
    if (score[i] <= 0.0) continue;
    ItemId id(model.id_at(i));
    if (in_cart.contains(id)) continue;
    out.push_back({std::move(id), score[i], RecSource::icf});
  }
  rank_and_truncate(out, top_n);
  return out;
}

}  // namespace shelfrec
