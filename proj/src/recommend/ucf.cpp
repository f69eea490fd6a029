#include "shelfrec/recommend/ucf.hpp"

#include <algorithm>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

std::vector<Recommendation> ucf_recommend(const SimilarityModel& model,
                                          const RatingMatrix& ratings, const UserId& user,
                                          std::size_t top_n, std::size_t k_neighbors) {
  if (top_n == 0) fail(ErrorCode::invalid_argument, "top_n must be >= 1");
  if (k_neighbors == 0) fail(ErrorCode::invalid_argument, "k_neighbors must be >= 1");
  auto target = ratings.find_user(user);
  auto self = model.find(user.str());
  if (!target || !self) return {};

  struct Peer {
    const std::string* id;
    double similarity;
  };
  std::vector<Peer> peers;
  for (const auto& nb : model.neighbors(*self)) {
    if (nb.index == *self || nb.similarity <= 0.0) continue;
    peers.push_back({&model.id_at(nb.index), nb.similarity});
  }
  auto by_rank = [](const Peer& a, const Peer& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return *a.id < *b.id;
  };
  const std::size_t k = std::min(k_neighbors, peers.size());
  std::partial_sort(peers.begin(), peers.begin() + static_cast<std::ptrdiff_t>(k), peers.end(),
                    by_rank);
  peers.resize(k);

  std::vector<char> rated(ratings.item_count(), 0);
  for (const auto& e : ratings.row(*target)) rated[e.index] = 1;

  std::vector<double> score(ratings.item_count(), 0.0);
  std::vector<char> seen(ratings.item_count(), 0);
  std::vector<RatingMatrix::Index> touched;
  for (const auto& peer : peers) {
    auto v = ratings.find_user(UserId(*peer.id));
    if (!v) continue;
    for (const auto& e : ratings.row(*v)) {
      if (rated[e.index]) continue;
      if (!seen[e.index]) {
        seen[e.index] = 1;
        touched.push_back(e.index);
      }
      score[e.index] += peer.similarity * e.score;
    }
  }

  std::vector<Recommendation> out;
  for (auto i : touched)
    if (score[i] > 0.0) out.push_back({ratings.item_at(i), score[i], RecSource::ucf});
  rank_and_truncate(out, top_n);
  return out;
}

}  // namespace shelfrec
