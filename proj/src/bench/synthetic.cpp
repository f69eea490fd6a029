#include "shelfrec/bench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "shelfrec/core/errors.hpp"

namespace shelfrec::bench {

std::vector<MovieLensRecord> generate_synthetic_movielens(const SyntheticSpec& spec) {
  if (spec.rated_movies == 0 || spec.rated_movies > spec.movie_id_space || spec.users == 0 ||
      spec.min_per_user > spec.rated_movies || spec.taste_groups == 0)
    fail(ErrorCode::invalid_argument, "inconsistent synthetic dataset spec");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Movie ids: a random subset of 1..movie_id_space that always includes the
  // largest id, so the id space matches the rated-movie count of the source.
  std::vector<std::int64_t> ids(spec.movie_id_space);
  std::iota(ids.begin(), ids.end(), 1);
  std::shuffle(ids.begin(), ids.end() - 1, rng);
  std::vector<std::int64_t> movies(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(spec.rated_movies - 1));
  movies.push_back(static_cast<std::int64_t>(spec.movie_id_space));

  const std::size_t m = movies.size();
  std::vector<double> weight(m), quality(m);
  std::vector<std::size_t> group(m);
  std::uniform_int_distribution<std::size_t> pick_group(0, spec.taste_groups - 1);
  std::vector<std::size_t> rank(m);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  for (std::size_t i = 0; i < m; ++i) {
    weight[i] = 1.0 / std::pow(static_cast<double>(rank[i]) + 40.0, 1.0);
    const double popularity = 1.0 - static_cast<double>(rank[i]) / static_cast<double>(m);
    quality[i] = 2.7 + 0.9 * popularity + 0.45 * normal(rng);
    group[i] = pick_group(rng);
  }

  // Heavy-tailed activity scaled so the total lands near target_ratings.
  std::vector<double> activity(spec.users);
  std::lognormal_distribution<double> lognormal(0.0, 1.0);
  for (auto& a : activity) a = lognormal(rng);
  const double extra_total =
      static_cast<double>(spec.target_ratings) - static_cast<double>(spec.min_per_user * spec.users);
  const double scale = std::max(0.0, extra_total) / std::accumulate(activity.begin(), activity.end(), 0.0);
  const auto cap = static_cast<std::size_t>(0.6 * static_cast<double>(m));

  std::vector<MovieLensRecord> out;
  out.reserve(spec.target_ratings + spec.users);
  std::vector<std::pair<double, std::size_t>> keys(m);
  for (std::size_t u = 0; u < spec.users; ++u) {
    const std::size_t count = std::clamp<std::size_t>(
        spec.min_per_user + static_cast<std::size_t>(std::llround(activity[u] * scale)),
        spec.min_per_user, std::max(cap, spec.min_per_user));
    const std::size_t taste = pick_group(rng);
    const double bias = 0.35 * normal(rng);
    // Weighted sampling without replacement (exponential keys).
    for (std::size_t i = 0; i < m; ++i) {
      const double w = weight[i] * (group[i] == taste ? 8.0 : 1.0);
      keys[i] = {std::log(std::max(unit(rng), 1e-300)) / w, i};
    }
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(count - 1), keys.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t i = keys[k].second;
      const double affinity = group[i] == taste ? 0.9 : -0.2;
      const double raw = quality[i] + bias + affinity + 0.8 * normal(rng);
      MovieLensRecord r;
      r.user_id = static_cast<std::int64_t>(u + 1);
      r.movie_id = movies[i];
      r.rating = static_cast<int>(std::clamp<long>(std::lround(raw), 1, 5));
      r.timestamp = 956703932 + static_cast<std::int64_t>(unit(rng) * 3.0e7);
      out.push_back(r);
    }
  }
  return out;
}

void write_synthetic_movielens(const std::string& path, const SyntheticSpec& spec) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::storage, "cannot write '" + path + "'");
  for (const auto& r : generate_synthetic_movielens(spec)) out << format_movielens_line(r) << '\n';
  if (!out) fail(ErrorCode::storage, "failed writing '" + path + "'");
}

namespace {

Item make_item(const char* id, const char* name, const char* shelf, const char* price) {
  return Item{ItemId(id), name, ShelfId(shelf), {{"price", price}}};
}

}  // namespace

StoreLayout demo_store_layout() {
  // Shelves along two walls; each zone is the 3 m x 1.5 m strip in front.
  auto zone = [](double x, double y) { return ShelfZone{{x, y}, {x + 3.0, y + 1.5}}; };
  std::vector<Item> items{
      make_item("mug", "Mug", "housewares", "3.50"),
      make_item("band-aid", "Band-aid", "housewares", "2.20"),
      make_item("disinfectant", "Disinfectant", "housewares", "4.80"),
      make_item("coffee", "Coffee", "housewares", "7.90"),
      make_item("slippers", "Slippers", "housewares", "9.99"),
      make_item("shower-gel", "Shower gel", "bath", "4.25"),
      make_item("shampoo", "Shampoo", "bath", "5.10"),
      make_item("toothpaste", "Toothpaste", "bath", "2.75"),
      make_item("towel", "Towel", "bath", "8.40"),
      make_item("apple", "Apple", "produce", "0.60"),
      make_item("banana", "Banana", "produce", "0.35"),
      make_item("orange", "Orange", "produce", "0.70"),
      make_item("tomato", "Tomato", "produce", "0.50"),
      make_item("milk", "Milk", "dairy", "1.40"),
      make_item("yogurt", "Yogurt", "dairy", "0.90"),
      make_item("cheese", "Cheese", "dairy", "4.60"),
      make_item("butter", "Butter", "dairy", "2.30"),
      make_item("chips", "Potato chips", "snacks", "1.99"),
      make_item("cookies", "Cookies", "snacks", "2.49"),
      make_item("chocolate", "Chocolate bar", "snacks", "1.29"),
      make_item("water", "Mineral water", "beverages", "0.80"),
      make_item("juice", "Orange juice", "beverages", "2.10"),
      make_item("soda", "Soda", "beverages", "1.10"),
      make_item("tea", "Green tea", "beverages", "3.30"),
  };
  auto stock = [&](const char* shelf) {
    std::vector<ItemId> ids;
    for (const auto& item : items)
      if (item.shelf_id.str() == shelf) ids.push_back(item.item_id);
    return ids;
  };
  std::vector<Shelf> shelves{
      {ShelfId("housewares"), stock("housewares"), zone(1.0, 1.0)},
      {ShelfId("bath"), stock("bath"), zone(6.0, 1.0)},
      {ShelfId("produce"), stock("produce"), zone(11.0, 1.0)},
      {ShelfId("dairy"), stock("dairy"), zone(1.0, 8.0)},
      {ShelfId("snacks"), stock("snacks"), zone(6.0, 8.0)},
      {ShelfId("beverages"), stock("beverages"), zone(11.0, 8.0)},
  };
  return StoreLayout("demo-supermarket", std::move(shelves), std::move(items));
}

StoreLayout layout_from_catalog(const RatingMatrix& ratings, std::size_t per_shelf) {
  if (per_shelf == 0) fail(ErrorCode::invalid_argument, "per_shelf must be >= 1");
  std::vector<ItemId> ids;
  for (RatingMatrix::Index i = 0; i < ratings.item_count(); ++i) ids.push_back(ratings.item_at(i));
  std::sort(ids.begin(), ids.end());
  std::vector<Shelf> shelves;
  std::vector<Item> items;
  const std::size_t columns = 10;
  for (std::size_t start = 0; start < ids.size(); start += per_shelf) {
    const std::size_t k = shelves.size();
    ShelfId shelf("shelf-" + std::to_string(k + 1));
    const double x = 4.0 * static_cast<double>(k % columns);
    const double y = 3.0 * static_cast<double>(k / columns);
    Shelf s{shelf, {}, ShelfZone{{x, y}, {x + 3.0, y + 1.5}}};
    for (std::size_t i = start; i < std::min(ids.size(), start + per_shelf); ++i) {
      s.item_ids.push_back(ids[i]);
      items.push_back(Item{ids[i], "item " + ids[i].str(), shelf, {}});
    }
    shelves.push_back(std::move(s));
  }
  return StoreLayout("catalog", std::move(shelves), std::move(items));
}

}  // namespace shelfrec::bench
