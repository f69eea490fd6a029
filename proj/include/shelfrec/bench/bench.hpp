#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shelfrec/core/layout.hpp"
#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/persist/movielens.hpp"

namespace shelfrec::bench {

struct BenchRow {
  std::string algorithm;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<double> build_seconds;
  std::optional<double> per_query_seconds;
  std::optional<double> published_seconds;  // reported next to the measurement, never asserted
  std::size_t repetitions = 0;
  nlohmann::json result = nlohmann::json::object();
};

struct BenchCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// One cell of the cold-start grid; items unset means a NULL result.
struct GridCell {
  std::string scenario;
  std::string algorithm;
  std::optional<std::vector<std::string>> items;
  std::string stage;
};

struct BenchReport {
  std::string kind;
  nlohmann::json environment = nlohmann::json::object();
  nlohmann::json dataset = nlohmann::json::object();
  std::vector<BenchRow> rows;
  std::vector<BenchCheck> checks;
  std::vector<GridCell> grid;

  bool all_passed() const;
  nlohmann::json to_json() const;
  std::string render() const;
  const BenchRow* find_row(const std::string& algorithm) const;
};

nlohmann::json environment_descriptor(unsigned threads);

struct BenchOptions {
  std::size_t repetitions = 5;
  std::size_t warmup = 1;
  std::size_t probes = 1000;
  std::size_t top_n = 10;
  std::uint64_t seed = 42;
  std::vector<double> min_supports{0.7, 0.15};
  double min_confidence = 0.5;
  int like_threshold = kDefaultLikeThreshold;
  std::size_t k_neighbors = 20;
  unsigned threads = 1;
};

struct BenchDataset {
  std::string name;
  std::string source;
  RatingMatrix ratings;
  std::size_t record_count = 0;
  std::size_t total_lines = 0;
  double user_fraction = 1.0;

  nlohmann::json descriptor() const;
};

/// Loads a ratings.dat-style file. A missing file fails with instructions
/// for fetching MovieLens-1M.
BenchDataset load_bench_dataset(const std::string& path, double user_fraction = 1.0,
                                std::uint64_t seed = 0);

std::string movielens_fetch_instructions();

/// Times full item-item and user-user model builds.
BenchReport bench_build_speed(const BenchDataset& data, const BenchOptions& options);

/// Times single recommendations for ICF, UCF, ICF-STR and Apriori at each
/// min_support. Apriori mines its rules as part of every query.
BenchReport bench_query_speed(const BenchDataset& data, const BenchOptions& options);

/// Runs every algorithm against an empty rating store, first with no dwell
/// and then after a qualifying dwell at `shelf`.
BenchReport bench_cold_start(const StoreLayout& layout, const ShelfId& shelf,
                             const BenchOptions& options);

}  // namespace shelfrec::bench
