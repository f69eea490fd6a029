#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

namespace shelfrec {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "shelfrec-data";  // events.log and ratings.snapshot live here
  std::string layout_path;                 // store catalog/layout document

  double dwell_seconds = 10.0;
  std::size_t top_n = 10;
  std::size_t page_size = 5;
  std::size_t random_count = 5;
  std::size_t k_neighbors = 20;
  std::uint64_t seed = 42;
  std::size_t snapshot_every = 1000;
  bool sync_writes = false;

  std::string event_log_path() const { return data_dir + "/events.log"; }
  std::string snapshot_path() const { return data_dir + "/ratings.snapshot"; }

  /// Throws invalid_argument on out-of-range values.
  void validate() const;
};

void apply_config_json(ServiceConfig& config, const nlohmann::json& doc);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// SHELFREC_HOST, SHELFREC_PORT, SHELFREC_DATA_DIR, SHELFREC_LAYOUT,
/// SHELFREC_DWELL_SECONDS, SHELFREC_TOP_N, SHELFREC_PAGE_SIZE,
/// SHELFREC_RANDOM_COUNT, SHELFREC_K_NEIGHBORS, SHELFREC_SEED,
/// SHELFREC_SNAPSHOT_EVERY, SHELFREC_SYNC_WRITES.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& lookup);

/// File (optional) first, then the process environment.
ServiceConfig load_service_config(const std::optional<std::string>& path);

}  // namespace shelfrec
