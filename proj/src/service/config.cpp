#include "shelfrec/service/config.hpp"

#include <cstdlib>
#include <fstream>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

using nlohmann::json;

void ServiceConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::invalid_argument, "config: " + what); };
  if (port < 0 || port > 65535) bad("port out of range");
  if (!(dwell_seconds > 0.0)) bad("dwell_seconds must be positive");
  if (top_n == 0) bad("top_n must be >= 1");
  if (page_size == 0) bad("page_size must be >= 1");
  if (random_count == 0) bad("random_count must be >= 1");
  if (k_neighbors == 0) bad("k_neighbors must be >= 1");
  if (snapshot_every == 0) bad("snapshot_every must be >= 1");
  if (data_dir.empty()) bad("data_dir must be set");
}

void apply_config_json(ServiceConfig& c, const json& doc) {
  try {
    c.host = doc.value("host", c.host);
    c.port = doc.value("port", c.port);
    c.data_dir = doc.value("data_dir", c.data_dir);
    c.layout_path = doc.value("layout_path", c.layout_path);
    c.dwell_seconds = doc.value("dwell_seconds", c.dwell_seconds);
    c.top_n = doc.value("top_n", c.top_n);
    c.page_size = doc.value("page_size", c.page_size);
    c.random_count = doc.value("random_count", c.random_count);
    c.k_neighbors = doc.value("k_neighbors", c.k_neighbors);
    c.seed = doc.value("seed", c.seed);
    c.snapshot_every = doc.value("snapshot_every", c.snapshot_every);
    c.sync_writes = doc.value("sync_writes", c.sync_writes);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("config: ") + e.what());
  }
}

namespace {

template <typename T>
T parse_number(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_floating_point_v<T>) {
      value = static_cast<T>(std::stod(text, &used));
    } else {
      value = static_cast<T>(std::stoull(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_argument, "config: bad value '" + text + "' for " + name);
  }
}

}  // namespace

void apply_env_overrides(ServiceConfig& c, const EnvLookup& lookup) {
  auto str = [&](const char* name, std::string& field) {
    if (auto v = lookup(name)) field = *v;
  };
  auto num = [&](const char* name, auto& field) {
    if (auto v = lookup(name)) field = parse_number<std::decay_t<decltype(field)>>(name, *v);
  };
  str("SHELFREC_HOST", c.host);
  num("SHELFREC_PORT", c.port);
  str("SHELFREC_DATA_DIR", c.data_dir);
  str("SHELFREC_LAYOUT", c.layout_path);
  num("SHELFREC_DWELL_SECONDS", c.dwell_seconds);
  num("SHELFREC_TOP_N", c.top_n);
  num("SHELFREC_PAGE_SIZE", c.page_size);
  num("SHELFREC_RANDOM_COUNT", c.random_count);
  num("SHELFREC_K_NEIGHBORS", c.k_neighbors);
  num("SHELFREC_SEED", c.seed);
  num("SHELFREC_SNAPSHOT_EVERY", c.snapshot_every);
  if (auto v = lookup("SHELFREC_SYNC_WRITES")) c.sync_writes = (*v == "1" || *v == "true");
}

ServiceConfig load_service_config(const std::optional<std::string>& path) {
  ServiceConfig config;
  if (path) {
    std::ifstream in(*path);
    if (!in) fail(ErrorCode::storage, "cannot open config file '" + *path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      fail(ErrorCode::parse_error, std::string("config file is not valid JSON: ") + e.what());
    }
    apply_config_json(config, doc);
  }
  apply_env_overrides(config, [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  });
  config.validate();
  return config;
}

}  // namespace shelfrec
