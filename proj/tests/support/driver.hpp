#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "schema.hpp"
#include "shelfrec/service/shop_service.hpp"

namespace driver {

struct FuzzStats {
  std::size_t sessions = 0;
  std::size_t requests = 0;
  std::size_t purchases = 0;          // info-panel buys
  std::size_t panels_opened = 0;
  std::size_t exhausted = 0;          // buys that left no uncarted item
  std::size_t shelf_panels = 0;
  std::size_t random_panels = 0;
  std::size_t icf_panels = 0;
  std::size_t expected_errors = 0;
};

/// Drives one random session through the service API: zone walks with and
/// without long dwells, pickups, buys, put-backs, panel purchases, dismissals
/// and an optional checkout. Every response is checked against the API
/// schemas and the flow rules; problems are appended to `problems`.
void fuzz_session(shelfrec::ShopService& service, std::mt19937_64& rng,
                  const schema::Validator& schemas, const std::string& user, FuzzStats& stats,
                  std::vector<std::string>& problems);

/// The headless walkthrough: dwell 12 s at `dwell_shelf`, pick up and buy
/// `bought`, accept the first recommendation, check out. Returns the
/// session id.
std::string scripted_walkthrough(shelfrec::ShopService& service, const std::string& user,
                                 const std::string& dwell_shelf, const std::string& bought);

}  // namespace driver
