#include "shelfrec/bench/bench.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "shelfrec/bench/synthetic.hpp"
#include "shelfrec/bench/timing.hpp"
#include "shelfrec/core/errors.hpp"
#include "shelfrec/recommend/apriori.hpp"
#include "shelfrec/recommend/icf.hpp"
#include "shelfrec/recommend/icf_str.hpp"
#include "shelfrec/recommend/ucf.hpp"
#include "shelfrec/session/flow.hpp"
#include "shelfrec/similarity/similarity_model.hpp"

namespace shelfrec::bench {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string format_seconds(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream out;
  out << std::setprecision(4) << *v;
  return out.str();
}

BenchCheck ratio_check(std::string name, double lhs, double rhs, double factor, bool at_least,
                       const std::string& lhs_name, const std::string& rhs_name) {
  BenchCheck c;
  c.name = std::move(name);
  c.passed = at_least ? lhs >= factor * rhs : lhs < factor * rhs;
  std::ostringstream d;
  d << std::setprecision(4) << lhs_name << "=" << lhs << "s " << rhs_name << "=" << rhs
    << "s ratio=" << (rhs > 0 ? lhs / rhs : 0.0) << (at_least ? " (need >= " : " (need < ")
    << factor << ")";
  c.detail = d.str();
  return c;
}

std::string support_label(double s) {
  std::ostringstream out;
  out << s;
  return "Apriori(" + out.str() + ")";
}

std::optional<double> published_query_seconds(const std::string& algorithm) {
  if (algorithm == "ICF") return 0.0029;
  if (algorithm == "UCF") return 0.0019;
  if (algorithm == "ICF-STR") return 0.0031;
  if (algorithm == "Apriori(0.7)") return 0.21;
  if (algorithm == "Apriori(0.15)") return 7.45;
  return std::nullopt;
}

struct Probe {
  UserId user;
  std::vector<ItemId> cart;
};

std::vector<Probe> make_probes(const RatingMatrix& ratings, std::size_t count, std::uint64_t seed) {
  std::vector<Probe> probes;
  if (ratings.user_count() == 0 || ratings.item_count() == 0) return probes;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<RatingMatrix::Index> user(
      0, static_cast<RatingMatrix::Index>(ratings.user_count() - 1));
  std::uniform_int_distribution<RatingMatrix::Index> item(
      0, static_cast<RatingMatrix::Index>(ratings.item_count() - 1));
  std::uniform_int_distribution<int> cart_size(0, 3);
  for (std::size_t p = 0; p < count; ++p) {
    Probe probe{ratings.user_at(user(rng)), {}};
    for (int k = cart_size(rng); k > 0; --k) {
      ItemId i = ratings.item_at(item(rng));
      if (std::find(probe.cart.begin(), probe.cart.end(), i) == probe.cart.end())
        probe.cart.push_back(std::move(i));
    }
    probes.push_back(std::move(probe));
  }
  return probes;
}

// Per-query latency: each repetition runs the whole workload; the median of
// the per-repetition means is reported.
template <typename F>
double per_query_median(const std::vector<Probe>& probes, const BenchOptions& options, F&& query) {
  std::size_t sink = 0;
  auto workload = [&] {
    for (const auto& p : probes) sink += query(p);
  };
  auto runs = timed_runs(workload, options.repetitions, options.warmup);
  for (auto& r : runs) r /= static_cast<double>(std::max<std::size_t>(probes.size(), 1));
  volatile std::size_t keep = sink;
  (void)keep;
  return median(std::move(runs));
}

json list_summary(std::size_t non_empty, std::size_t total_items, std::size_t queries) {
  return json{{"queries", queries},
              {"non_empty", non_empty},
              {"mean_length", queries ? static_cast<double>(total_items) / static_cast<double>(queries) : 0.0},
              {"null_result", non_empty == 0}};
}

std::vector<std::string> ids_of(const std::vector<Recommendation>& recs) {
  std::vector<std::string> out;
  for (const auto& r : recs) out.push_back(r.item_id.str());
  return out;
}

GridCell cell(const std::string& scenario, const std::string& algorithm,
              const std::vector<Recommendation>& recs, std::string stage = {}) {
  GridCell c{scenario, algorithm, std::nullopt, std::move(stage)};
  if (!recs.empty()) c.items = ids_of(recs);
  return c;
}

}  // namespace

bool BenchReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BenchCheck& c) { return c.passed; });
}

const BenchRow* BenchReport::find_row(const std::string& algorithm) const {
  for (const auto& r : rows)
    if (r.algorithm == algorithm) return &r;
  return nullptr;
}

json BenchReport::to_json() const {
  json out{{"report", kind}, {"environment", environment}, {"dataset", dataset}};
  out["rows"] = json::array();
  for (const auto& r : rows)
    out["rows"].push_back(json{{"algorithm", r.algorithm},
                               {"parameters", r.parameters},
                               {"build_seconds", optional_number(r.build_seconds)},
                               {"per_query_seconds", optional_number(r.per_query_seconds)},
                               {"published_seconds", optional_number(r.published_seconds)},
                               {"repetitions", r.repetitions},
                               {"result", r.result}});
  out["checks"] = json::array();
  for (const auto& c : checks)
    out["checks"].push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["grid"] = json::array();
  for (const auto& g : grid)
    out["grid"].push_back(json{{"scenario", g.scenario},
                               {"algorithm", g.algorithm},
                               {"items", g.items ? json(*g.items) : json(nullptr)},
                               {"stage", g.stage}});
  out["all_passed"] = all_passed();
  return out;
}

std::string BenchReport::render() const {
  std::ostringstream out;
  out << "== " << kind << " ==\n";
  if (dataset.contains("name")) out << "dataset: " << dataset.dump() << "\n";
  out << "environment: " << environment.dump() << "\n";
  if (!rows.empty()) {
    out << std::left << std::setw(16) << "algorithm" << std::setw(14) << "build_s" << std::setw(14)
        << "per_query_s" << std::setw(12) << "published_s" << "result\n";
    for (const auto& r : rows)
      out << std::left << std::setw(16) << r.algorithm << std::setw(14) << format_seconds(r.build_seconds)
          << std::setw(14) << format_seconds(r.per_query_seconds) << std::setw(12)
          << format_seconds(r.published_seconds) << r.result.dump() << "\n";
  }
  for (const auto& g : grid) {
    out << g.scenario << " | " << std::left << std::setw(8) << g.algorithm << " | ";
    if (!g.items) {
      out << "NULL";
    } else {
      for (std::size_t i = 0; i < g.items->size(); ++i) out << (i ? ", " : "") << (*g.items)[i];
    }
    if (!g.stage.empty()) out << "  [" << g.stage << "]";
    out << "\n";
  }
  for (const auto& c : checks) out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  return out.str();
}

json environment_descriptor(unsigned threads) {
  std::string cpu = "unknown";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
#ifdef NDEBUG
  const char* build = "release";
#else
  const char* build = "debug";
#endif
  return json{{"cpu", cpu},
              {"hardware_threads", std::thread::hardware_concurrency()},
              {"bench_threads", threads},
              {"compiler", __VERSION__},
              {"build", build}};
}

json BenchDataset::descriptor() const {
  return json{{"name", name},
              {"source", source},
              {"users", ratings.user_count()},
              {"items", ratings.item_count()},
              {"ratings", record_count},
              {"file_records", total_lines},
              {"user_fraction", user_fraction}};
}

std::string movielens_fetch_instructions() {
  return "MovieLens-1M not found. Fetch it with:\n"
         "  curl -LO https://files.grouplens.org/datasets/movielens/ml-1m.zip\n"
         "  unzip ml-1m.zip\n"
         "then pass --data ml-1m/ratings.dat (or set SHELFREC_ML1M).";
}

BenchDataset load_bench_dataset(const std::string& path, double user_fraction, std::uint64_t seed) {
  if (!std::ifstream(path)) fail(ErrorCode::not_found, "'" + path + "': " + movielens_fetch_instructions());
  MovieLensLoadOptions opts;
  opts.user_fraction = user_fraction;
  opts.seed = seed;
  auto loaded = load_movielens(path, opts);
  BenchDataset data;
  data.name = path.find("ml-1m") != std::string::npos ? "MovieLens-1M" : "ratings";
  data.source = path;
  data.ratings = std::move(loaded.ratings);
  data.record_count = loaded.record_count;
  data.total_lines = loaded.total_lines;
  data.user_fraction = user_fraction;
  return data;
}

BenchReport bench_build_speed(const BenchDataset& data, const BenchOptions& options) {
  BenchReport report;
  report.kind = "build-speed";
  report.environment = environment_descriptor(options.threads);
  report.dataset = data.descriptor();

  std::size_t item_pairs = 0, user_pairs = 0;
  auto icf_runs = timed_runs([&] { item_pairs = build_item_model(data.ratings, options.threads).pair_count(); },
                             options.repetitions, options.warmup);
  auto ucf_runs = timed_runs([&] { user_pairs = build_user_model(data.ratings, options.threads).pair_count(); },
                             options.repetitions, options.warmup);
  const double icf = median(icf_runs);
  const double ucf = median(ucf_runs);
  const json params{{"threads", options.threads}};

  report.rows.push_back({"ICF", params, icf, std::nullopt, 180.25, options.repetitions,
                         json{{"model", "item-item cosine"}, {"pairs", item_pairs}}});
  report.rows.push_back({"UCF", params, ucf, std::nullopt, 381.27, options.repetitions,
                         json{{"model", "user-user cosine"}, {"pairs", user_pairs}}});
  // ICF-STR serves from the item-item model; its build is that build.
  report.rows.push_back({"ICF-STR", params, icf, std::nullopt, 180.25, options.repetitions,
                         json{{"model", "item-item cosine (shared with ICF)"}, {"pairs", item_pairs}}});

  report.checks.push_back(ratio_check("icf_build_below_0.8x_ucf", icf, ucf, 0.8, false, "ICF", "UCF"));
  const BenchRow* str = report.find_row("ICF-STR");
  report.checks.push_back({"icf_str_build_equals_icf", str->build_seconds == icf,
                           "ICF-STR reuses the ICF item-item model"});
  return report;
}

BenchReport bench_query_speed(const BenchDataset& data, const BenchOptions& options) {
  BenchReport report;
  report.kind = "query-speed";
  report.environment = environment_descriptor(options.threads);
  report.dataset = data.descriptor();

  const auto& ratings = data.ratings;
  const SimilarityModel item_model = build_item_model(ratings, options.threads);
  const SimilarityModel user_model = build_user_model(ratings, options.threads);
  const StoreLayout layout = layout_from_catalog(ratings);
  const auto transactions = binarize_transactions(ratings, options.like_threshold);
  const auto probes = make_probes(ratings, options.probes, options.seed);
  const std::size_t top_n = options.top_n;

  auto summarize = [&](auto&& query) {
    std::size_t non_empty = 0, total = 0;
    for (const auto& p : probes) {
      const std::size_t n = query(p);
      non_empty += n > 0;
      total += n;
    }
    return list_summary(non_empty, total, probes.size());
  };

  auto icf_query = [&](const Probe& p) {
    return icf_recommend(item_model, ratings, p.user, p.cart, top_n).size();
  };
  auto ucf_query = [&](const Probe& p) {
    return ucf_recommend(user_model, ratings, p.user, top_n, options.k_neighbors).size();
  };
  std::uint64_t str_counter = 0;
  auto str_query = [&](const Probe& p) {
    StrContext ctx;
    ctx.random_seed = options.seed ^ (0x9e3779b97f4a7c15ULL * ++str_counter);
    return icf_str_recommend(item_model, ratings, p.user, p.cart, top_n, ctx, layout)
        .recommendations.size();
  };

  const json base{{"top_n", top_n}, {"probes", probes.size()}};
  auto add_row = [&](const std::string& name, json params, double seconds, json result) {
    report.rows.push_back(
        {name, std::move(params), std::nullopt, seconds, published_query_seconds(name), options.repetitions, std::move(result)});
  };

  const double icf = per_query_median(probes, options, icf_query);
  add_row("ICF", base, icf, summarize(icf_query));
  json ucf_params = base;
  ucf_params["k_neighbors"] = options.k_neighbors;
  const double ucf = per_query_median(probes, options, ucf_query);
  add_row("UCF", ucf_params, ucf, summarize(ucf_query));
  const double str = per_query_median(probes, options, str_query);
  str_counter = 0;
  add_row("ICF-STR", base, str, summarize(str_query));

  std::optional<double> apriori_015;
  std::optional<std::size_t> rules_07;
  for (double support : options.min_supports) {
    AprioriOptions ao;
    ao.min_support = support;
    ao.min_confidence = options.min_confidence;
    // Mining is part of each query; one probe per repetition.
    std::size_t next = 0, rule_count = 0, itemset_count = 0, recs = 0;
    auto one_query = [&] {
      const auto rules = apriori_mine(transactions, ao);
      const Probe& p = probes[next++ % probes.size()];
      rule_count = rules.rules.size();
      itemset_count = rules.frequent_itemsets.size();
      recs = apriori_recommend(rules, p.cart, top_n).size();
    };
    double seconds = 0.0;
    if (!probes.empty()) seconds = median(timed_runs(one_query, options.repetitions, options.warmup));
    json params{{"min_support", support}, {"min_confidence", options.min_confidence},
                {"like_threshold", options.like_threshold}, {"top_n", top_n},
                {"transactions", transactions.size()}};
    add_row(support_label(support), std::move(params), seconds,
            json{{"rules", rule_count}, {"frequent_itemsets", itemset_count},
                 {"last_list_length", recs}, {"null_result", rule_count == 0}});
    if (std::abs(support - 0.15) < 1e-12) apriori_015 = seconds;
    if (std::abs(support - 0.7) < 1e-12) rules_07 = rule_count;
  }

  if (apriori_015)
    report.checks.push_back(
        ratio_check("apriori_0.15_at_least_100x_icf", *apriori_015, icf, 100.0, true, "Apriori(0.15)", "ICF"));
  report.checks.push_back(ratio_check("icf_str_within_2x_icf", str, icf, 2.0 + 1e-12, false, "ICF-STR", "ICF"));
  if (rules_07)
    report.checks.push_back({"apriori_0.7_yields_no_rules", *rules_07 == 0,
                             std::to_string(*rules_07) + " rules at min_support 0.7"});
  return report;
}

BenchReport bench_cold_start(const StoreLayout& layout, const ShelfId& shelf, const BenchOptions& options) {
  const Shelf* target = layout.find_shelf(shelf);
  if (!target) fail(ErrorCode::not_found, "unknown shelf '" + shelf.str() + "'");
  if (layout.items().empty()) fail(ErrorCode::invalid_argument, "layout has no items");

  BenchReport report;
  report.kind = "cold-start";
  report.environment = environment_descriptor(1);
  report.dataset = json{{"name", layout.name()},
                        {"shelves", layout.shelves().size()},
                        {"items", layout.items().size()},
                        {"ratings", 0},
                        {"dwell_shelf", shelf.str()}};

  const RatingMatrix empty;
  const SimilarityModel item_model = build_item_model(empty);
  const SimilarityModel user_model = build_user_model(empty);
  const auto rules = apriori_mine({}, AprioriOptions{0.15, options.min_confidence, std::nullopt});
  const UserId user("cold-start-user");
  const std::size_t top_n = options.top_n;

  auto run_all = [&](const std::string& scenario, const std::vector<ItemId>& cart,
                     const StrContext& ctx) {
    report.grid.push_back(cell(scenario, "Apriori", apriori_recommend(rules, cart, top_n)));
    report.grid.push_back(cell(scenario, "UCF", ucf_recommend(user_model, empty, user, top_n, options.k_neighbors)));
    report.grid.push_back(cell(scenario, "ICF", icf_recommend(item_model, empty, user, cart, top_n)));
    auto str = icf_str_recommend(item_model, empty, user, cart, top_n, ctx, layout);
    report.grid.push_back(cell(scenario, "ICF-STR", str.recommendations, std::string(to_string(str.stage))));
    return str;
  };
  auto baselines_null = [&](const std::string& scenario) {
    return std::all_of(report.grid.begin(), report.grid.end(), [&](const GridCell& c) {
      return c.scenario != scenario || c.algorithm == "ICF-STR" || !c.items;
    });
  };

  // Scenario 1: no dwell anywhere.
  StrContext random_ctx;
  random_ctx.random_seed = options.seed;
  const auto s1 = run_all("no-dwell", {}, random_ctx);
  const auto s1_again = icf_str_recommend(item_model, empty, user, {}, top_n, random_ctx, layout);
  const bool from_catalog = std::all_of(s1.recommendations.begin(), s1.recommendations.end(),
                                        [&](const Recommendation& r) { return layout.find_item(r.item_id); });
  report.checks.push_back({"no_dwell_baselines_null", baselines_null("no-dwell"), "Apriori, UCF and ICF return nothing"});
  report.checks.push_back({"no_dwell_icf_str_non_empty_from_catalog",
                           !s1.recommendations.empty() && from_catalog && s1.stage == StrStage::random,
                           std::to_string(s1.recommendations.size()) + " random catalog items"});
  report.checks.push_back({"no_dwell_icf_str_deterministic", s1.recommendations == s1_again.recommendations,
                           "same seed, same list"});

  // Scenario 2: qualifying dwell at the shelf, then a purchase elsewhere.
  Session session;
  session.session_id = SessionId("bench");
  session.user_id = user;
  double min_x = 0.0;
  for (const auto& s : layout.shelves()) min_x = std::min(min_x, s.zone.min_corner.x);
  const Point2 outside{min_x - 5.0, target->zone.min_corner.y};
  const Point2 inside{(target->zone.min_corner.x + target->zone.max_corner.x) / 2.0,
                      (target->zone.min_corner.y + target->zone.max_corner.y) / 2.0};
  double t = 0.0;
  advance(session, outside, t, layout);
  for (int step = 0; step <= 24; ++step) advance(session, inside, t = 1.0 + 0.5 * step, layout);
  advance(session, outside, t += 1.0, layout);
  const Item* other = nullptr;
  for (const auto& item : layout.items())
    if (item.shelf_id != shelf) {
      other = &item;
      break;
    }
  if (other) {
    handle_pickup(session, other->item_id, layout);
    handle_purchase_decision(session, other->item_id, true, layout);
  }
  StrContext dwell_ctx;
  dwell_ctx.random_seed = options.seed;
  dwell_ctx.last_qualifying_shelf = session.last_qualifying_shelf;
  const auto s2 = run_all("dwell", session.cart, dwell_ctx);

  std::vector<std::string> expected;
  for (const auto& id : target->item_ids)
    if (!session.in_cart(id) && expected.size() < top_n) expected.push_back(id.str());
  const auto got = ids_of(s2.recommendations);
  report.checks.push_back({"dwell_baselines_null", baselines_null("dwell"), "Apriori, UCF and ICF return nothing"});
  report.checks.push_back({"dwell_icf_str_equals_shelf",
                           session.last_qualifying_shelf == shelf && got == expected && s2.stage == StrStage::shelf,
                           "expected the " + std::to_string(expected.size()) + " items of shelf '" + shelf.str() +
                               "' in stocking order"});
  return report;
}

}  // namespace shelfrec::bench
