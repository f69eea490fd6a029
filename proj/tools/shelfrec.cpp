#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "shelfrec/bench/bench.hpp"
#include "shelfrec/bench/synthetic.hpp"
#include "shelfrec/core/errors.hpp"
#include "shelfrec/core/layout.hpp"
#include "shelfrec/service/config.hpp"
#include "shelfrec/service/http_server.hpp"
#include "shelfrec/service/shop_service.hpp"

namespace {

using namespace shelfrec;

constexpr int kOrderingFailed = 1;
constexpr int kError = 2;

int finish(const bench::BenchReport& report, const std::string& report_out) {
  std::cout << report.render();
  if (!report_out.empty()) {
    std::ofstream out(report_out, std::ios::trunc);
    if (!out) fail(ErrorCode::storage, "cannot write report '" + report_out + "'");
    out << report.to_json().dump(2) << "\n";
  }
  return report.all_passed() ? 0 : kOrderingFailed;
}

std::string dataset_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SHELFREC_ML1M")) return env;
  fail(ErrorCode::not_found, bench::movielens_fetch_instructions());
}

int serve(const std::optional<std::string>& config_path) {
  ServiceConfig config = load_service_config(config_path);
  StoreLayout layout = config.layout_path.empty() ? bench::demo_store_layout()
                                                  : load_layout_file(config.layout_path);
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ShopService service(config, std::move(layout));
  HttpServer server(service);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  std::cerr << "shelfrec listening on " << config.host << ":" << config.port << "\n";
  const bool ok = server.listen(config.host, config.port);
  if (!ok) {
    std::cerr << "error: cannot bind " << config.host << ":" << config.port << "\n";
    pthread_kill(waiter.native_handle(), SIGTERM);
  }
  waiter.join();
  return ok ? 0 : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position-aware shopping recommender"};
  app.require_subcommand(1);

  bench::BenchOptions options;
  std::string data, report_out, layout_path, shelf = "housewares", out_path;
  double user_fraction = 1.0;
  double min_support = -1.0;
  std::optional<std::string> config_path;
  bench::SyntheticSpec spec;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--top-n", options.top_n, "Recommendations per query")->check(CLI::PositiveNumber);
    sub->add_option("--seed", options.seed, "Seed for probes and random fallbacks");
    sub->add_option("--report-out", report_out, "Write the JSON report here");
    sub->add_option("--repetitions", options.repetitions, "Timed repetitions")->check(CLI::Range(5, 1000));
  };
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--data", data, "ratings.dat path (defaults to $SHELFREC_ML1M)");
    sub->add_option("--user-fraction", user_fraction, "Deterministic user subsample")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--threads", options.threads, "Model build threads")->check(CLI::PositiveNumber);
  };

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", config_path, "JSON config file (SHELFREC_* variables override it)");

  auto* query_cmd = app.add_subcommand("bench-query", "Per-query latency of every algorithm");
  add_common(query_cmd);
  add_data(query_cmd);
  query_cmd->add_option("--min-support", min_support, "Single Apriori min_support (default 0.7 and 0.15)")
      ->check(CLI::Range(0.0, 1.0));
  query_cmd->add_option("--probes", options.probes, "Random (user, cart) probes")->check(CLI::PositiveNumber);

  auto* build_cmd = app.add_subcommand("bench-build", "Model build time, item-item vs user-user");
  add_common(build_cmd);
  add_data(build_cmd);

  auto* cold_cmd = app.add_subcommand("bench-coldstart", "Empty-store results with and without dwell");
  add_common(cold_cmd);
  cold_cmd->add_option("--layout", layout_path, "Store layout (defaults to the demo store)");
  cold_cmd->add_option("--shelf", shelf, "Shelf to dwell at");

  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a MovieLens-1M-shaped ratings file");
  gen_cmd->add_option("--out", out_path, "Output path")->required();
  gen_cmd->add_option("--seed", spec.seed, "Generator seed");
  gen_cmd->add_option("--users", spec.users, "User count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--ratings", spec.target_ratings, "Approximate rating count");

  auto* validate_cmd = app.add_subcommand("validate-layout", "Check a store layout document");
  validate_cmd->add_option("layout", layout_path, "Layout file")->required();

  auto* demo_cmd = app.add_subcommand("demo-layout", "Print the built-in demo store layout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (min_support >= 0.0) options.min_supports = {min_support};
    if (*serve_cmd) return serve(config_path);
    if (*query_cmd) {
      auto dataset = bench::load_bench_dataset(dataset_path(data), user_fraction, options.seed);
      return finish(bench::bench_query_speed(dataset, options), report_out);
    }
    if (*build_cmd) {
      auto dataset = bench::load_bench_dataset(dataset_path(data), user_fraction, options.seed);
      return finish(bench::bench_build_speed(dataset, options), report_out);
    }
    if (*cold_cmd) {
      StoreLayout layout = layout_path.empty() ? bench::demo_store_layout() : load_layout_file(layout_path);
      return finish(bench::bench_cold_start(layout, ShelfId(shelf), options), report_out);
    }
    if (*gen_cmd) {
      bench::write_synthetic_movielens(out_path, spec);
      return 0;
    }
    if (*validate_cmd) {
      const auto violations = validate_layout(load_layout_file(layout_path));
      for (const auto& v : violations)
        std::cout << to_string(v.kind) << " " << v.subject << ": " << v.detail << "\n";
      if (violations.empty()) std::cout << "ok\n";
      return violations.empty() ? 0 : kOrderingFailed;
    }
    if (*demo_cmd) {
      std::cout << serialize_layout(bench::demo_store_layout());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return 0;
}
