#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

namespace shelfrec::bench {

double median(std::vector<double> values);

template <typename F>
double seconds_of(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Runs f `warmup` times untimed, then `repetitions` times timed.
template <typename F>
std::vector<double> timed_runs(F&& f, std::size_t repetitions, std::size_t warmup = 1) {
  for (std::size_t i = 0; i < warmup; ++i) f();
  std::vector<double> out;
  out.reserve(repetitions);
  for (std::size_t i = 0; i < repetitions; ++i) out.push_back(seconds_of(f));
  return out;
}

}  // namespace shelfrec::bench
