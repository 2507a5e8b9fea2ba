#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "scramble/errors.hpp"
#include "scramble/rng.hpp"

namespace scramble {

// Ensemble-averaged time series. err holds standard errors of the mean.
struct Series {
  std::vector<double> t;
  std::vector<double> mean;
  std::vector<double> err;
  std::size_t L = 0;
  std::uint64_t trajectories = 0;
  std::uint64_t seed = 0;

  std::size_t size() const { return t.size(); }
};

using SizeSeries = Series;

inline unsigned resolve_threads(unsigned threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(index, rng, out) for every trajectory and averages the integer
// observables it writes into out. Sums are exact integers, so the result is
// independent of the thread count and of scheduling.
template <class Fn>
Series run_integer_ensemble(std::uint64_t trajectories, std::uint64_t seed, std::vector<double> times,
                            unsigned threads, Fn&& fn) {
  if (trajectories == 0) throw InvalidArgument("ensemble needs at least one trajectory");
  const std::size_t n = times.size();
  const unsigned nt = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), trajectories));
  std::vector<std::vector<std::int64_t>> sums(nt, std::vector<std::int64_t>(n, 0));
  std::vector<std::vector<std::uint64_t>> squares(nt, std::vector<std::uint64_t>(n, 0));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&](unsigned w) {
    std::vector<std::int64_t> out(n);
    try {
      for (;;) {
        std::uint64_t idx = next.fetch_add(1);
        if (idx >= trajectories) break;
        Philox rng(seed, idx);
        fn(idx, rng, std::span<std::int64_t>(out));
        for (std::size_t r = 0; r < n; ++r) {
          std::int64_t v = out[r];
          std::uint64_t v2 = 0;
          std::uint64_t av = static_cast<std::uint64_t>(v < 0 ? -v : v);
          if (__builtin_mul_overflow(av, av, &v2) || __builtin_add_overflow(squares[w][r], v2, &squares[w][r]) ||
              __builtin_add_overflow(sums[w][r], v, &sums[w][r]))
            throw GuardViolation("ensemble accumulator overflow");
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(trajectories);
    }
  };

  if (nt == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nt; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Series s;
  s.t = std::move(times);
  s.mean.resize(n);
  s.err.resize(n);
  s.trajectories = trajectories;
  s.seed = seed;
  const long double N = static_cast<long double>(trajectories);
  for (std::size_t r = 0; r < n; ++r) {
    std::int64_t sum = 0;
    std::uint64_t sq = 0;
    for (unsigned w = 0; w < nt; ++w) {
      sum += sums[w][r];
      sq += squares[w][r];
    }
    long double m = static_cast<long double>(sum) / N;
    s.mean[r] = static_cast<double>(m);
    if (trajectories > 1) {
      long double var = (static_cast<long double>(sq) - static_cast<long double>(sum) * m) / (N - 1);
      s.err[r] = var > 0 ? static_cast<double>(std::sqrt(var / N)) : 0.0;
    } else {
      s.err[r] = 0.0;
    }
  }
  return s;
}

}  // namespace scramble
