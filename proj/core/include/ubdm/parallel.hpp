#pragma once

// Bounded fan-out over an index range, plus seed splitting for reproducible
// parallel random streams.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace ubdm {

//! Calls f(i) for i in [0, n) on at most `workers` threads (0 = hardware
//! concurrency). Worker t handles indices t, t + workers, ... so results
//! written by index never depend on scheduling. If any call throws, the
//! exception from the lowest failing index is rethrown after all threads join.
template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
  std::size_t count = workers > 0 ? static_cast<std::size_t>(workers)
                                   : std::max(1u, std::thread::hardware_concurrency());
  count = std::min(count, n);
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += count) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

//! SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! Independent seed for stream `stream` derived from a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace ubdm
