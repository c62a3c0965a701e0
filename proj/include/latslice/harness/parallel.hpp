#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <optional>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace latslice {

/// Evaluates fn(0..count-1) on `jobs` threads; results are stored by index, so the
/// outcome never depends on the schedule. The first exception (by index) is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Like parallel_map, but hands each result to `sink` in index order as soon as it and all
/// earlier results are ready. `sink` runs on the calling thread only.
template <class T>
void parallel_ordered(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn,
                      const std::function<void(std::size_t, T&)>& sink) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<char> done(count, 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !stop; i = next++) {
      std::optional<T> v;
      std::exception_ptr e;
      try {
        v = fn(i);
      } catch (...) {
        e = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(mu);
      slots[i] = std::move(v);
      errors[i] = e;
      done[i] = 1;
      cv.notify_all();
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  if (n > 1)
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  std::exception_ptr failure;
  for (std::size_t i = 0; i < count; ++i) {
    if (n <= 1) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        failure = std::current_exception();
        break;
      }
    } else {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return done[i] != 0; });
      if (errors[i]) {
        failure = errors[i];
        stop = true;
        break;
      }
    }
    sink(i, *slots[i]);
    slots[i].reset();
  }
  stop = true;
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Per-instance seed derived from a base seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace latslice
