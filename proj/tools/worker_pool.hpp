#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lanegeo::tools {

/// Runs fn(i) for i in [0, n) on up to `workers` threads and returns the
/// results in index order. The first exception thrown is rethrown after all
/// threads have stopped.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn fn) {
  std::vector<T> out(n);
  if (n == 0) return out;
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace lanegeo::tools
