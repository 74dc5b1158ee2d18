#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sepeig {

/// Worker count: `requested` when positive, else SEPEIG_THREADS, else the
/// hardware concurrency.  SEPEIG_THREADS always acts as an upper cap.
inline int worker_count(int requested = 0) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int cap = hw;
  if (const char* env = std::getenv("SEPEIG_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) cap = v;
    } catch (const std::exception&) {
    }
  }
  return requested > 0 ? std::min(requested, cap) : cap;
}

/// Runs fn(i) for i in [0, n).  Results must be written to slots keyed on i;
/// callers merge in index order, so output does not depend on scheduling.
/// After all workers join, the exception of the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const int workers = static_cast<int>(std::min<std::size_t>(n, std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex error_mu;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sepeig
