#include "vslb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace vslb {
namespace {

int threads_from_env() {
  if (const char* env = std::getenv("VSLB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> threads{threads_from_env()};
  return threads;
}

}  // namespace

int kernel_threads() { return thread_setting().load(std::memory_order_relaxed); }

void set_kernel_threads(int threads) { thread_setting().store(std::max(1, threads), std::memory_order_relaxed); }

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(kernel_threads()), count);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(0, std::min(count, chunk));
}

}  // namespace vslb
