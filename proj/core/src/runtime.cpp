#include "modflow/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <thread>

namespace modflow {

int max_threads() {
  static const int cached = [] {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("MODFLOW_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
  }();
  return cached;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double parallel_sum(long n, double (*f)(long, const void*), const void* ctx) {
  constexpr long kBlock = 4096;
  if (n <= 0) return 0.0;
  const long blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(std::size_t(blocks), 0.0);
  auto run_block = [&](long b) {
    const long lo = b * kBlock, hi = std::min(n, lo + kBlock);
    std::vector<double> vals;
    vals.reserve(std::size_t(hi - lo));
    for (long i = lo; i < hi; ++i) vals.push_back(f(i, ctx));
    partial[std::size_t(b)] = pairwise_sum(vals);
  };
  const int workers = blocks > 1 ? max_threads() : 1;
  if (workers == 1) {
    for (long b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<long> next{0};
    std::vector<std::future<void>> pool;
    for (int w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, [&] {
        for (long b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) run_block(b);
      }));
    for (auto& fut : pool) fut.get();
  }
  return pairwise_sum(partial);
}

}  // namespace modflow
