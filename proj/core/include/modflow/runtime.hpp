#pragma once

#include <span>
#include <vector>

namespace modflow {

/// Parallelism cap: min(hardware, MODFLOW_THREADS) with MODFLOW_THREADS read
/// once from the environment. Always >= 1.
int max_threads();

/// Pairwise (cascade) summation in fixed index order; bit-stable under any
/// thread count because block boundaries never move.
double pairwise_sum(std::span<const double> xs);

/// Sums f(i) for i in [0, n), evaluated in fixed-size blocks that may run on
/// worker threads, combined pairwise in index order.
double parallel_sum(long n, double (*f)(long, const void*), const void* ctx);

}  // namespace modflow
