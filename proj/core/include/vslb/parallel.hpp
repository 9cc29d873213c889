#pragma once

#include <cstddef>
#include <functional>

namespace vslb {

/// Worker count for data-parallel kernels: VSLB_THREADS if set (>= 1), otherwise 1.
int kernel_threads();

/// Overrides the worker count for the remainder of the process (tests, benchmarks).
void set_kernel_threads(int threads);

/// Runs body(begin, end) over [0, count) split into contiguous chunks. Chunk
/// boundaries depend only on `count` and the worker count; kernels that write disjoint
/// outputs are therefore bit-identical for every thread setting.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace vslb
