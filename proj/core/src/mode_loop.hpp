#pragma once

#include <numbers>
#include <vector>

#include "vslb/lattice.hpp"
#include "vslb/parallel.hpp"

namespace vslb::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Visits every stored mode as fn(offset, m1, m2, m3), parallel over i-planes.
template <typename Fn>
void for_each_mode(const Lattice& lat, Fn&& fn) {
  const int n = lat.n();
  const int h = lat.half_extent();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<int>(begin); i < static_cast<int>(end); ++i) {
      const int m1 = lat.signed_index(i);
      for (int j = 0; j < n; ++j) {
        const int m2 = lat.signed_index(j);
        for (int l = 0; l < h; ++l) fn(lat.mode_offset(i, j, l), m1, m2, l);
      }
    }
  });
}

// Full-spectrum sum of fn(offset, m1, m2, m3) with half-spectrum plane weights.
// Partial sums are per i-plane and combined in plane order, so the result does
// not depend on the worker count.
template <typename Fn>
double sum_over_modes(const Lattice& lat, Fn&& fn) {
  const int n = lat.n();
  const int h = lat.half_extent();
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<int>(begin); i < static_cast<int>(end); ++i) {
      const int m1 = lat.signed_index(i);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        const int m2 = lat.signed_index(j);
        for (int l = 0; l < h; ++l) acc += lat.plane_weight(l) * fn(lat.mode_offset(i, j, l), m1, m2, l);
      }
      partial[static_cast<std::size_t>(i)] = acc;
    }
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace vslb::detail
