#pragma once

#include <cstdint>
#include <string_view>

#include "vslb/spectral_field.hpp"

namespace vslb {

enum class ICKind { taylor_green, beltrami_abc, random_divfree };

ICKind parse_ic_kind(std::string_view name);
std::string_view to_string(ICKind kind);

struct ICSpec {
  ICKind kind = ICKind::beltrami_abc;
  double amplitude = 1.0;
  std::uint64_t seed = 0;       // random_divfree only
  double spectrum_slope = -2.0;  // random_divfree only
  int peak_index = 2;           // random_divfree only

  /// Throws PreconditionError when this initial condition cannot be realized on `lattice`.
  void validate(const Lattice& lattice) const;
};

/// Builds a solenoidal, mean-free, real initial velocity.
///
///  - taylor_green: A (sin x cos y cos z, -cos x sin y cos z, 0) with x = 2 pi x1, ...
///  - beltrami_abc: A (sin z + cos y, sin x + cos z, sin y + cos x); curl u = 2 pi u.
///  - random_divfree: Gaussian coefficients under a ring envelope around `peak_index`
///    (Gaussian below the peak, |k / peak|^slope above it), Leray-projected and
///    Hermitian-symmetrized, then scaled so that sum_i ||u_i||^2 = A^2.
///
/// Amplitude 0 yields the zero field.
SpectralField make_initial(const ICSpec& spec, const Lattice& lattice);

}  // namespace vslb
