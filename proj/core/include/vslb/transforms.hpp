#pragma once

#include "vslb/spectral_field.hpp"

namespace vslb {

/// Forward transform. coeff(0) is the grid mean; the dealias mask of `lattice`
/// is applied and the self-conjugate planes are symmetrized exactly.
template <int C>
FieldCoeffs<C> to_spectral(const PhysicalGrid<C>& samples, const Lattice& lattice);

/// Inverse transform. Throws HermitianError when the self-conjugate planes break
/// symmetry by more than 1e-12 relative to the largest coefficient.
template <int C>
PhysicalGrid<C> to_physical(const FieldCoeffs<C>& field);

/// Largest |c(k) - conj(c(-k))| over the stored self-conjugate planes, relative to max |c|.
template <int C>
double hermitian_defect(const FieldCoeffs<C>& field);

/// Replaces each coefficient pair in the self-conjugate planes by its Hermitian mean.
template <int C>
void symmetrize_hermitian(FieldCoeffs<C>& field);

inline constexpr double kHermitianTolerance = 1e-12;

}  // namespace vslb
