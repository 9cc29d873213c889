#pragma once

#include "vslb/spectral_field.hpp"

namespace vslb {

// Per-mode differential operators. Every output has its Nyquist-bearing modes
// (any |m| = n/2) set to zero and inherits the input's lattice.

/// i (2 pi k) x u(k)
SpectralField curl(const SpectralField& field);
/// i (2 pi k) . u(k)
ScalarSpectralField divergence(const SpectralField& field);
/// i (2 pi k) phi(k)
SpectralField gradient(const ScalarSpectralField& field);
/// -|2 pi k|^2 u(k)
SpectralField laplacian(const SpectralField& field);
ScalarSpectralField laplacian(const ScalarSpectralField& field);
/// Solves Delta q = f with q(0) = 0.
ScalarSpectralField inverse_laplacian(const ScalarSpectralField& field);

/// u <- u - k (k . u) / |k|^2 for k != 0; the mean mode is left unchanged.
SpectralField leray_project(const SpectralField& field);

/// Velocity from vorticity, u = curl (-Delta)^{-1} omega, with zero mean. Throws
/// PreconditionError when the vorticity mean exceeds 1e-12 relative to max(1, ||omega||).
SpectralField biot_savart(const SpectralField& vorticity);

/// Zeroes modes outside the lattice's retained set.
template <int C>
FieldCoeffs<C> dealias(const FieldCoeffs<C>& field);

/// Partial derivative along `axis` (0, 1, 2) of every component.
template <int C>
FieldCoeffs<C> partial(const FieldCoeffs<C>& field, int axis);

/// (a . grad) b, formed on the collocation grid and dealiased.
SpectralField advective_derivative(const SpectralField& a, const SpectralField& b);

/// Real L^2 inner product over the unit box (Parseval sum over the full spectrum).
template <int C>
double inner(const FieldCoeffs<C>& a, const FieldCoeffs<C>& b);

template <int C>
double l2_norm_squared(const FieldCoeffs<C>& field);

/// sum_i ||grad u_i||^2
template <int C>
double h1_seminorm_squared(const FieldCoeffs<C>& field);

/// (mean over grid of |u|^4)^(1/4), exact for band-limited products of degree < n.
double l4_norm(const SpectralField& field);

struct Norms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double l4 = 0.0;
};
Norms norms(const SpectralField& field);

/// max_k |khat . u(k)| / max_k |u(k)|, zero for the zero field.
double divergence_ratio(const SpectralField& field);

/// Discrete divergence-free test: divergence_ratio <= tol and no Nyquist content.
bool is_solenoidal(const SpectralField& field, double tol = 1e-12);

/// Magnitude of the k = 0 coefficient vector.
double mean_magnitude(const SpectralField& field);

/// Zeroes the k = 0 mode in place.
template <int C>
void remove_mean(FieldCoeffs<C>& field);

/// Zeroes any mode touching the Nyquist index in place.
template <int C>
void zero_nyquist(FieldCoeffs<C>& field);

}  // namespace vslb
