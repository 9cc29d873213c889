#include "vslb/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mode_loop.hpp"
#include "vslb/transforms.hpp"

namespace vslb {

using detail::for_each_mode;
using detail::kTwoPi;
using detail::sum_over_modes;

namespace {

// i * z without the general complex product
inline Complex times_i(Complex z) { return {-z.imag(), z.real()}; }

}  // namespace

SpectralField curl(const SpectralField& field) {
  const Lattice& lat = field.lattice();
  SpectralField out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return;
    const double k1 = kTwoPi * m1, k2 = kTwoPi * m2, k3 = kTwoPi * m3;
    const Complex u1 = field(0, k), u2 = field(1, k), u3 = field(2, k);
    out(0, k) = times_i(k2 * u3 - k3 * u2);
    out(1, k) = times_i(k3 * u1 - k1 * u3);
    out(2, k) = times_i(k1 * u2 - k2 * u1);
  });
  return out;
}

ScalarSpectralField divergence(const SpectralField& field) {
  const Lattice& lat = field.lattice();
  ScalarSpectralField out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return;
    out(0, k) = times_i(kTwoPi * (static_cast<double>(m1) * field(0, k) + static_cast<double>(m2) * field(1, k) +
                                   static_cast<double>(m3) * field(2, k)));
  });
  return out;
}

SpectralField gradient(const ScalarSpectralField& field) {
  const Lattice& lat = field.lattice();
  SpectralField out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return;
    const Complex ip = times_i(kTwoPi * field(0, k));
    out(0, k) = static_cast<double>(m1) * ip;
    out(1, k) = static_cast<double>(m2) * ip;
    out(2, k) = static_cast<double>(m3) * ip;
  });
  return out;
}

namespace {

template <int C>
FieldCoeffs<C> laplacian_impl(const FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  FieldCoeffs<C> out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return;
    const double k2 = kTwoPi * kTwoPi * (m1 * m1 + m2 * m2 + m3 * m3);
    for (int c = 0; c < C; ++c) out(c, k) = -k2 * field(c, k);
  });
  return out;
}

}  // namespace

SpectralField laplacian(const SpectralField& field) { return laplacian_impl(field); }
ScalarSpectralField laplacian(const ScalarSpectralField& field) { return laplacian_impl(field); }

ScalarSpectralField inverse_laplacian(const ScalarSpectralField& field) {
  const Lattice& lat = field.lattice();
  ScalarSpectralField out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3) || (m1 == 0 && m2 == 0 && m3 == 0)) return;
    const double k2 = kTwoPi * kTwoPi * (m1 * m1 + m2 * m2 + m3 * m3);
    out(0, k) = -field(0, k) / k2;
  });
  return out;
}

SpectralField leray_project(const SpectralField& field) {
  const Lattice& lat = field.lattice();
  SpectralField out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return;
    if (m1 == 0 && m2 == 0 && m3 == 0) {
      for (int c = 0; c < 3; ++c) out(c, k) = field(c, k);
      return;
    }
    const double d1 = m1, d2 = m2, d3 = m3;
    const double inv_k2 = 1.0 / (d1 * d1 + d2 * d2 + d3 * d3);
    const Complex kdotu = (d1 * field(0, k) + d2 * field(1, k) + d3 * field(2, k)) * inv_k2;
    out(0, k) = field(0, k) - d1 * kdotu;
    out(1, k) = field(1, k) - d2 * kdotu;
    out(2, k) = field(2, k) - d3 * kdotu;
  });
  return out;
}

SpectralField biot_savart(const SpectralField& vorticity) {
  const double mean = mean_magnitude(vorticity);
  const double scale = std::max(1.0, std::sqrt(l2_norm_squared(vorticity)));
  if (mean > 1e-12 * scale) {
    throw PreconditionError("biot_savart: vorticity has nonzero mean " + std::to_string(mean));
  }
  const Lattice& lat = vorticity.lattice();
  SpectralField out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3) || (m1 == 0 && m2 == 0 && m3 == 0)) return;
    const double k1 = kTwoPi * m1, k2 = kTwoPi * m2, k3 = kTwoPi * m3;
    const double inv = 1.0 / (k1 * k1 + k2 * k2 + k3 * k3);
    const Complex w1 = vorticity(0, k), w2 = vorticity(1, k), w3 = vorticity(2, k);
    out(0, k) = times_i((k2 * w3 - k3 * w2) * inv);
    out(1, k) = times_i((k3 * w1 - k1 * w3) * inv);
    out(2, k) = times_i((k1 * w2 - k2 * w1) * inv);
  });
  return out;
}

template <int C>
FieldCoeffs<C> dealias(const FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  FieldCoeffs<C> out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (!lat.retained(m1, m2, m3)) return;
    for (int c = 0; c < C; ++c) out(c, k) = field(c, k);
  });
  return out;
}

template <int C>
FieldCoeffs<C> partial(const FieldCoeffs<C>& field, int axis) {
  const Lattice& lat = field.lattice();
  FieldCoeffs<C> out(lat);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return;
    const std::array<int, 3> m{m1, m2, m3};
    const double w = kTwoPi * m[static_cast<std::size_t>(axis)];
    for (int c = 0; c < C; ++c) out(c, k) = times_i(w * field(c, k));
  });
  return out;
}

SpectralField advective_derivative(const SpectralField& a, const SpectralField& b) {
  const Lattice& lat = a.lattice();
  const VectorGrid ag = to_physical(a);
  VectorGrid result(lat.n());
  for (int axis = 0; axis < 3; ++axis) {
    const VectorGrid db = to_physical(partial(b, axis));
    const auto weight = ag.component(axis);
    for (int c = 0; c < 3; ++c) {
      auto dst = result.component(c);
      const auto src = db.component(c);
      for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += weight[p] * src[p];
    }
  }
  return to_spectral(result, lat);
}

template <int C>
double inner(const FieldCoeffs<C>& a, const FieldCoeffs<C>& b) {
  if (!(a.lattice() == b.lattice())) throw DimensionError("inner: lattices differ");
  return sum_over_modes(a.lattice(), [&](std::size_t k, int, int, int) {
    double acc = 0.0;
    for (int c = 0; c < C; ++c) acc += (a(c, k) * std::conj(b(c, k))).real();
    return acc;
  });
}

template <int C>
double l2_norm_squared(const FieldCoeffs<C>& field) {
  return sum_over_modes(field.lattice(), [&](std::size_t k, int, int, int) {
    double acc = 0.0;
    for (int c = 0; c < C; ++c) acc += std::norm(field(c, k));
    return acc;
  });
}

template <int C>
double h1_seminorm_squared(const FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  return sum_over_modes(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3)) return 0.0;
    const double k2 = kTwoPi * kTwoPi * (m1 * m1 + m2 * m2 + m3 * m3);
    double acc = 0.0;
    for (int c = 0; c < C; ++c) acc += std::norm(field(c, k));
    return k2 * acc;
  });
}

double l4_norm(const SpectralField& field) {
  const VectorGrid g = to_physical(field);
  const auto u = g.component(0), v = g.component(1), w = g.component(2);
  double acc = 0.0;
  for (std::size_t p = 0; p < u.size(); ++p) {
    const double m2 = u[p] * u[p] + v[p] * v[p] + w[p] * w[p];
    acc += m2 * m2;
  }
  return std::pow(acc / static_cast<double>(u.size()), 0.25);
}

Norms norms(const SpectralField& field) {
  return {std::sqrt(l2_norm_squared(field)), std::sqrt(h1_seminorm_squared(field)), l4_norm(field)};
}

double divergence_ratio(const SpectralField& field) {
  const Lattice& lat = field.lattice();
  const auto planes = static_cast<std::size_t>(lat.n());
  std::vector<double> worst(planes, 0.0), largest(planes, 0.0);
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    const double mag = std::sqrt(std::norm(field(0, k)) + std::norm(field(1, k)) + std::norm(field(2, k)));
    const auto slot = static_cast<std::size_t>(lat.position(m1));
    largest[slot] = std::max(largest[slot], mag);
    const double kn = std::sqrt(static_cast<double>(m1 * m1 + m2 * m2 + m3 * m3));
    if (kn == 0.0) return;
    const double d = std::abs(static_cast<double>(m1) * field(0, k) + static_cast<double>(m2) * field(1, k) +
                              static_cast<double>(m3) * field(2, k)) /
                     kn;
    worst[slot] = std::max(worst[slot], d);
  });
  const double scale = *std::max_element(largest.begin(), largest.end());
  if (scale == 0.0) return 0.0;
  return *std::max_element(worst.begin(), worst.end()) / scale;
}

bool is_solenoidal(const SpectralField& field, double tol) {
  const Lattice& lat = field.lattice();
  bool nyquist_clean = true;
  const int n = lat.n();
  for (int i = 0; i < n && nyquist_clean; ++i) {
    for (int j = 0; j < n && nyquist_clean; ++j) {
      for (int l = 0; l < lat.half_extent(); ++l) {
        if (!lat.touches_nyquist(lat.signed_index(i), lat.signed_index(j), l)) continue;
        const auto k = lat.mode_offset(i, j, l);
        if (field(0, k) != 0.0 || field(1, k) != 0.0 || field(2, k) != 0.0) {
          nyquist_clean = false;
          break;
        }
      }
    }
  }
  return nyquist_clean && divergence_ratio(field) <= tol;
}

double mean_magnitude(const SpectralField& field) {
  return std::sqrt(std::norm(field(0, 0)) + std::norm(field(1, 0)) + std::norm(field(2, 0)));
}

template <int C>
void remove_mean(FieldCoeffs<C>& field) {
  for (int c = 0; c < C; ++c) field(c, 0) = 0.0;
}

template <int C>
void zero_nyquist(FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (!lat.touches_nyquist(m1, m2, m3)) return;
    for (int c = 0; c < C; ++c) field(c, k) = 0.0;
  });
}

template SpectralField dealias<3>(const SpectralField&);
template ScalarSpectralField dealias<1>(const ScalarSpectralField&);
template SpectralField partial<3>(const SpectralField&, int);
template ScalarSpectralField partial<1>(const ScalarSpectralField&, int);
template double inner<3>(const SpectralField&, const SpectralField&);
template double inner<1>(const ScalarSpectralField&, const ScalarSpectralField&);
template double l2_norm_squared<3>(const SpectralField&);
template double l2_norm_squared<1>(const ScalarSpectralField&);
template double h1_seminorm_squared<3>(const SpectralField&);
template double h1_seminorm_squared<1>(const ScalarSpectralField&);
template void remove_mean<3>(SpectralField&);
template void remove_mean<1>(ScalarSpectralField&);
template void zero_nyquist<3>(SpectralField&);
template void zero_nyquist<1>(ScalarSpectralField&);

}  // namespace vslb
