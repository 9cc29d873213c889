#include "vslb/initial_conditions.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "vslb/operators.hpp"
#include "vslb/transforms.hpp"

namespace vslb {

ICKind parse_ic_kind(std::string_view name) {
  if (name == "taylor_green") return ICKind::taylor_green;
  if (name == "beltrami_abc") return ICKind::beltrami_abc;
  if (name == "random_divfree") return ICKind::random_divfree;
  throw PreconditionError("unknown initial condition kind '" + std::string(name) + "'");
}

std::string_view to_string(ICKind kind) {
  switch (kind) {
    case ICKind::taylor_green:
      return "taylor_green";
    case ICKind::beltrami_abc:
      return "beltrami_abc";
    case ICKind::random_divfree:
      return "random_divfree";
  }
  return "unknown";
}

void ICSpec::validate(const Lattice& lattice) const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw PreconditionError("initial condition amplitude must be finite and >= 0");
  }
  if (lattice.cutoff() < 1) throw PreconditionError("lattice retains no nonzero wavenumber");
  if (kind == ICKind::random_divfree) {
    if (peak_index < 1 || peak_index >= lattice.n() / 2 || peak_index > lattice.cutoff()) {
      throw PreconditionError("peak_index " + std::to_string(peak_index) + " outside the dealias mask (cutoff " +
                              std::to_string(lattice.cutoff()) + ")");
    }
    if (!std::isfinite(spectrum_slope)) throw PreconditionError("spectrum_slope must be finite");
  }
}

namespace {

SpectralField sample_analytic(const Lattice& lattice, ICKind kind, double amplitude) {
  const int n = lattice.n();
  VectorGrid grid(n);
  constexpr double tau = 2.0 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double x = tau * i / n;
    for (int j = 0; j < n; ++j) {
      const double y = tau * j / n;
      for (int l = 0; l < n; ++l) {
        const double z = tau * l / n;
        if (kind == ICKind::taylor_green) {
          grid.at(0, i, j, l) = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
          grid.at(1, i, j, l) = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
          grid.at(2, i, j, l) = 0.0;
        } else {
          grid.at(0, i, j, l) = amplitude * (std::sin(z) + std::cos(y));
          grid.at(1, i, j, l) = amplitude * (std::sin(x) + std::cos(z));
          grid.at(2, i, j, l) = amplitude * (std::sin(y) + std::cos(x));
        }
      }
    }
  }
  SpectralField u = to_spectral(grid, lattice);
  // the trigonometric data are exactly representable; drop transform roundoff
  for (auto& v : u.data()) {
    if (std::abs(v) < 1e-14 * std::max(1.0, amplitude)) v = 0.0;
  }
  return u;
}

double ring_envelope(double kmag, double peak, double slope) {
  if (kmag <= 0.0) return 0.0;
  if (kmag < peak) {
    const double sigma = std::max(1.0, 0.5 * peak);
    const double d = (kmag - peak) / sigma;
    return std::exp(-0.5 * d * d);
  }
  return std::pow(kmag / peak, slope);
}

SpectralField sample_random(const Lattice& lattice, const ICSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(lattice);
  const int n = lattice.n();
  const double peak = spec.peak_index;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < n; ++i) {
      const int m1 = lattice.signed_index(i);
      for (int j = 0; j < n; ++j) {
        const int m2 = lattice.signed_index(j);
        for (int l = 0; l < lattice.half_extent(); ++l) {
          const double re = normal(rng);
          const double im = normal(rng);
          const double kmag = std::sqrt(static_cast<double>(m1 * m1 + m2 * m2 + l * l));
          u(c, lattice.mode_offset(i, j, l)) = ring_envelope(kmag, peak, spec.spectrum_slope) * Complex{re, im};
        }
      }
    }
  }
  symmetrize_hermitian(u);
  u = dealias(leray_project(u));
  remove_mean(u);
  zero_nyquist(u);
  const double norm2 = l2_norm_squared(u);
  if (norm2 > 0.0) u *= spec.amplitude / std::sqrt(norm2);
  return u;
}

}  // namespace

SpectralField make_initial(const ICSpec& spec, const Lattice& lattice) {
  spec.validate(lattice);
  if (spec.amplitude == 0.0) return SpectralField(lattice);
  switch (spec.kind) {
    case ICKind::taylor_green:
    case ICKind::beltrami_abc:
      return sample_analytic(lattice, spec.kind, spec.amplitude);
    case ICKind::random_divfree:
      return sample_random(lattice, spec);
  }
  throw PreconditionError("unhandled initial condition kind");
}

}  // namespace vslb
