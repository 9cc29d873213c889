#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace vslb::oracle {
namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

std::array<double, 3> TrigField::value(double x1, double x2, double x3) const {
  std::array<double, 3> out{};
  for (const auto& w : waves) {
    const double theta = kTau * (w.k[0] * x1 + w.k[1] * x2 + w.k[2] * x3);
    const double c = std::cos(theta), s = std::sin(theta);
    for (int i = 0; i < 3; ++i) out[i] += w.a[i] * c + w.b[i] * s;
  }
  return out;
}

std::array<double, 3> TrigField::derivative(int axis, double x1, double x2, double x3) const {
  std::array<double, 3> out{};
  for (const auto& w : waves) {
    const double theta = kTau * (w.k[0] * x1 + w.k[1] * x2 + w.k[2] * x3);
    const double c = std::cos(theta), s = std::sin(theta);
    const double f = kTau * w.k[axis];
    for (int i = 0; i < 3; ++i) out[i] += f * (-w.a[i] * s + w.b[i] * c);
  }
  return out;
}

Complex TrigField::coefficient(int c, int m1, int m2, int m3) const {
  Complex out = 0.0;
  for (const auto& w : waves) {
    if (w.k[0] == m1 && w.k[1] == m2 && w.k[2] == m3) out += Complex(w.a[c], -w.b[c]) * 0.5;
    if (w.k[0] == -m1 && w.k[1] == -m2 && w.k[2] == -m3) out += Complex(w.a[c], w.b[c]) * 0.5;
  }
  return out;
}

VectorGrid TrigField::sample(int n) const {
  VectorGrid g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const auto v = value(double(i) / n, double(j) / n, double(l) / n);
        for (int c = 0; c < 3; ++c) g.at(c, i, j, l) = v[c];
      }
    }
  }
  return g;
}

SpectralField TrigField::coefficients(const Lattice& lattice) const {
  SpectralField out(lattice);
  const int n = lattice.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l <= n / 2; ++l) {
        const int m1 = lattice.signed_index(i), m2 = lattice.signed_index(j);
        for (int c = 0; c < 3; ++c) out(c, lattice.mode_offset(i, j, l)) = coefficient(c, m1, m2, l);
      }
    }
  }
  return out;
}

TrigField random_trig_field(std::uint64_t seed, int kmax, int wave_count, bool solenoidal) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> index(-kmax, kmax);
  std::normal_distribution<double> normal(0.0, 1.0);
  TrigField f;
  while (static_cast<int>(f.waves.size()) < wave_count) {
    Wave w;
    for (auto& k : w.k) k = index(rng);
    if (w.k[0] == 0 && w.k[1] == 0 && w.k[2] == 0) continue;
    for (int i = 0; i < 3; ++i) {
      w.a[i] = normal(rng);
      w.b[i] = normal(rng);
    }
    if (solenoidal) {
      const double kk = double(w.k[0] * w.k[0] + w.k[1] * w.k[1] + w.k[2] * w.k[2]);
      for (auto* v : {&w.a, &w.b}) {
        const double dot = w.k[0] * (*v)[0] + w.k[1] * (*v)[1] + w.k[2] * (*v)[2];
        for (int i = 0; i < 3; ++i) (*v)[i] -= dot * w.k[i] / kk;
      }
    }
    f.waves.push_back(w);
  }
  return f;
}

Complex direct_dft(std::span<const double> values, int n, int m1, int m2, int m3) {
  Complex sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const double theta = -kTau * (double(m1) * i + double(m2) * j + double(m3) * l) / n;
        sum += values[(static_cast<std::size_t>(i) * n + j) * n + l] * Complex(std::cos(theta), std::sin(theta));
      }
    }
  }
  return sum / double(n * n * n);
}

VectorGrid random_grid(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorGrid g(n);
  for (double& v : g.values) v = normal(rng);
  return g;
}

Complex direct_convolution(const ScalarSpectralField& a, const ScalarSpectralField& b, int m1, int m2, int m3,
                           int cutoff) {
  Complex sum = 0.0;
  for (int p1 = -cutoff; p1 <= cutoff; ++p1) {
    for (int p2 = -cutoff; p2 <= cutoff; ++p2) {
      for (int p3 = -cutoff; p3 <= cutoff; ++p3) {
        const int q1 = m1 - p1, q2 = m2 - p2, q3 = m3 - p3;
        if (std::abs(q1) > cutoff || std::abs(q2) > cutoff || std::abs(q3) > cutoff) continue;
        sum += a.coeff(0, p1, p2, p3) * b.coeff(0, q1, q2, q3);
      }
    }
  }
  return sum;
}

Complex rk4_linear(Complex w0, Complex s, double rate, double span, int steps) {
  const double h = span / steps;
  auto f = [&](Complex w) { return -rate * w + s; };
  Complex w = w0;
  for (int i = 0; i < steps; ++i) {
    const Complex k1 = f(w);
    const Complex k2 = f(w + 0.5 * h * k1);
    const Complex k3 = f(w + 0.5 * h * k2);
    const Complex k4 = f(w + h * k3);
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

template <int C>
double relative_difference(const FieldCoeffs<C>& a, const FieldCoeffs<C>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    num += std::norm(a.data()[k] - b.data()[k]);
    den += std::norm(b.data()[k]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

template double relative_difference<1>(const FieldCoeffs<1>&, const FieldCoeffs<1>&);
template double relative_difference<3>(const FieldCoeffs<3>&, const FieldCoeffs<3>&);

}  // namespace vslb::oracle
