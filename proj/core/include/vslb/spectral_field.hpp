#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vslb/errors.hpp"
#include "vslb/lattice.hpp"

namespace vslb {

using Complex = std::complex<double>;

/// Truncated Fourier coefficients of a real field with `Components` components,
/// stored as the r2c half spectrum: component-major, then (i, j, l) row-major with
/// l = m3 in [0, n/2]. Negative-m3 coefficients follow from Hermitian symmetry.
template <int Components>
class FieldCoeffs {
 public:
  static constexpr int components = Components;

  explicit FieldCoeffs(Lattice lattice)
      : lattice_(std::move(lattice)), data_(static_cast<std::size_t>(Components) * lattice_.mode_count()) {}

  const Lattice& lattice() const noexcept { return lattice_; }

  std::span<Complex> component(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * lattice_.mode_count(), lattice_.mode_count()};
  }
  std::span<const Complex> component(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * lattice_.mode_count(), lattice_.mode_count()};
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Complex& operator()(int c, std::size_t mode) {
    return data_[static_cast<std::size_t>(c) * lattice_.mode_count() + mode];
  }
  const Complex& operator()(int c, std::size_t mode) const {
    return data_[static_cast<std::size_t>(c) * lattice_.mode_count() + mode];
  }

  /// Coefficient at any signed index triple in {-n/2+1..n/2}^3.
  Complex coeff(int c, int m1, int m2, int m3) const {
    if (m3 < 0) {
      return std::conj((*this)(c, offset(-m1, -m2, -m3)));
    }
    return (*this)(c, offset(m1, m2, m3));
  }

  /// Sets the coefficient at (m1, m2, m3) and its Hermitian partner at -k.
  void set_mode(int c, int m1, int m2, int m3, Complex value) {
    if (m3 < 0) {
      m1 = -m1;
      m2 = -m2;
      m3 = -m3;
      value = std::conj(value);
    }
    (*this)(c, offset(m1, m2, m3)) = value;
    if (m3 == 0 || m3 == lattice_.nyquist()) {
      (*this)(c, offset(-m1, -m2, m3)) = std::conj(value);
    }
  }

  FieldCoeffs& operator+=(const FieldCoeffs& other) {
    require_same(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }
  FieldCoeffs& operator-=(const FieldCoeffs& other) {
    require_same(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }
  FieldCoeffs& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  /// this += s * other
  FieldCoeffs& add_scaled(double s, const FieldCoeffs& other) {
    require_same(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * other.data_[k];
    return *this;
  }

  friend FieldCoeffs operator+(FieldCoeffs a, const FieldCoeffs& b) { return a += b; }
  friend FieldCoeffs operator-(FieldCoeffs a, const FieldCoeffs& b) { return a -= b; }
  friend FieldCoeffs operator*(double s, FieldCoeffs a) { return a *= s; }
  friend FieldCoeffs operator*(FieldCoeffs a, double s) { return a *= s; }

  friend bool operator==(const FieldCoeffs& a, const FieldCoeffs& b) {
    return a.lattice_ == b.lattice_ && a.data_ == b.data_;
  }

 private:
  std::size_t offset(int m1, int m2, int m3) const {
    const int h = lattice_.n() / 2;
    // index n/2 and -n/2 alias the same stored position
    auto wrap = [h](int m) { return m == -h ? h : m; };
    return lattice_.mode_offset(lattice_.position(wrap(m1)), lattice_.position(wrap(m2)), m3);
  }

  void require_same(const FieldCoeffs& other) const {
    if (!(lattice_ == other.lattice_)) throw DimensionError("field arithmetic across different lattices");
  }

  Lattice lattice_;
  std::vector<Complex> data_;
};

using SpectralField = FieldCoeffs<3>;
using ScalarSpectralField = FieldCoeffs<1>;

/// Real samples on the n^3 collocation grid x = (i, j, l) / n, component-major.
template <int Components>
struct PhysicalGrid {
  static constexpr int components = Components;

  int n = 0;
  std::vector<double> values;

  PhysicalGrid() = default;
  explicit PhysicalGrid(int n_)
      : n(n_), values(static_cast<std::size_t>(Components) * static_cast<std::size_t>(n_) * n_ * n_) {}

  std::size_t points() const noexcept { return static_cast<std::size_t>(n) * n * n; }

  std::span<double> component(int c) { return {values.data() + static_cast<std::size_t>(c) * points(), points()}; }
  std::span<const double> component(int c) const {
    return {values.data() + static_cast<std::size_t>(c) * points(), points()};
  }

  double& at(int c, int i, int j, int l) {
    return values[static_cast<std::size_t>(c) * points() + (static_cast<std::size_t>(i) * n + j) * n + l];
  }
  double at(int c, int i, int j, int l) const {
    return values[static_cast<std::size_t>(c) * points() + (static_cast<std::size_t>(i) * n + j) * n + l];
  }
};

using VectorGrid = PhysicalGrid<3>;
using ScalarGrid = PhysicalGrid<1>;

}  // namespace vslb
