#pragma once

#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace vslb {

struct Rational {
  std::int64_t num = 2;
  std::int64_t den = 3;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Uniform n^3 collocation grid on the periodic unit box and its half-spectrum
/// coefficient layout (r2c convention: the last axis stores m3 = 0..n/2).
///
/// Signed wavenumber indices run over {-n/2+1, ..., n/2} per axis; the physical
/// wavenumber of index m is 2*pi*m. Modes with any |m| above `cutoff()` are outside the
/// dealias-retained set.
class Lattice {
 public:
  explicit Lattice(int n, Rational dealias_fraction = {2, 3});

  int n() const noexcept { return n_; }
  Rational dealias_fraction() const noexcept { return dealias_; }
  int cutoff() const noexcept { return cutoff_; }
  int nyquist() const noexcept { return n_ / 2; }
  int half_extent() const noexcept { return n_ / 2 + 1; }

  std::size_t grid_size() const noexcept {
    const auto n = static_cast<std::size_t>(n_);
    return n * n * n;
  }
  std::size_t mode_count() const noexcept {
    const auto n = static_cast<std::size_t>(n_);
    return n * n * static_cast<std::size_t>(half_extent());
  }

  /// Signed wavenumber index of array position p on a full axis.
  int signed_index(int p) const noexcept { return signed_[static_cast<std::size_t>(p)]; }
  /// Array position of signed index m on a full axis.
  int position(int m) const noexcept { return m >= 0 ? m : m + n_; }

  std::size_t mode_offset(int i, int j, int l) const noexcept {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(half_extent()) +
           static_cast<std::size_t>(l);
  }

  bool retained(int m1, int m2, int m3) const noexcept {
    return std::abs(m1) <= cutoff_ && std::abs(m2) <= cutoff_ && std::abs(m3) <= cutoff_;
  }
  bool touches_nyquist(int m1, int m2, int m3) const noexcept {
    const int h = n_ / 2;
    return std::abs(m1) == h || std::abs(m2) == h || std::abs(m3) == h;
  }

  /// Multiplicity of a stored half-spectrum mode in full-spectrum sums.
  double plane_weight(int l) const noexcept { return (l == 0 || l == n_ / 2) ? 1.0 : 2.0; }

  /// Same lattice with dealiasing disabled (retained set = every index).
  Lattice without_dealiasing() const { return Lattice(n_, Rational{1, 1}); }

  friend bool operator==(const Lattice& a, const Lattice& b) noexcept {
    return a.n_ == b.n_ && a.dealias_ == b.dealias_;
  }

 private:
  int n_;
  Rational dealias_;
  int cutoff_;
  std::vector<int> signed_;
};

}  // namespace vslb
