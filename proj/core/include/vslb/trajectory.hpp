#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vslb/spectral_field.hpp"

namespace vslb {

struct Sample {
  double time;
  SpectralField field;
};

/// Time-ordered samples of one field on a shared lattice.
class Trajectory {
 public:
  Trajectory() = default;

  /// Appends a sample; times must increase strictly and lattices must match.
  void push_back(double time, SpectralField field);

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const Sample& operator[](std::size_t k) const { return samples_[k]; }
  const Sample& front() const { return samples_.front(); }
  const Sample& back() const { return samples_.back(); }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  double t_start() const { return samples_.front().time; }
  double t_end() const { return samples_.back().time; }
  const Lattice& lattice() const { return samples_.front().field.lattice(); }

  std::vector<double> times() const;

  /// Linear interpolation in time; exact sample returned when t is within 1e-12 of it.
  SpectralField at(double t) const;

  /// Samples with time in [ta, tb] (inclusive, with the same snapping tolerance).
  std::size_t count_within(double ta, double tb) const;

 private:
  std::vector<Sample> samples_;
};

/// Trapezoidal weights for the integral over [ta, tb] of the piecewise-linear
/// interpolant through (times[k], f_k). Weights are non-negative and sum to tb - ta.
struct QuadratureNode {
  std::size_t index;
  double weight;
};
std::vector<QuadratureNode> trapezoid_nodes(std::span<const double> times, double ta, double tb);

/// Trapezoidal integral of a scalar series over [ta, tb].
double trapezoid(std::span<const double> times, std::span<const double> values, double ta, double tb);

/// Composite Simpson integral over the whole series. The uniformly spaced prefix uses
/// Simpson's rule (3/8 rule on the last three intervals for an odd count); a shorter
/// final interval, as left by a clipped last step, is added by the trapezoid.
double simpson(std::span<const double> times, std::span<const double> values);

/// Relative snapping tolerance for matching times to sample instants.
bool same_time(double a, double b);

}  // namespace vslb
