#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vslb/spectral_field.hpp"
#include "vslb/trajectory.hpp"

namespace vslb {

struct SchemeConfig {
  double epsilon0 = 0.5;
  /// Constant of the admissibility test 1 - 4 C K* >= epsilon0.
  double sobolev_C = 1.0;
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  int initial_slab_count = 4;
  int max_refinements = 12;
  /// Sampling stride of the auxiliary solves; <= 0 uses the velocity trajectory's spacing.
  double aux_dt = 0.0;
  double viscosity = 1.0;

  void validate() const;
  /// (1 - epsilon0) / epsilon0, the exponential rate of the enstrophy chain.
  double growth_rate() const { return (1.0 - epsilon0) / epsilon0; }
};

struct SlabPartition {
  std::vector<double> times;  // t_0 < t_1 < ... < t_N
  std::vector<double> kk_star;
  std::vector<bool> admissible;

  std::size_t size() const noexcept { return kk_star.size(); }
  double t_a(std::size_t k) const { return times[k]; }
  double t_b(std::size_t k) const { return times[k + 1]; }
  bool accepted() const;
};

struct PicardReport {
  int iterations = 0;
  std::vector<double> residuals;
  /// max residual_{i+1} / residual_i over consecutive positive residuals (0 if fewer than two).
  double contraction_ratio = 0.0;
  bool converged = false;
};

/// Trapezoidal time average of the trajectory over [t_a, t_b] (piecewise-linear in time).
/// Throws PreconditionError when the interval leaves the span or holds fewer than 2 samples.
SpectralField slab_average(const Trajectory& traj, double t_a, double t_b);

/// Frozen slab source P(-(u_bar . grad) omega_bar + (omega_bar . grad) u_bar).
SpectralField auxiliary_rhs(const SpectralField& u_bar, const SpectralField& omega_bar);

/// Exact per-mode solution of d omega/dt = viscosity Delta omega + source on [t_a, t_b],
/// sampled every dt from t_a with the last sample at t_b. The mean mode stays zero.
Trajectory solve_auxiliary(const SpectralField& omega_init, const SpectralField& source, double t_a, double t_b,
                           double dt, double viscosity = 1.0);

struct SlabSolution {
  Trajectory trajectory;
  PicardReport report;
};

/// Successive approximation on one slab: the averaged vorticity feeds the frozen
/// source, the auxiliary problem is re-solved from `omega_init`, and the new average
/// is compared with the previous one until the L^2 change drops to picard_tol.
/// Non-convergence is reported, not thrown.
SlabSolution picard_slab(const Trajectory& u_traj, const SpectralField& omega_init, double t_a, double t_b,
                         const SchemeConfig& cfg);

/// K* = (t_b - t_a) sup sum_i ||u_i||^2 + int sum_i ||grad u_i||^2 over the slab.
double slab_functional(const Trajectory& u_traj, double t_a, double t_b);

/// N equal slabs over the trajectory span with K* and admissibility filled in.
SlabPartition uniform_partition(const Trajectory& u_traj, int slab_count, const SchemeConfig& cfg);

class AdmissibilityError : public Error {
 public:
  AdmissibilityError(SlabPartition partition, std::vector<std::size_t> stubborn);
  const SlabPartition& partition() const noexcept { return partition_; }
  const std::vector<std::size_t>& stubborn() const noexcept { return stubborn_; }

 private:
  SlabPartition partition_;
  std::vector<std::size_t> stubborn_;
};

/// Starts from initial_slab_count equal slabs and bisects every slab violating
/// 1 - 4 C K* >= epsilon0, for at most max_refinements rounds. Slabs that would drop
/// below two trajectory samples are not split. Throws AdmissibilityError (carrying
/// the last partition) if any slab remains inadmissible.
SlabPartition admissible_partition(const Trajectory& u_traj, const SchemeConfig& cfg);

struct SchemeRun {
  Trajectory trajectory;           // chained vorticity over completed slabs
  std::vector<double> slab_sup;    // M_k: sup of sum_i ||omega_i||^2 over slab k
  SlabPartition partition;
  std::vector<PicardReport> reports;
  std::optional<std::size_t> failed_slab;
  double k0 = 0.0;                 // sum_i ||omega_i(0)||^2
  double t_end = 0.0;

  bool converged() const { return !failed_slab.has_value(); }
};

/// Runs the chained scheme on a given partition; stops at the first slab whose Picard
/// loop does not converge. `omega0` must equal curl of the first velocity sample.
SchemeRun run_on_partition(const Trajectory& u_traj, const SpectralField& omega0, const SlabPartition& partition,
                           const SchemeConfig& cfg);

/// admissible_partition followed by run_on_partition.
SchemeRun run_slab_scheme(const Trajectory& u_traj, const SpectralField& omega0, const SchemeConfig& cfg);

/// sqrt(int ||a(t) - b(t)||^2 dt) by the trapezoid over a's sample times, b interpolated.
double l2q_distance(const Trajectory& a, const Trajectory& b);

struct RefinementPoint {
  int slab_count = 0;
  double slab_length = 0.0;
  double error = 0.0;
  bool converged = true;
};

struct RefinementStudy {
  std::vector<RefinementPoint> points;
  double slope = 0.0;  // fitted d log(error) / d log(slab_length)
};

/// L^2(Q) distance between the slab-scheme vorticity on uniform N-slab partitions
/// and `reference_vorticity`, for each N.
RefinementStudy scheme_refinement_study(const Trajectory& u_traj, const Trajectory& reference_vorticity,
                                        std::span<const int> slab_counts, const SchemeConfig& cfg);

/// Least-squares slope of log(y) against log(x) over pairs with positive entries.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace vslb
