#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vslb/slab_scheme.hpp"
#include "vslb/spectral_field.hpp"
#include "vslb/trajectory.hpp"

namespace vslb {

enum class AuditKind { identity, inequality };

/// One checked relation. For identities `margin` is minus the relative residual; for
/// inequalities it is rhs - lhs, unclamped. pass <=> margin >= -tolerance.
struct AuditReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  AuditKind kind = AuditKind::inequality;
  std::string context;
};

AuditReport identity_report(std::string name, double lhs, double rhs, double tolerance, std::string context);
AuditReport inequality_report(std::string name, double lhs, double rhs, double tolerance, std::string context);

bool any_identity_failure(std::span<const AuditReport> reports);

/// ||u(T)||^2 + 2 viscosity int_0^T sum_i ||grad u_i||^2 = ||u(0)||^2, Simpson in time.
AuditReport audit_energy_identity(const Trajectory& u_traj, double viscosity = 1.0, double tolerance = 1e-5);

/// sum_i ||grad u_i||^2 = sum_i ||omega_i||^2 for solenoidal mean-free u; throws
/// PreconditionError otherwise.
AuditReport audit_grad_curl(const SpectralField& u, double tolerance = 1e-11);

/// grid mean |u|^2 against the mode sum, on a lattice without dealiasing.
AuditReport audit_parseval(const VectorGrid& samples, const Lattice& lattice, double tolerance = 1e-12);

/// One separable term h(t) f(x) of a space-time probe field, h(t) = cos(2 pi cycles t / extent + phase).
struct SpaceTimeTerm {
  int cycles = 0;
  double phase = 0.0;
  SpectralField profile;
};

/// ||w||_{L^4(Q)} / ||w||_{H^1(Q)} on Q = (0, extent) x unit box, with
/// ||w||_{H^1(Q)}^2 = int (|w|^2 + |grad_x w|^2 + |d_t w|^2). Periodic uniform time
/// quadrature that is exact for the trigonometric integrands.
double space_time_sobolev_ratio(std::span<const SpaceTimeTerm> terms, double extent);

/// Running maximum of space_time_sobolev_ratio over `samples` seeded random fields.
/// Throws PreconditionError when samples < 1.
double probe_sobolev_constant(const Lattice& lattice, int samples, std::uint64_t seed, double extent);

/// Scheme constant exported from a probe value: 2 * probe^2.
inline double scheme_constant(double probe) { return 2.0 * probe * probe; }

/// For each N: ||u_bar^k||^2 <= (1/dt_k) int_k ||u||^2 on every slab, and
/// sum_k dt_k ||u_bar^k||^2 <= ||u||^2_{L^2(Q)}. Both are reported as ratios against 1.
std::vector<AuditReport> audit_average_contraction(const Trajectory& u_traj, std::span<const int> slab_counts,
                                                   double tolerance = 1e-10);

/// Per slab: admissibility margin, M_k <= M_{k-1} e^{r dt_k} (M_0 = K0), Picard
/// convergence; globally: max M_k <= K0 e^{r T}; and a pointwise Young check.
std::vector<AuditReport> audit_enstrophy_chain(const SchemeRun& run, const SchemeConfig& cfg,
                                               std::uint64_t seed = 0);

/// sum_i ||d_t u_i||^2 at each sample by second-order finite differences
/// (one-sided at the ends). Requires >= 3 uniformly spaced samples.
std::vector<double> time_derivative_energy(const Trajectory& u_traj);

/// sup_t S(t) <= S(0) exp(int_0^T phi), phi = 27 (sum_i ||omega_i||^2)^2, checked in log space:
/// lhs = ln sup S, rhs = ln S(0) + int phi.
AuditReport audit_time_derivative_bound(const Trajectory& u_traj);

/// ||u_bar - u||_{L^2(Q)} for the uniform N-slab partition of the trajectory span.
double average_error(const Trajectory& u_traj, int slab_count);

/// Per N: error ratios against the previous N (expected <= 0.6 per doubling) and the fitted
/// log-log slope of error against slab length (expected >= 0.9).
std::vector<AuditReport> audit_average_convergence(const Trajectory& u_traj, std::span<const int> slab_counts);

/// Every k-th sample (always keeping the first), for stride-halving studies.
Trajectory subsample(const Trajectory& traj, std::size_t factor);

}  // namespace vslb
