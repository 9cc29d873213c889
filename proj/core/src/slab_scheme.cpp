#include "vslb/slab_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mode_loop.hpp"
#include "vslb/operators.hpp"
#include "vslb/reference_solver.hpp"

namespace vslb {

void SchemeConfig::validate() const {
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw PreconditionError("scheme epsilon0 must lie in (0, 1)");
  if (!(sobolev_C > 0.0) || !std::isfinite(sobolev_C)) throw PreconditionError("scheme sobolev_C must be > 0");
  if (!(picard_tol > 0.0)) throw PreconditionError("scheme picard_tol must be > 0");
  if (picard_max_iter < 1) throw PreconditionError("scheme picard_max_iter must be >= 1");
  if (initial_slab_count < 1) throw PreconditionError("scheme initial_slab_count must be >= 1");
  if (max_refinements < 0) throw PreconditionError("scheme max_refinements must be >= 0");
  if (!(viscosity > 0.0)) throw PreconditionError("scheme viscosity must be > 0");
}

bool SlabPartition::accepted() const {
  return std::all_of(admissible.begin(), admissible.end(), [](bool a) { return a; });
}

namespace {

bool within_span(const Trajectory& traj, double t_a, double t_b) {
  return (t_a >= traj.t_start() || same_time(t_a, traj.t_start())) &&
         (t_b <= traj.t_end() || same_time(t_b, traj.t_end())) && t_b > t_a;
}

double mean_spacing(const Trajectory& traj) {
  return (traj.t_end() - traj.t_start()) / static_cast<double>(traj.size() - 1);
}

}  // namespace

SpectralField slab_average(const Trajectory& traj, double t_a, double t_b) {
  if (traj.size() < 2 || !within_span(traj, t_a, t_b)) {
    throw PreconditionError("slab_average: [" + std::to_string(t_a) + ", " + std::to_string(t_b) +
                            "] outside trajectory span");
  }
  if (traj.count_within(t_a, t_b) < 2) {
    throw PreconditionError("slab_average: fewer than 2 samples in [" + std::to_string(t_a) + ", " +
                            std::to_string(t_b) + "]");
  }
  const std::vector<double> times = traj.times();
  SpectralField avg(traj.lattice());
  for (const auto& node : trapezoid_nodes(times, t_a, t_b)) avg.add_scaled(node.weight, traj[node.index].field);
  avg *= 1.0 / (t_b - t_a);
  return avg;
}

SpectralField auxiliary_rhs(const SpectralField& u_bar, const SpectralField& omega_bar) {
  return vorticity_nonlinear(omega_bar, u_bar);
}

Trajectory solve_auxiliary(const SpectralField& omega_init, const SpectralField& source, double t_a, double t_b,
                           double dt, double viscosity) {
  if (!(t_b > t_a) || !(dt > 0.0)) throw PreconditionError("solve_auxiliary: need t_b > t_a and dt > 0");
  const Lattice& lat = omega_init.lattice();
  const double span = t_b - t_a;
  long intervals = std::lround(span / dt);
  if (std::abs(span / dt - static_cast<double>(intervals)) > 1e-9 * std::max(1.0, span / dt)) {
    intervals = static_cast<long>(std::ceil(span / dt));
  }
  intervals = std::max(1L, intervals);

  // per-mode decay rate viscosity |2 pi k|^2; zero marks modes held at zero
  std::vector<double> rate(lat.mode_count(), 0.0);
  detail::for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
    if (lat.touches_nyquist(m1, m2, m3) || (m1 == 0 && m2 == 0 && m3 == 0)) return;
    rate[k] = viscosity * detail::kTwoPi * detail::kTwoPi * (m1 * m1 + m2 * m2 + m3 * m3);
  });

  Trajectory out;
  for (long s = 0; s <= intervals; ++s) {
    const double t = s == intervals ? t_b : t_a + static_cast<double>(s) * dt;
    const double tau = t - t_a;
    SpectralField w(lat);
    for (std::size_t k = 0; k < rate.size(); ++k) {
      if (rate[k] == 0.0) continue;
      const double decay = std::exp(-rate[k] * tau);
      const double gain = -std::expm1(-rate[k] * tau) / rate[k];
      for (int c = 0; c < 3; ++c) w(c, k) = decay * omega_init(c, k) + gain * source(c, k);
    }
    out.push_back(t, std::move(w));
  }
  return out;
}

SlabSolution picard_slab(const Trajectory& u_traj, const SpectralField& omega_init, double t_a, double t_b,
                         const SchemeConfig& cfg) {
  cfg.validate();
  const double dt = cfg.aux_dt > 0.0 ? cfg.aux_dt : mean_spacing(u_traj);
  const SpectralField u_bar = slab_average(u_traj, t_a, t_b);

  SlabSolution sol;
  SpectralField omega_bar = omega_init;
  for (int it = 1; it <= cfg.picard_max_iter; ++it) {
    const SpectralField source = auxiliary_rhs(u_bar, omega_bar);
    sol.trajectory = solve_auxiliary(omega_init, source, t_a, t_b, dt, cfg.viscosity);
    SpectralField next_bar = slab_average(sol.trajectory, t_a, t_b);
    const double residual = std::sqrt(l2_norm_squared(next_bar - omega_bar));
    sol.report.residuals.push_back(residual);
    sol.report.iterations = it;
    omega_bar = std::move(next_bar);
    if (!std::isfinite(residual)) break;
    if (residual <= cfg.picard_tol) {
      sol.report.converged = true;
      break;
    }
  }
  const auto& r = sol.report.residuals;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (r[i] > 0.0) sol.report.contraction_ratio = std::max(sol.report.contraction_ratio, r[i + 1] / r[i]);
  }
  return sol;
}

namespace {

struct ScalarSeries {
  std::vector<double> times;
  std::vector<double> energy2;      // sum_i ||u_i||^2
  std::vector<double> dissipation;  // sum_i ||grad u_i||^2
};

ScalarSeries velocity_series(const Trajectory& u_traj) {
  ScalarSeries s;
  s.times = u_traj.times();
  for (const auto& sample : u_traj) {
    s.energy2.push_back(l2_norm_squared(sample.field));
    s.dissipation.push_back(h1_seminorm_squared(sample.field));
  }
  return s;
}

double interpolate(std::span<const double> times, std::span<const double> values, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return values.back();
  const auto hi = static_cast<std::size_t>(it - times.begin());
  if (hi == 0 || same_time(times[hi], t)) return values[hi];
  const double theta = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
  return (1.0 - theta) * values[hi - 1] + theta * values[hi];
}

double slab_functional(const ScalarSeries& s, double t_a, double t_b) {
  double sup = std::max(interpolate(s.times, s.energy2, t_a), interpolate(s.times, s.energy2, t_b));
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    if (s.times[k] > t_a && s.times[k] < t_b) sup = std::max(sup, s.energy2[k]);
  }
  return (t_b - t_a) * sup + trapezoid(s.times, s.dissipation, t_a, t_b);
}

void evaluate(SlabPartition& p, const ScalarSeries& s, const SchemeConfig& cfg) {
  p.kk_star.clear();
  p.admissible.clear();
  for (std::size_t k = 0; k + 1 < p.times.size(); ++k) {
    const double kk = slab_functional(s, p.times[k], p.times[k + 1]);
    p.kk_star.push_back(kk);
    p.admissible.push_back(1.0 - 4.0 * cfg.sobolev_C * kk >= cfg.epsilon0);
  }
}

std::vector<double> uniform_times(double t0, double t1, int count) {
  std::vector<double> times;
  for (int k = 0; k <= count; ++k) times.push_back(k == count ? t1 : t0 + (t1 - t0) * k / count);
  return times;
}

}  // namespace

double slab_functional(const Trajectory& u_traj, double t_a, double t_b) {
  return slab_functional(velocity_series(u_traj), t_a, t_b);
}

SlabPartition uniform_partition(const Trajectory& u_traj, int slab_count, const SchemeConfig& cfg) {
  if (slab_count < 1) throw PreconditionError("uniform_partition: slab_count must be >= 1");
  SlabPartition p;
  p.times = uniform_times(u_traj.t_start(), u_traj.t_end(), slab_count);
  evaluate(p, velocity_series(u_traj), cfg);
  return p;
}

AdmissibilityError::AdmissibilityError(SlabPartition partition, std::vector<std::size_t> stubborn)
    : Error([&] {
        std::string msg = "admissibility unreachable on slabs";
        for (auto k : stubborn) msg += " " + std::to_string(k);
        return msg;
      }()),
      partition_(std::move(partition)),
      stubborn_(std::move(stubborn)) {}

SlabPartition admissible_partition(const Trajectory& u_traj, const SchemeConfig& cfg) {
  cfg.validate();
  if (u_traj.size() < 2) throw PreconditionError("admissible_partition: trajectory needs >= 2 samples");
  const ScalarSeries series = velocity_series(u_traj);
  SlabPartition p;
  p.times = uniform_times(u_traj.t_start(), u_traj.t_end(), cfg.initial_slab_count);
  evaluate(p, series, cfg);

  for (int round = 0; round < cfg.max_refinements && !p.accepted(); ++round) {
    std::vector<double> next{p.times.front()};
    bool split_any = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double a = p.t_a(k), b = p.t_b(k), mid = 0.5 * (a + b);
      if (!p.admissible[k] && u_traj.count_within(a, mid) >= 2 && u_traj.count_within(mid, b) >= 2) {
        next.push_back(mid);
        split_any = true;
      }
      next.push_back(b);
    }
    if (!split_any) break;
    p.times = std::move(next);
    evaluate(p, series, cfg);
  }

  if (!p.accepted()) {
    std::vector<std::size_t> stubborn;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!p.admissible[k]) stubborn.push_back(k);
    }
    throw AdmissibilityError(std::move(p), std::move(stubborn));
  }
  return p;
}

SchemeRun run_on_partition(const Trajectory& u_traj, const SpectralField& omega0, const SlabPartition& partition,
                           const SchemeConfig& cfg) {
  cfg.validate();
  const SpectralField expected = curl(u_traj.front().field);
  const double scale = std::max(1.0, std::sqrt(l2_norm_squared(expected)));
  if (std::sqrt(l2_norm_squared(omega0 - expected)) > 1e-10 * scale) {
    throw PreconditionError("run_slab_scheme: omega0 is not the curl of the initial velocity");
  }

  SchemeRun run;
  run.partition = partition;
  run.k0 = l2_norm_squared(omega0);
  run.t_end = partition.times.back();
  SpectralField omega_init = omega0;
  for (std::size_t k = 0; k < partition.size(); ++k) {
    SlabSolution sol = picard_slab(u_traj, omega_init, partition.t_a(k), partition.t_b(k), cfg);
    double sup = 0.0;
    for (const auto& s : sol.trajectory) sup = std::max(sup, l2_norm_squared(s.field));
    run.slab_sup.push_back(sup);
    const bool converged = sol.report.converged;
    run.reports.push_back(std::move(sol.report));
    for (std::size_t s = k == 0 ? 0 : 1; s < sol.trajectory.size(); ++s) {
      run.trajectory.push_back(sol.trajectory[s].time, sol.trajectory[s].field);
    }
    if (!converged) {
      run.failed_slab = k;
      break;
    }
    omega_init = sol.trajectory.back().field;
  }
  return run;
}

SchemeRun run_slab_scheme(const Trajectory& u_traj, const SpectralField& omega0, const SchemeConfig& cfg) {
  return run_on_partition(u_traj, omega0, admissible_partition(u_traj, cfg), cfg);
}

double l2q_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() < 2) return 0.0;
  const std::vector<double> times = a.times();
  std::vector<double> sq;
  sq.reserve(a.size());
  for (const auto& s : a) sq.push_back(l2_norm_squared(s.field - b.at(s.time)));
  return std::sqrt(trapezoid(times, sq, times.front(), times.back()));
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) continue;
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (count * sxy - sx * sy) / denom;
}

RefinementStudy scheme_refinement_study(const Trajectory& u_traj, const Trajectory& reference_vorticity,
                                        std::span<const int> slab_counts, const SchemeConfig& cfg) {
  RefinementStudy study;
  const SpectralField omega0 = curl(u_traj.front().field);
  std::vector<double> lengths, errors;
  for (int count : slab_counts) {
    const SlabPartition partition = uniform_partition(u_traj, count, cfg);
    const SchemeRun run = run_on_partition(u_traj, omega0, partition, cfg);
    RefinementPoint point;
    point.slab_count = count;
    point.slab_length = (u_traj.t_end() - u_traj.t_start()) / count;
    point.converged = run.converged();
    point.error = run.converged() ? l2q_distance(run.trajectory, reference_vorticity)
                                  : std::numeric_limits<double>::quiet_NaN();
    lengths.push_back(point.slab_length);
    errors.push_back(point.error);
    study.points.push_back(point);
  }
  study.slope = fit_loglog_slope(lengths, errors);
  return study;
}

}  // namespace vslb
