#include "vslb/estimate_auditor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "vslb/initial_conditions.hpp"
#include "vslb/operators.hpp"
#include "vslb/transforms.hpp"

namespace vslb {
namespace {

class Context {
 public:
  template <typename T>
  Context& add(const char* key, const T& value) {
    if (!first_) out_ << ';';
    first_ = false;
    out_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool first_ = true;
};

double relative_residual(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

}  // namespace

AuditReport identity_report(std::string name, double lhs, double rhs, double tolerance, std::string context) {
  AuditReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -relative_residual(lhs, rhs);
  r.tolerance = tolerance;
  r.pass = r.margin >= -tolerance;
  r.kind = AuditKind::identity;
  r.context = std::move(context);
  return r;
}

AuditReport inequality_report(std::string name, double lhs, double rhs, double tolerance, std::string context) {
  AuditReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = r.margin >= -tolerance;
  r.kind = AuditKind::inequality;
  r.context = std::move(context);
  return r;
}

bool any_identity_failure(std::span<const AuditReport> reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const AuditReport& r) { return r.kind == AuditKind::identity && !r.pass; });
}

AuditReport audit_energy_identity(const Trajectory& u_traj, double viscosity, double tolerance) {
  if (u_traj.empty()) throw PreconditionError("audit_energy_identity: empty trajectory");
  std::vector<double> times = u_traj.times();
  std::vector<double> dissipation;
  for (const auto& s : u_traj) dissipation.push_back(h1_seminorm_squared(s.field));
  const double e0 = l2_norm_squared(u_traj.front().field);
  const double eT = l2_norm_squared(u_traj.back().field);
  const double lhs = eT + 2.0 * viscosity * simpson(times, dissipation);
  AuditReport r = identity_report("energy_identity", lhs, e0, tolerance,
                                  Context()
                                      .add("n", u_traj.lattice().n())
                                      .add("samples", u_traj.size())
                                      .add("T", u_traj.t_end())
                                      .add("tol", tolerance)
                                      .str());
  // normalise by the initial energy, not by max(lhs, rhs)
  const double residual = e0 == 0.0 ? std::abs(lhs) : std::abs(lhs - e0) / e0;
  r.margin = -residual;
  r.pass = r.margin >= -tolerance;
  return r;
}

AuditReport audit_grad_curl(const SpectralField& u, double tolerance) {
  if (!is_solenoidal(u, 1e-10)) throw PreconditionError("audit_grad_curl: velocity is not solenoidal");
  const double scale = std::max(1.0, std::sqrt(l2_norm_squared(u)));
  if (mean_magnitude(u) > 1e-12 * scale) throw PreconditionError("audit_grad_curl: velocity has nonzero mean");
  return identity_report("grad_curl", h1_seminorm_squared(u), l2_norm_squared(curl(u)), tolerance,
                         Context().add("n", u.lattice().n()).add("tol", tolerance).str());
}

AuditReport audit_parseval(const VectorGrid& samples, const Lattice& lattice, double tolerance) {
  const Lattice full = lattice.without_dealiasing();
  double grid_mean = 0.0;
  for (double v : samples.values) grid_mean += v * v;
  grid_mean /= static_cast<double>(samples.points());
  const SpectralField f = to_spectral(samples, full);
  return identity_report("parseval", grid_mean, l2_norm_squared(f), tolerance,
                         Context().add("n", lattice.n()).add("tol", tolerance).str());
}

double space_time_sobolev_ratio(std::span<const SpaceTimeTerm> terms, double extent) {
  if (terms.empty() || !(extent > 0.0)) throw PreconditionError("space_time_sobolev_ratio: empty field or extent");
  int max_cycles = 0;
  for (const auto& t : terms) max_cycles = std::max(max_cycles, std::abs(t.cycles));
  // |w|^4 has time frequencies up to 4 * max_cycles; a uniform periodic rule with more
  // points integrates it exactly
  const int nt = 8 * (max_cycles + 1);
  const double h = extent / nt;
  constexpr double tau = 2.0 * std::numbers::pi;
  double l2 = 0.0, grad = 0.0, dt2 = 0.0, l4 = 0.0;
  const Lattice& lat = terms.front().profile.lattice();
  for (int q = 0; q < nt; ++q) {
    const double t = q * h;
    SpectralField w(lat), wt(lat);
    for (const auto& term : terms) {
      const double omega_t = tau * term.cycles / extent;
      w.add_scaled(std::cos(omega_t * t + term.phase), term.profile);
      wt.add_scaled(-omega_t * std::sin(omega_t * t + term.phase), term.profile);
    }
    l2 += l2_norm_squared(w);
    grad += h1_seminorm_squared(w);
    dt2 += l2_norm_squared(wt);
    const double l4w = l4_norm(w);
    l4 += l4w * l4w * l4w * l4w;
  }
  const double h1 = std::sqrt(h * (l2 + grad + dt2));
  if (h1 == 0.0) return 0.0;
  return std::pow(h * l4, 0.25) / h1;
}

double probe_sobolev_constant(const Lattice& lattice, int samples, std::uint64_t seed, double extent) {
  if (samples < 1) throw PreconditionError("probe_sobolev_constant: samples must be >= 1");
  if (!(extent > 0.0)) throw PreconditionError("probe_sobolev_constant: extent must be > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int max_peak = std::max(1, std::min(3, lattice.cutoff()));
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int term_count = 1 + static_cast<int>(rng() % 2);
    std::vector<SpaceTimeTerm> terms;
    for (int k = 0; k < term_count; ++k) {
      ICSpec spec;
      spec.kind = ICKind::random_divfree;
      spec.amplitude = 1.0;
      spec.seed = rng();
      spec.peak_index = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_peak));
      spec.spectrum_slope = -2.0;
      const int cycles = static_cast<int>(rng() % 3);
      terms.push_back({cycles, phase(rng), make_initial(spec, lattice)});
    }
    best = std::max(best, space_time_sobolev_ratio(terms, extent));
  }
  return best;
}

std::vector<AuditReport> audit_enstrophy_chain(const SchemeRun& run, const SchemeConfig& cfg, std::uint64_t seed) {
  std::vector<AuditReport> out;
  const double rate = cfg.growth_rate();
  const auto& p = run.partition;
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.push_back(inequality_report("admissibility[" + std::to_string(k) + "]", cfg.epsilon0,
                                    1.0 - 4.0 * cfg.sobolev_C * p.kk_star[k], 0.0,
                                    Context()
                                        .add("t_a", p.t_a(k))
                                        .add("t_b", p.t_b(k))
                                        .add("kk_star", p.kk_star[k])
                                        .add("C", cfg.sobolev_C)
                                        .str()));
  }
  double previous = run.k0;
  double sup = 0.0;
  for (std::size_t k = 0; k < run.slab_sup.size(); ++k) {
    const double bound = previous * std::exp(rate * (p.t_b(k) - p.t_a(k)));
    out.push_back(inequality_report("enstrophy_step[" + std::to_string(k) + "]", run.slab_sup[k], bound,
                                    1e-12 * std::max(1.0, bound),
                                    Context().add("t_a", p.t_a(k)).add("t_b", p.t_b(k)).str()));
    previous = run.slab_sup[k];
    sup = std::max(sup, run.slab_sup[k]);
  }
  for (std::size_t k = 0; k < run.reports.size(); ++k) {
    const auto& rep = run.reports[k];
    if (rep.converged) continue;
    out.push_back(inequality_report("picard[" + std::to_string(k) + "]",
                                    rep.residuals.empty() ? 0.0 : rep.residuals.back(), cfg.picard_tol, 0.0,
                                    Context()
                                        .add("iterations", rep.iterations)
                                        .add("contraction_ratio", rep.contraction_ratio)
                                        .str()));
  }
  const double global_bound = run.k0 * std::exp(rate * (run.t_end - p.times.front()));
  out.push_back(inequality_report("enstrophy_global", sup, global_bound, 1e-12 * std::max(1.0, global_bound),
                                  Context()
                                      .add("K0", run.k0)
                                      .add("epsilon0", cfg.epsilon0)
                                      .add("T", run.t_end)
                                      .add("completed_slabs", run.slab_sup.size())
                                      .str()));

  // u v <= u^2 / 4 + v^2 on vorticity grid values and seeded random pairs, as the
  // largest ratio u v / (u^2 / 4 + v^2)
  double worst = 0.0;
  auto check = [&worst](double u, double v) {
    const double bound = 0.25 * u * u + v * v;
    if (bound > 0.0) worst = std::max(worst, u * v / bound);
  };
  if (!run.trajectory.empty()) {
    const VectorGrid g = to_physical(run.trajectory.back().field);
    const auto a = g.component(0), b = g.component(1);
    for (std::size_t i = 0; i < a.size(); ++i) check(a[i], b[i]);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 1024; ++i) check(normal(rng), normal(rng));
  out.push_back(inequality_report("young_inequality", worst, 1.0, 1e-14, Context().add("seed", seed).str()));
  return out;
}

namespace {

double uniform_spacing(const Trajectory& traj) {
  const double h = (traj.t_end() - traj.t_start()) / static_cast<double>(traj.size() - 1);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    if (std::abs((traj[k + 1].time - traj[k].time) - h) > 1e-9 * h) {
      throw PreconditionError("time-derivative audit needs uniformly spaced samples");
    }
  }
  return h;
}

}  // namespace

std::vector<double> time_derivative_energy(const Trajectory& u_traj) {
  if (u_traj.size() < 3) throw PreconditionError("time-derivative audit needs at least 3 samples");
  const double h = uniform_spacing(u_traj);
  const std::size_t last = u_traj.size() - 1;
  std::vector<double> s;
  s.reserve(u_traj.size());
  for (std::size_t k = 0; k <= last; ++k) {
    SpectralField d(u_traj.lattice());
    if (k == 0) {
      d.add_scaled(-3.0, u_traj[0].field).add_scaled(4.0, u_traj[1].field).add_scaled(-1.0, u_traj[2].field);
    } else if (k == last) {
      d.add_scaled(3.0, u_traj[last].field)
          .add_scaled(-4.0, u_traj[last - 1].field)
          .add_scaled(1.0, u_traj[last - 2].field);
    } else {
      d.add_scaled(1.0, u_traj[k + 1].field).add_scaled(-1.0, u_traj[k - 1].field);
    }
    d *= 1.0 / (2.0 * h);
    s.push_back(l2_norm_squared(d));
  }
  return s;
}

AuditReport audit_time_derivative_bound(const Trajectory& u_traj) {
  const std::vector<double> s = time_derivative_energy(u_traj);
  const std::vector<double> times = u_traj.times();
  std::vector<double> phi;
  for (const auto& sample : u_traj) {
    const double ens = l2_norm_squared(curl(sample.field));
    phi.push_back(27.0 * ens * ens);
  }
  const double phi_integral = trapezoid(times, phi, times.front(), times.back());
  const double sup = *std::max_element(s.begin(), s.end());
  const Context ctx = std::move(Context()
                                    .add("space", "log")
                                    .add("samples", u_traj.size())
                                    .add("h", times[1] - times[0])
                                    .add("S0", s.front())
                                    .add("phi_integral", phi_integral));
  if (s.front() == 0.0) {
    // zero initial rate: the bound reads sup S <= 0
    return inequality_report("time_derivative_bound", sup, 0.0, 0.0, ctx.str());
  }
  return inequality_report("time_derivative_bound", std::log(sup), std::log(s.front()) + phi_integral, 1e-12,
                           ctx.str());
}

std::vector<AuditReport> audit_average_contraction(const Trajectory& u_traj, std::span<const int> slab_counts,
                                                   double tolerance) {
  const std::vector<double> times = u_traj.times();
  std::vector<double> energy;
  for (const auto& s : u_traj) energy.push_back(l2_norm_squared(s.field));
  const double t0 = u_traj.t_start(), t1 = u_traj.t_end();
  auto ratio = [](double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? 2.0 : 0.0); };
  std::vector<AuditReport> out;
  for (const int count : slab_counts) {
    if (count < 1) throw PreconditionError("audit_average_contraction: slab counts must be >= 1");
    double averaged = 0.0;
    for (int k = 0; k < count; ++k) {
      const double a = t0 + (t1 - t0) * k / count;
      const double b = k + 1 == count ? t1 : t0 + (t1 - t0) * (k + 1) / count;
      const double lhs = l2_norm_squared(slab_average(u_traj, a, b));
      const double rhs = trapezoid(times, energy, a, b) / (b - a);
      averaged += (b - a) * lhs;
      out.push_back(inequality_report("average_contraction[" + std::to_string(count) + "][" + std::to_string(k) + "]",
                                      ratio(lhs, rhs), 1.0, tolerance,
                                      Context().add("N", count).add("t_a", a).add("t_b", b).str()));
    }
    const double total = trapezoid(times, energy, t0, t1);
    out.push_back(inequality_report("average_contraction_global[" + std::to_string(count) + "]",
                                    ratio(averaged, total), 1.0, tolerance, Context().add("N", count).str()));
  }
  return out;
}

double average_error(const Trajectory& u_traj, int slab_count) {
  if (slab_count < 1) throw PreconditionError("average_error: slab_count must be >= 1");
  const std::vector<double> times = u_traj.times();
  const double t0 = u_traj.t_start(), t1 = u_traj.t_end();
  double total = 0.0;
  for (int k = 0; k < slab_count; ++k) {
    const double a = t0 + (t1 - t0) * k / slab_count;
    const double b = k + 1 == slab_count ? t1 : t0 + (t1 - t0) * (k + 1) / slab_count;
    const SpectralField avg = slab_average(u_traj, a, b);
    for (const auto& node : trapezoid_nodes(times, a, b)) {
      total += node.weight * l2_norm_squared(u_traj[node.index].field - avg);
    }
  }
  return std::sqrt(total);
}

std::vector<AuditReport> audit_average_convergence(const Trajectory& u_traj, std::span<const int> slab_counts) {
  if (slab_counts.size() < 2) throw PreconditionError("audit_average_convergence: need >= 2 slab counts");
  std::vector<int> counts(slab_counts.begin(), slab_counts.end());
  std::sort(counts.begin(), counts.end());
  const double span = u_traj.t_end() - u_traj.t_start();
  // errors at roundoff level (a time-constant trajectory) count as exact zeros
  std::vector<double> times = u_traj.times(), energy;
  for (const auto& s : u_traj) energy.push_back(l2_norm_squared(s.field));
  const double floor = 1e-13 * std::sqrt(trapezoid(times, energy, times.front(), times.back()));
  std::vector<double> lengths, errors;
  std::vector<AuditReport> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double err = average_error(u_traj, counts[i]);
    if (err <= floor) err = 0.0;
    lengths.push_back(span / counts[i]);
    errors.push_back(err);
    const std::string name = "average_error[" + std::to_string(counts[i]) + "]";
    const std::string ctx = Context().add("N", counts[i]).add("error", err).str();
    if (i == 0) {
      out.push_back(inequality_report(name, err, err, 0.0, ctx));
      continue;
    }
    const double prev = errors[i - 1];
    const double ratio = prev == 0.0 ? 0.0 : err / prev;
    const double allowed = std::pow(0.6, std::log2(static_cast<double>(counts[i]) / counts[i - 1]));
    out.push_back(inequality_report(name, ratio, allowed, 0.0, ctx));
  }
  const bool exact = std::all_of(errors.begin(), errors.end(), [](double e) { return e == 0.0; });
  if (exact) {
    out.push_back(inequality_report("average_rate", 0.0, 0.0, 0.0, "exact=1"));
  } else {
    const double slope = fit_loglog_slope(lengths, errors);
    out.push_back(inequality_report("average_rate", 0.9, slope, 0.0, Context().add("slope", slope).str()));
  }
  return out;
}

Trajectory subsample(const Trajectory& traj, std::size_t factor) {
  if (factor < 1) throw PreconditionError("subsample: factor must be >= 1");
  Trajectory out;
  for (std::size_t k = 0; k < traj.size(); k += factor) out.push_back(traj[k].time, traj[k].field);
  return out;
}

}  // namespace vslb
