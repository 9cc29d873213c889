#include "vslb/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>

#include "vslb/checkpoint.hpp"
#include "vslb/csv.hpp"
#include "vslb/errors.hpp"
#include "vslb/estimate_auditor.hpp"
#include "vslb/operators.hpp"
#include "vslb/parallel.hpp"
#include "vslb/transforms.hpp"

namespace vslb {
namespace fs = std::filesystem;
namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_metadata(const fs::path& out_dir, std::string_view command, const fs::path& config_path) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ofstream out = open_output(out_dir / "metadata.txt");
  out << "command=" << command << '\n'
      << "config=" << config_path.string() << '\n'
      << "kernel_threads=" << kernel_threads() << '\n'
      << "finished_utc=" << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

Integration reference_run(const RunConfig& cfg) {
  SolverConfig solver = cfg.solver;
  solver.form = Form::velocity;
  return integrate(solver, make_initial(cfg.initial, cfg.lattice()));
}

double probe_extent(const RunConfig& cfg) { return cfg.audit.t_extent > 0.0 ? cfg.audit.t_extent : cfg.solver.t_end; }

SchemeConfig scheme_with_constant(const RunConfig& cfg) {
  SchemeConfig scheme = cfg.scheme;
  scheme.viscosity = cfg.solver.viscosity;
  scheme.sobolev_C = cfg.sobolev_C ? *cfg.sobolev_C
                                   : scheme_constant(probe_sobolev_constant(cfg.lattice(), cfg.audit.samples, cfg.seed,
                                                                            probe_extent(cfg)));
  return scheme;
}

/// Identity whose target is zero: lhs is the residual relative to `scale`.
AuditReport zero_identity(std::string name, double residual, double scale, double tolerance, std::string context) {
  AuditReport r;
  r.name = std::move(name);
  r.lhs = scale > 0.0 ? residual / scale : residual;
  r.rhs = 0.0;
  r.margin = -r.lhs;
  r.tolerance = tolerance;
  r.pass = r.margin >= -tolerance;
  r.kind = AuditKind::identity;
  r.context = std::move(context);
  return r;
}

double norm(const SpectralField& f) { return std::sqrt(l2_norm_squared(f)); }

int audit_exit(std::span<const AuditReport> reports) { return any_identity_failure(reports) ? kExitIdentity : kExitOk; }

}  // namespace

int cmd_reference(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const Integration run = reference_run(cfg);
  {
    std::ofstream out = open_output(out_dir / "diagnostics.csv");
    write_diagnostics_csv(out, run.diagnostics);
  }
  write_checkpoint(out_dir / "final_velocity.vslb", run.trajectory.back().field, run.trajectory.t_end());
  const std::vector<AuditReport> audits{audit_energy_identity(run.trajectory, cfg.solver.viscosity)};
  {
    std::ofstream out = open_output(out_dir / "audit.csv");
    write_audit_csv(out, audits);
  }
  log << "reference: " << run.trajectory.size() << " samples, energy identity "
      << (audits.front().pass ? "pass" : "FAIL") << '\n';
  return audit_exit(audits);
}

int cmd_slab(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const Integration reference = reference_run(cfg);
  const Trajectory& u = reference.trajectory;
  const SchemeConfig scheme = scheme_with_constant(cfg);

  SlabPartition partition;
  bool admissible = true;
  try {
    partition = admissible_partition(u, scheme);
  } catch (const AdmissibilityError& e) {
    partition = e.partition();
    admissible = false;
  }
  const SchemeRun run = run_on_partition(u, curl(u.front().field), partition, scheme);

  std::vector<AuditReport> audits = audit_enstrophy_chain(run, scheme, cfg.seed);
  audits.push_back(audit_energy_identity(u, cfg.solver.viscosity));
  {
    std::ofstream out = open_output(out_dir / "slab_report.csv");
    write_slab_report(out, run, scheme);
  }
  {
    std::ofstream out = open_output(out_dir / "audit.csv");
    write_audit_csv(out, audits);
  }
  log << "slab: " << partition.size() << " slabs, " << (admissible ? "admissible" : "NOT admissible") << ", C = "
      << format_real(scheme.sobolev_C);
  if (run.failed_slab) log << ", Picard failed on slab " << *run.failed_slab;
  log << '\n';
  if (!run.converged()) return kExitPicard;
  return audit_exit(audits);
}

// The finest averaging slab needs at least two stored samples.
void require_slab_resolution(const RunConfig& cfg) {
  const int finest = *std::max_element(cfg.converge.slab_counts.begin(), cfg.converge.slab_counts.end());
  const double spacing = cfg.solver.dt * cfg.solver.sample_stride;
  if (cfg.solver.t_end / finest < 2.0 * spacing * (1.0 - 1e-9))
    throw ConfigError("converge.slab_counts", "finest slab must span at least two sample intervals (dt * sample_stride)");
}

int cmd_audit(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  require_slab_resolution(cfg);
  const Lattice& lat = cfg.lattice();
  std::vector<AuditReport> audits;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int max_peak = std::max(1, std::min(lat.cutoff(), lat.n() / 2 - 1));

  for (int f = 0; f < cfg.audit.fields; ++f) {
    const std::string tag = "[" + std::to_string(f) + "]";
    const std::string ctx = "n=" + std::to_string(lat.n()) + ";field=" + std::to_string(f);

    VectorGrid grid(lat.n());
    for (double& v : grid.values) v = normal(rng);
    audits.push_back(audit_parseval(grid, lat));

    ICSpec spec;
    spec.kind = ICKind::random_divfree;
    spec.seed = rng();
    spec.peak_index = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_peak));
    SpectralField u = make_initial(spec, lat);
    if (cfg.audit.inject_hermitian_fault && f == 0) {
      u(0, lat.mode_offset(1, 0, 0)) += Complex(0.0, 1.0);
    }
    const double defect = hermitian_defect(u);
    AuditReport herm = inequality_report("hermitian" + tag, defect, kHermitianTolerance, 0.0, ctx);
    herm.kind = AuditKind::identity;
    audits.push_back(herm);
    if (!herm.pass) continue;

    audits.push_back(audit_grad_curl(u));
    const SpectralField w = curl(u);
    audits.push_back(zero_identity("div_curl" + tag, std::sqrt(l2_norm_squared(divergence(w))),
                                   std::sqrt(h1_seminorm_squared(w)), 1e-11, ctx));
    ScalarGrid potential(lat.n());
    for (double& v : potential.values) v = normal(rng);
    const SpectralField g = gradient(to_spectral(potential, lat));
    const SpectralField p = leray_project(u + g);
    audits.push_back(zero_identity("leray_idempotence" + tag, norm(leray_project(p) - p), norm(p), 1e-11, ctx));
    audits.push_back(zero_identity("curl_grad" + tag, norm(curl(g)), norm(g), 1e-11, ctx));
    audits.push_back(zero_identity("biot_savart" + tag, norm(biot_savart(w) - u), norm(u), 1e-11, ctx));
  }

  // single-mode space-time field with a closed-form Sobolev ratio
  {
    const double tau = probe_extent(cfg);
    SpectralField profile(lat);
    profile.set_mode(2, 1, 0, 0, Complex(0.5, 0.0));
    const std::vector<SpaceTimeTerm> terms{{1, 0.0, profile}};
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double expected = std::pow(9.0 * tau / 64.0, 0.25) /
                            std::sqrt(0.25 * tau * (1.0 + two_pi * two_pi + (two_pi / tau) * (two_pi / tau)));
    audits.push_back(identity_report("sobolev_single_mode", space_time_sobolev_ratio(terms, tau), expected, 1e-11,
                                     "extent=" + format_real(tau)));
    const double probe = probe_sobolev_constant(lat, cfg.audit.samples, cfg.seed, tau);
    audits.push_back(inequality_report("sobolev_probe", 0.0, probe, 0.0,
                                       "samples=" + std::to_string(cfg.audit.samples) +
                                           ";C=" + format_real(scheme_constant(probe))));
  }

  // averaging and time-derivative audits on a seeded random trajectory
  {
    ICSpec spec = cfg.initial;
    spec.kind = ICKind::random_divfree;
    spec.seed = cfg.seed;
    if (spec.peak_index > max_peak) spec.peak_index = max_peak;
    SolverConfig solver = cfg.solver;
    solver.form = Form::velocity;
    const Integration run = integrate(solver, make_initial(spec, lat));
    audits.push_back(audit_energy_identity(run.trajectory, cfg.solver.viscosity));
    const std::vector<AuditReport> avg = audit_average_convergence(run.trajectory, cfg.converge.slab_counts);
    audits.insert(audits.end(), avg.begin(), avg.end());
    const std::vector<AuditReport> contraction = audit_average_contraction(run.trajectory, cfg.converge.slab_counts);
    audits.insert(audits.end(), contraction.begin(), contraction.end());
    try {
      audits.push_back(audit_time_derivative_bound(run.trajectory));
    } catch (const PreconditionError&) {
      audits.push_back(inequality_report("time_derivative_bound", 0.0, 0.0, 0.0, "skipped=nonuniform_samples"));
      audits.back().pass = false;
    }
  }

  {
    std::ofstream out = open_output(out_dir / "audit.csv");
    write_audit_csv(out, audits);
  }
  const auto failures = std::count_if(audits.begin(), audits.end(), [](const AuditReport& r) { return !r.pass; });
  log << "audit: " << audits.size() << " checks, " << failures << " failed\n";
  return audit_exit(audits);
}

int cmd_converge(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  require_slab_resolution(cfg);
  std::vector<RateRow> rows;
  const Integration reference = reference_run(cfg);
  const Trajectory& u = reference.trajectory;
  const double span = u.t_end() - u.t_start();

  {
    std::vector<double> lengths, errors;
    std::vector<RateRow> study;
    for (int count : cfg.converge.slab_counts) {
      const double err = average_error(u, count);
      lengths.push_back(span / count);
      errors.push_back(err);
      study.push_back({"average", count, span / count, err, 0.0});
    }
    const double slope = fit_loglog_slope(lengths, errors);
    for (auto& r : study) r.slope = slope;
    rows.insert(rows.end(), study.begin(), study.end());
  }

  {
    Trajectory omega;
    for (const auto& s : u) omega.push_back(s.time, curl(s.field));
    const RefinementStudy study = scheme_refinement_study(u, omega, cfg.converge.slab_counts, scheme_with_constant(cfg));
    for (const auto& p : study.points) rows.push_back({"scheme", p.slab_count, p.slab_length, p.error, study.slope});
  }

  {
    std::vector<double> steps, errors;
    std::vector<RateRow> study;
    // the stride stays fixed so the quadrature spacing shrinks with dt; only the
    // diagnostics are needed, not the stored states
    SolverConfig solver = cfg.solver;
    solver.form = Form::velocity;
    solver.store_trajectory = false;
    const SpectralField ic = make_initial(cfg.initial, cfg.lattice());
    for (int level = 0; level < cfg.converge.dt_levels; ++level) {
      const std::vector<DiagnosticsRecord> diagnostics =
          level == 0 ? reference.diagnostics : integrate(solver, ic).diagnostics;
      const double e0 = diagnostics.front().energy;
      const double residual = std::abs(diagnostics.back().energy_identity_residual);
      const double err = e0 > 0.0 ? residual / e0 : residual;
      steps.push_back(solver.dt);
      errors.push_back(err);
      study.push_back({"energy_residual", level, solver.dt, err, 0.0});
      solver.dt *= 0.5;
    }
    const double slope = fit_loglog_slope(steps, errors);
    for (auto& r : study) r.slope = slope;
    rows.insert(rows.end(), study.begin(), study.end());
  }

  {
    std::ofstream out = open_output(out_dir / "rates.csv");
    write_rates_csv(out, rows);
  }
  log << "converge: " << rows.size() << " rows\n";
  return kExitOk;
}

int run_command(std::string_view command, const fs::path& config_path, const std::optional<fs::path>& out_override,
                std::ostream& err) {
  using Handler = int (*)(const RunConfig&, const fs::path&, std::ostream&);
  Handler handler = nullptr;
  if (command == "reference") handler = cmd_reference;
  if (command == "slab") handler = cmd_slab;
  if (command == "audit") handler = cmd_audit;
  if (command == "converge") handler = cmd_converge;
  if (handler == nullptr) {
    err << "error: unknown command '" << command << "'\n";
    return kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (out_override) cfg.output_dir = *out_override;
    cfg.validate();
    fs::create_directories(cfg.output_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "config error: run.output_dir: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const int status = handler(cfg, cfg.output_dir, err);
    write_metadata(cfg.output_dir, command, config_path);
    return status;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const HermitianError& e) {
    err << "identity failure: " << e.what() << '\n';
    return kExitIdentity;
  }
}

}  // namespace vslb
