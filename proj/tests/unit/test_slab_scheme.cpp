#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vslb/errors.hpp"
#include "vslb/initial_conditions.hpp"
#include "vslb/operators.hpp"
#include "vslb/reference_solver.hpp"
#include "vslb/slab_scheme.hpp"

using namespace vslb;

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
const double kLambda = kTau * kTau;

double norm(const SpectralField& f) { return std::sqrt(l2_norm_squared(f)); }

Trajectory decaying(const SpectralField& u0, double rate, double t_end, int intervals) {
  Trajectory t;
  for (int k = 0; k <= intervals; ++k) {
    const double time = t_end * k / intervals;
    t.push_back(time, std::exp(-rate * time) * u0);
  }
  return t;
}

SpectralField solenoidal(const Lattice& lat, std::uint64_t seed, int kmax) {
  return oracle::random_trig_field(seed, kmax, 8, true).coefficients(lat);
}

Trajectory beltrami_reference(int n, double t_end, int stride = 1) {
  SolverConfig cfg;
  cfg.lattice = Lattice(n);
  cfg.dt = 1e-4;
  cfg.t_end = t_end;
  cfg.sample_stride = stride;
  return integrate(cfg, make_initial({ICKind::beltrami_abc}, cfg.lattice)).trajectory;
}
}  // namespace

TEST(SlabAverage, ConstantTrajectory) {
  const Lattice lat(8);
  const SpectralField u = solenoidal(lat, 1, 2);
  Trajectory t;
  for (int k = 0; k <= 4; ++k) t.push_back(0.1 * k, u);
  EXPECT_LT(oracle::relative_difference(slab_average(t, 0.05, 0.35), u), 1e-15);
}

TEST(SlabAverage, BeltramiAmplitudeFactor) {
  const Lattice lat(8);
  const SpectralField u0 = make_initial({ICKind::beltrami_abc}, lat);
  const double tau = 0.01;
  const Trajectory t = decaying(u0, kLambda, tau, 2000);
  const double factor = -std::expm1(-kLambda * tau) / (kLambda * tau);
  EXPECT_LT(oracle::relative_difference(slab_average(t, 0.0, tau), factor * u0), 1e-8);
}

TEST(SlabAverage, ContractionAndSolenoidality) {
  const Lattice lat(16);
  Trajectory t;
  for (int k = 0; k <= 20; ++k) t.push_back(0.01 * k, solenoidal(lat, 100 + k, 4));
  const std::vector<double> times = t.times();
  for (auto [a, b] : {std::pair{0.0, 0.2}, std::pair{0.03, 0.07}, std::pair{0.015, 0.155}}) {
    const SpectralField avg = slab_average(t, a, b);
    std::vector<double> sq;
    for (const auto& s : t) sq.push_back(l2_norm_squared(s.field));
    const double rhs = trapezoid(times, sq, a, b) / (b - a);
    EXPECT_LE(l2_norm_squared(avg), rhs + 1e-10);
    EXPECT_LE(divergence_ratio(avg), 1e-12);
  }
}

TEST(SlabAverage, PreconditionErrors) {
  const Lattice lat(8);
  const Trajectory t = decaying(make_initial({ICKind::beltrami_abc}, lat), 1.0, 1.0, 4);
  EXPECT_THROW(slab_average(t, -0.5, 0.5), PreconditionError);
  EXPECT_THROW(slab_average(t, 0.3, 0.45), PreconditionError);
}

TEST(AuxiliaryRhs, ZeroAndBeltrami) {
  const Lattice lat(16);
  const SpectralField u = make_initial({ICKind::beltrami_abc}, lat);
  EXPECT_EQ(norm(auxiliary_rhs(u, SpectralField(lat))), 0.0);
  EXPECT_LE(norm(auxiliary_rhs(u, kTau * u)), 1e-10 * kTau * norm(u) * norm(u));
}

TEST(AuxiliaryRhs, IntegrationByPartsChains) {
  const Lattice lat(16);
  const SpectralField wt = solenoidal(lat, 1, 2), ub = solenoidal(lat, 2, 2), wb = solenoidal(lat, 3, 2);
  const double direct = inner(wt, auxiliary_rhs(ub, wb));
  const double transport = inner(wt, advective_derivative(ub, wb));
  const double stretching = inner(wt, advective_derivative(wb, ub));
  const double scale = norm(wt) * norm(ub) * std::sqrt(h1_seminorm_squared(wb));
  EXPECT_NEAR(direct, -transport + stretching, 1e-10 * scale);
  // (ub . grad) moved onto the test field
  EXPECT_NEAR(transport, -inner(advective_derivative(ub, wt), wb), 1e-10 * scale);
  EXPECT_NEAR(stretching, -inner(advective_derivative(wb, wt), ub), 1e-10 * scale);
}

TEST(SolveAuxiliary, PureDecayAndSteadySource) {
  const Lattice lat(16);
  const SpectralField u = make_initial({ICKind::beltrami_abc}, lat);
  const Trajectory t = solve_auxiliary(u, SpectralField(lat), 0.2, 0.25, 0.01);
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t.t_end(), 0.25);
  EXPECT_LT(oracle::relative_difference(t.back().field, std::exp(-kLambda * 0.05) * u), 1e-14);

  const SpectralField s = solenoidal(lat, 9, 3);
  const double span = 0.3;
  const Trajectory r = solve_auxiliary(SpectralField(lat), s, 0.0, span, 0.1);
  double worst = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int l = 0; l <= 8; ++l) {
        const int m1 = lat.signed_index(i), m2 = lat.signed_index(j);
        const double rate = kLambda * (m1 * m1 + m2 * m2 + l * l);
        if (rate == 0.0) continue;
        for (int c = 0; c < 3; ++c) {
          const auto k = lat.mode_offset(i, j, l);
          const Complex want = (1.0 - std::exp(-rate * span)) / rate * s(c, k);
          worst = std::max(worst, std::abs(r.back().field(c, k) - want));
        }
      }
  EXPECT_LE(worst, 1e-12);
}

TEST(SolveAuxiliary, MatchesIndependentRk4) {
  const Lattice lat(8);
  const SpectralField w0 = solenoidal(lat, 4, 2), s = solenoidal(lat, 5, 2);
  const double span = 0.02;
  const Trajectory t = solve_auxiliary(w0, s, 0.0, span, span);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int l = 0; l <= 4; ++l) {
        const int m1 = lat.signed_index(i), m2 = lat.signed_index(j);
        if (lat.touches_nyquist(m1, m2, l) || (m1 == 0 && m2 == 0 && l == 0)) continue;
        const double rate = kLambda * (m1 * m1 + m2 * m2 + l * l);
        const auto k = lat.mode_offset(i, j, l);
        for (int c = 0; c < 3; ++c) {
          worst = std::max(worst, std::abs(t.back().field(c, k) - oracle::rk4_linear(w0(c, k), s(c, k), rate, span, 2000)));
        }
      }
  EXPECT_LE(worst, 1e-9);
}

TEST(SolveAuxiliary, MeanModeStaysZero) {
  const Lattice lat(8);
  SpectralField s(lat);
  s.set_mode(0, 0, 0, 0, 5.0);
  const Trajectory t = solve_auxiliary(SpectralField(lat), s, 0.0, 0.1, 0.05);
  EXPECT_EQ(t.back().field.coeff(0, 0, 0, 0), Complex(0.0));
}

TEST(Picard, ZeroInitialIsImmediateFixedPoint) {
  const Trajectory u = beltrami_reference(8, 0.01);
  SchemeConfig cfg;
  const SlabSolution sol = picard_slab(u, SpectralField(u.lattice()), 0.0, 0.01, cfg);
  EXPECT_TRUE(sol.report.converged);
  EXPECT_EQ(sol.report.iterations, 1);
  EXPECT_EQ(sol.report.residuals.front(), 0.0);
}

TEST(Picard, ConvergesOnPerturbedBeltrami) {
  const Trajectory u = beltrami_reference(16, 0.01);
  const SpectralField w0 = curl(u.front().field) + solenoidal(u.lattice(), 17, 3);
  SchemeConfig cfg;
  const SlabSolution sol = picard_slab(u, w0, 0.0, 0.01, cfg);
  EXPECT_TRUE(sol.report.converged);
  EXPECT_GT(sol.report.contraction_ratio, 0.0);
  EXPECT_LT(sol.report.contraction_ratio, 1.0);
}

TEST(Picard, SatisfiesSlabWeakForm) {
  const Lattice lat(16);
  SolverConfig sc;
  sc.lattice = lat;
  sc.dt = 2.5e-5;
  sc.t_end = 0.01;
  const Trajectory u = integrate(sc, make_initial({ICKind::beltrami_abc}, lat)).trajectory;
  const SpectralField w0 = curl(u.front().field) + solenoidal(lat, 23, 2);
  SchemeConfig cfg;
  cfg.picard_tol = 1e-13;
  const SlabSolution sol = picard_slab(u, w0, 0.0, 0.01, cfg);
  ASSERT_TRUE(sol.report.converged);
  const SpectralField source = auxiliary_rhs(slab_average(u, 0.0, 0.01), slab_average(sol.trajectory, 0.0, 0.01));
  const std::vector<double> times = sol.trajectory.times();
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const SpectralField v = solenoidal(lat, seed, 2);
    std::vector<double> integrand;
    for (const auto& s : sol.trajectory) integrand.push_back(-inner(laplacian(s.field), v) - inner(source, v));
    const double jump = inner(sol.trajectory.back().field - sol.trajectory.front().field, v);
    const double integral = simpson(times, integrand);
    const double scale = std::abs(jump) + std::abs(integral) + norm(v) * norm(w0);
    EXPECT_LE(std::abs(jump + integral), 1e-8 * scale) << seed;
  }
}

TEST(Partition, ZeroTrajectoryAlwaysAdmissible) {
  const Lattice lat(8);
  Trajectory u;
  for (int k = 0; k <= 8; ++k) u.push_back(0.01 * k, SpectralField(lat));
  SchemeConfig cfg;
  const SlabPartition p = admissible_partition(u, cfg);
  EXPECT_EQ(p.size(), 4u);
  for (double kk : p.kk_star) EXPECT_EQ(kk, 0.0);
  EXPECT_TRUE(p.accepted());
}

TEST(Partition, SlabFunctionalMatchesBeltramiClosedForm) {
  const Lattice lat(8);
  const SpectralField u0 = make_initial({ICKind::beltrami_abc}, lat);
  const Trajectory u = decaying(u0, kLambda, 0.02, 2000);
  const double dt = 0.01;
  const double expected = dt * 3.0 + kLambda * 3.0 * (-std::expm1(-2 * kLambda * dt)) / (2 * kLambda);
  EXPECT_NEAR(slab_functional(u, 0.0, dt), expected, 1e-6 * expected);
}

TEST(Partition, LargerConstantNeverNeedsFewerSlabs) {
  const Trajectory u = beltrami_reference(8, 0.064, 4);
  SchemeConfig cfg;
  cfg.initial_slab_count = 2;
  cfg.sobolev_C = 0.05;
  const std::size_t base = admissible_partition(u, cfg).size();
  cfg.sobolev_C = 0.1;
  EXPECT_GE(admissible_partition(u, cfg).size(), base);
  cfg.sobolev_C = 0.2;
  const SlabPartition p = admissible_partition(u, cfg);
  EXPECT_TRUE(p.accepted());
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_GE(1.0 - 4.0 * cfg.sobolev_C * p.kk_star[k], cfg.epsilon0);
}

TEST(Partition, UnreachableAdmissibilityListsStubbornSlabs) {
  const Trajectory u = beltrami_reference(8, 0.01, 50);
  SchemeConfig cfg;
  cfg.sobolev_C = 100.0;
  try {
    admissible_partition(u, cfg);
    FAIL() << "expected AdmissibilityError";
  } catch (const AdmissibilityError& e) {
    EXPECT_FALSE(e.stubborn().empty());
    EXPECT_FALSE(e.partition().accepted());
  }
}

TEST(SchemeRun, ZeroVorticity) {
  const Lattice lat(8);
  Trajectory u;
  for (int k = 0; k <= 8; ++k) u.push_back(0.01 * k, SpectralField(lat));
  const SchemeRun run = run_slab_scheme(u, SpectralField(lat), SchemeConfig{});
  EXPECT_TRUE(run.converged());
  for (double m : run.slab_sup) EXPECT_EQ(m, 0.0);
}

TEST(SchemeRun, BeltramiChainStaysUnderBound) {
  const Trajectory u = beltrami_reference(16, 0.1, 5);
  SchemeConfig cfg;
  cfg.sobolev_C = 0.2;
  const SchemeRun run = run_slab_scheme(u, curl(u.front().field), cfg);
  ASSERT_TRUE(run.converged());
  for (std::size_t k = 1; k < run.slab_sup.size(); ++k) EXPECT_LE(run.slab_sup[k], run.slab_sup[k - 1]);
  const double bound = run.k0 * std::exp(cfg.growth_rate() * 0.1);
  EXPECT_LE(run.slab_sup.back(), bound);
  // the scheme reproduces the exact decay on Beltrami data
  EXPECT_LT(oracle::relative_difference(run.trajectory.back().field, curl(u.back().field)), 1e-9);
}

TEST(SchemeRun, RejectsInconsistentInitialVorticity) {
  const Trajectory u = beltrami_reference(8, 0.01, 10);
  const SchemeConfig cfg;
  EXPECT_THROW(run_on_partition(u, SpectralField(u.lattice()), uniform_partition(u, 2, cfg), cfg), PreconditionError);
}

TEST(Helpers, LogLogSlopeAndDistance) {
  const std::vector<double> x{1.0, 2.0, 4.0}, y{3.0, 12.0, 48.0};
  EXPECT_NEAR(fit_loglog_slope(x, y), 2.0, 1e-14);
  const Lattice lat(8);
  const SpectralField u = make_initial({ICKind::beltrami_abc}, lat);
  const Trajectory a = decaying(u, 0.0, 1.0, 4);
  const Trajectory b = decaying(2.0 * u, 0.0, 1.0, 2);
  EXPECT_NEAR(l2q_distance(a, b), std::sqrt(3.0), 1e-14);
}
