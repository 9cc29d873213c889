#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vslb/errors.hpp"
#include "vslb/estimate_auditor.hpp"
#include "vslb/initial_conditions.hpp"
#include "vslb/operators.hpp"
#include "vslb/reference_solver.hpp"

using namespace vslb;

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
const double kLambda = kTau * kTau;

Trajectory decaying(const SpectralField& u0, double rate, double t_end, int intervals) {
  Trajectory t;
  for (int k = 0; k <= intervals; ++k) {
    const double time = t_end * k / intervals;
    t.push_back(time, std::exp(-rate * time) * u0);
  }
  return t;
}

Trajectory zeros(const Lattice& lat, int count, double h) {
  Trajectory t;
  for (int k = 0; k < count; ++k) t.push_back(h * k, SpectralField(lat));
  return t;
}
}  // namespace

TEST(Reports, MarginsAndPass) {
  const AuditReport id = identity_report("x", 1.0 + 1e-9, 1.0, 1e-8, "");
  EXPECT_TRUE(id.pass);
  EXPECT_LT(id.margin, 0.0);
  const AuditReport ineq = inequality_report("y", 2.0, 1.0, 0.5, "");
  EXPECT_EQ(ineq.margin, -1.0);
  EXPECT_FALSE(ineq.pass);
  const std::vector<AuditReport> reports{id, ineq};
  EXPECT_FALSE(any_identity_failure(reports));
}

TEST(EnergyIdentity, ZeroAndBeltrami) {
  const Lattice lat(8);
  const AuditReport z = audit_energy_identity(zeros(lat, 5, 0.1));
  EXPECT_TRUE(z.pass);
  EXPECT_EQ(z.margin, 0.0);

  SolverConfig cfg;
  cfg.lattice = Lattice(16);
  cfg.t_end = 0.05;
  cfg.dt = 1e-4;
  const Integration run = integrate(cfg, make_initial({ICKind::beltrami_abc}, cfg.lattice));
  const AuditReport r = audit_energy_identity(run.trajectory);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(-r.margin, 1e-7);
  EXPECT_EQ(r.rhs, l2_norm_squared(run.trajectory.front().field));
}

TEST(GradCurl, SingleModeRandomAndRejection) {
  const Lattice lat(32);
  SpectralField u(lat);
  u.set_mode(1, 2, 0, 0, Complex(0.5, 0.25));  // k along x, amplitude along y
  const AuditReport single = audit_grad_curl(u);
  EXPECT_TRUE(single.pass);
  EXPECT_LE(-single.margin, 1e-15);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = oracle::random_trig_field(s, 9, 10, true).coefficients(lat);
    EXPECT_TRUE(audit_grad_curl(f).pass);
  }
  SpectralField bad(lat);
  bad.set_mode(0, 1, 0, 0, 1.0);
  EXPECT_THROW(audit_grad_curl(bad), PreconditionError);
}

TEST(Parseval, PassesOnRandomGrid) {
  EXPECT_TRUE(audit_parseval(oracle::random_grid(16, 3), Lattice(16)).pass);
}

TEST(SobolevProbe, SingleModeClosedForm) {
  const Lattice lat(16);
  SpectralField profile(lat);
  profile.set_mode(2, 1, 0, 0, 0.5);  // (0, 0, cos 2 pi x1)
  for (double tau : {0.1, 1.0, 2.5}) {
    const std::vector<SpaceTimeTerm> terms{{1, 0.0, profile}};
    // int_Q cos^4 = (3/8)(3/8) tau; H^1: (tau/4)(1 + (2 pi)^2 + (2 pi / tau)^2)
    const double l4 = std::pow(9.0 * tau / 64.0, 0.25);
    const double h1 = std::sqrt(tau / 4.0 * (1.0 + kLambda + kLambda / (tau * tau)));
    EXPECT_NEAR(space_time_sobolev_ratio(terms, tau), l4 / h1, 1e-6 * l4 / h1) << tau;
  }
}

TEST(SobolevProbe, PositiveFiniteAndMonotone) {
  const Lattice lat(8);
  const double a = probe_sobolev_constant(lat, 4, 7, 0.1);
  const double b = probe_sobolev_constant(lat, 8, 7, 0.1);
  EXPECT_GT(a, 0.0);
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_GE(b, a);
  EXPECT_THROW(probe_sobolev_constant(lat, 0, 7, 0.1), PreconditionError);
  EXPECT_EQ(scheme_constant(0.5), 0.5);
}

TEST(EnstrophyChain, ZeroRunPassesWithMarginEqualToBound) {
  const Lattice lat(8);
  const Trajectory u = zeros(lat, 9, 0.01);
  SchemeConfig cfg;
  const SchemeRun run = run_slab_scheme(u, SpectralField(lat), cfg);
  const auto reports = audit_enstrophy_chain(run, cfg);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass) << r.name;
    if (r.name.rfind("enstrophy", 0) == 0) EXPECT_EQ(r.margin, r.rhs);
  }
}

TEST(EnstrophyChain, BeltramiPasses) {
  SolverConfig sc;
  sc.lattice = Lattice(16);
  sc.t_end = 0.05;
  sc.sample_stride = 5;
  const Trajectory u = integrate(sc, make_initial({ICKind::beltrami_abc}, sc.lattice)).trajectory;
  SchemeConfig cfg;
  cfg.sobolev_C = 0.2;
  const SchemeRun run = run_slab_scheme(u, curl(u.front().field), cfg);
  const auto reports = audit_enstrophy_chain(run, cfg, 3);
  bool saw_young = false;
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass) << r.name << " " << r.margin;
    saw_young |= r.name == "young_inequality";
  }
  EXPECT_TRUE(saw_young);
}

TEST(TimeDerivative, BeltramiClosedFormAndBound) {
  const Lattice lat(8);
  const SpectralField u0 = make_initial({ICKind::beltrami_abc}, lat);
  const Trajectory u = decaying(u0, kLambda, 0.02, 400);
  const std::vector<double> s = time_derivative_energy(u);
  for (std::size_t k = 0; k < s.size(); k += 50) {
    const double exact = kLambda * kLambda * std::exp(-2 * kLambda * u[k].time) * 3.0;
    EXPECT_NEAR(s[k] / exact, 1.0, 1e-4);
  }
  const AuditReport r = audit_time_derivative_bound(u);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.margin, 1.0);
}

TEST(TimeDerivative, ZeroTrajectoryAndPreconditions) {
  const Lattice lat(8);
  const AuditReport r = audit_time_derivative_bound(zeros(lat, 5, 0.1));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_THROW(time_derivative_energy(zeros(lat, 2, 0.1)), PreconditionError);
}

TEST(AverageConvergence, ConstantFieldHasZeroError) {
  const Lattice lat(8);
  const Trajectory u = decaying(make_initial({ICKind::beltrami_abc}, lat), 0.0, 0.08, 32);
  const std::vector<int> counts{2, 4, 8};
  for (const auto& r : audit_average_convergence(u, counts)) {
    EXPECT_TRUE(r.pass) << r.name;
  }
  EXPECT_LE(average_error(u, 4), 1e-14);
}

TEST(AverageConvergence, BeltramiFirstOrder) {
  const Lattice lat(8);
  const Trajectory u = decaying(make_initial({ICKind::beltrami_abc}, lat), kLambda, 0.064, 512);
  const std::vector<int> counts{4, 8, 16, 32};
  const auto reports = audit_average_convergence(u, counts);
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.name << " " << r.lhs << " " << r.rhs;
  EXPECT_GE(reports.back().rhs, 0.9);
  EXPECT_LE(reports.back().rhs, 1.1);
}

TEST(Subsample, KeepsEveryKthSample) {
  const Lattice lat(8);
  const Trajectory u = zeros(lat, 9, 0.1);
  const Trajectory s = subsample(u, 4);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1].time, u[4].time);
}

TEST(AverageContraction, BeltramiMatchesClosedFormRatio) {
  const Lattice lat(8);
  const double t_end = 0.04;
  const Trajectory u = decaying(make_initial({ICKind::beltrami_abc}, lat), kLambda, t_end, 4000);
  const std::vector<int> counts{1, 4};
  const auto reports = audit_average_contraction(u, counts);
  ASSERT_EQ(reports.size(), 2u + 5u);
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.name;
  // one slab of length L: ((1 - e^{-lL}) / (lL))^2 against (1 - e^{-2lL}) / (2lL)
  const double x = kLambda * t_end;
  const double expected = std::pow((1.0 - std::exp(-x)) / x, 2) / ((1.0 - std::exp(-2.0 * x)) / (2.0 * x));
  EXPECT_NEAR(reports[0].lhs, expected, 1e-6);
  EXPECT_LT(reports[0].lhs, 1.0);
}

TEST(AverageContraction, ConstantAndRandomTrajectories) {
  const Lattice lat(8);
  const Trajectory flat = decaying(make_initial({ICKind::beltrami_abc}, lat), 0.0, 0.08, 16);
  const std::vector<int> counts{2, 8};
  for (const auto& r : audit_average_contraction(flat, counts)) {
    EXPECT_NEAR(r.lhs, 1.0, 1e-12) << r.name;
    EXPECT_TRUE(r.pass) << r.name;
  }
  Trajectory noisy;
  for (int k = 0; k <= 16; ++k) {
    noisy.push_back(0.005 * k, make_initial({ICKind::random_divfree, 1.0, static_cast<std::uint64_t>(40 + k)}, lat));
  }
  for (const auto& r : audit_average_contraction(noisy, counts)) EXPECT_TRUE(r.pass) << r.name << " " << r.lhs;
  EXPECT_TRUE(audit_average_contraction(zeros(lat, 17, 0.01), counts).front().pass);
}
