#include "vslb/reference_solver.hpp"

#include <cmath>
#include <string>

#include "mode_loop.hpp"
#include "vslb/operators.hpp"

namespace vslb {

Form parse_form(std::string_view name) {
  if (name == "velocity") return Form::velocity;
  if (name == "vorticity") return Form::vorticity;
  throw PreconditionError("unknown form '" + std::string(name) + "'");
}

std::string_view to_string(Form form) { return form == Form::velocity ? "velocity" : "vorticity"; }

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("solver dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw PreconditionError("solver t_end must be > 0");
  if (dt > t_end * (1.0 + 1e-12)) throw PreconditionError("solver dt must not exceed t_end");
  if (!(viscosity > 0.0) || !std::isfinite(viscosity)) throw PreconditionError("solver viscosity must be > 0");
  if (sample_stride < 1) throw PreconditionError("solver sample_stride must be >= 1");
}

long SolverConfig::step_count() const {
  const double steps = t_end / dt;
  const long rounded = std::lround(steps);
  if (std::abs(steps - static_cast<double>(rounded)) <= 1e-9 * std::max(1.0, steps)) return std::max(1L, rounded);
  return static_cast<long>(std::ceil(steps));
}

BlowUpError::BlowUpError(double last_time, SpectralField last_state)
    : Error("integration blew up after t = " + std::to_string(last_time)),
      last_time_(last_time),
      last_state_(std::move(last_state)) {}

SpectralField velocity_nonlinear(const SpectralField& u) {
  SpectralField adv = advective_derivative(u, u);
  adv *= -1.0;
  return leray_project(adv);
}

SpectralField velocity_rhs(const SpectralField& u, double viscosity) {
  SpectralField rhs = velocity_nonlinear(u);
  rhs.add_scaled(viscosity, laplacian(u));
  return rhs;
}

SpectralField vorticity_nonlinear(const SpectralField& omega, const SpectralField& u) {
  SpectralField stretch = advective_derivative(omega, u);
  stretch -= advective_derivative(u, omega);
  return leray_project(stretch);
}

SpectralField vorticity_rhs(const SpectralField& omega, const SpectralField& u, double viscosity) {
  SpectralField rhs = vorticity_nonlinear(omega, u);
  rhs.add_scaled(viscosity, laplacian(omega));
  return rhs;
}

SpectralField velocity_of(const SpectralField& state, Form form) {
  return form == Form::velocity ? state : biot_savart(state);
}

namespace {

// Per-mode factors exp(-viscosity |2 pi k|^2 h) for a fixed step h.
class DiffusionFactor {
 public:
  DiffusionFactor(const Lattice& lat, double viscosity, double h) : lat_(lat), factor_(lat.mode_count()) {
    detail::for_each_mode(lat, [&](std::size_t k, int m1, int m2, int m3) {
      const double k2 = detail::kTwoPi * detail::kTwoPi * (m1 * m1 + m2 * m2 + m3 * m3);
      factor_[k] = std::exp(-viscosity * k2 * h);
    });
  }

  SpectralField apply(const SpectralField& field) const {
    SpectralField out = field;
    for (int c = 0; c < 3; ++c) {
      auto comp = out.component(c);
      for (std::size_t k = 0; k < comp.size(); ++k) comp[k] *= factor_[k];
    }
    return out;
  }

 private:
  Lattice lat_;
  std::vector<double> factor_;
};

SpectralField nonlinear(const SpectralField& state, Form form) {
  if (form == Form::velocity) return velocity_nonlinear(state);
  return vorticity_nonlinear(state, biot_savart(state));
}

bool finite(const SpectralField& f) {
  for (const auto& v : f.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

// Lawson (integrating-factor) RK4 with precomputed half and full step factors.
SpectralField if_rk4(const SpectralField& u, double dt, Form form, const DiffusionFactor& half,
                     const DiffusionFactor& full) {
  const SpectralField k1 = nonlinear(u, form);
  SpectralField a = u;
  a.add_scaled(0.5 * dt, k1);
  a = half.apply(a);
  const SpectralField k2 = nonlinear(a, form);

  SpectralField b = half.apply(u);
  b.add_scaled(0.5 * dt, k2);
  const SpectralField k3 = nonlinear(b, form);

  SpectralField c = full.apply(u);
  c.add_scaled(dt, half.apply(k3));
  const SpectralField k4 = nonlinear(c, form);

  SpectralField mid = k2;
  mid += k3;
  SpectralField out = full.apply(u);
  out.add_scaled(dt / 6.0, full.apply(k1));
  out.add_scaled(dt / 3.0, half.apply(mid));
  out.add_scaled(dt / 6.0, k4);
  return out;
}

}  // namespace

SpectralField step(const SpectralField& state, double dt, double viscosity, Form form, double time) {
  const DiffusionFactor half(state.lattice(), viscosity, 0.5 * dt);
  const DiffusionFactor full(state.lattice(), viscosity, dt);
  SpectralField next = if_rk4(state, dt, form, half, full);
  if (!finite(next)) throw BlowUpError(time, state);
  return next;
}

DiagnosticsRecord diagnose(double time, const SpectralField& u) {
  DiagnosticsRecord rec;
  rec.time = time;
  rec.energy = 0.5 * l2_norm_squared(u);
  rec.dissipation = h1_seminorm_squared(u);
  rec.enstrophy = l2_norm_squared(curl(u));
  return rec;
}

Trajectory Integration::velocity() const {
  if (form == Form::velocity) return trajectory;
  Trajectory out;
  for (const auto& s : trajectory) out.push_back(s.time, biot_savart(s.field));
  return out;
}

Integration integrate(const SolverConfig& config, const SpectralField& ic) {
  config.validate();
  if (!(ic.lattice() == config.lattice)) throw DimensionError("integrate: initial condition lattice mismatch");
  if (!is_solenoidal(ic, 1e-10)) throw PreconditionError("integrate: initial condition is not solenoidal");

  Integration result;
  result.form = config.form;
  SpectralField state = config.form == Form::velocity ? ic : curl(ic);

  const long steps = config.step_count();
  const double t_final = config.t_end;
  const DiffusionFactor half(config.lattice, config.viscosity, 0.5 * config.dt);
  const DiffusionFactor full(config.lattice, config.viscosity, config.dt);

  std::vector<double> times;
  std::vector<double> dissipation;
  auto record = [&](double t, const SpectralField& s) {
    const SpectralField u = velocity_of(s, config.form);
    DiagnosticsRecord rec = diagnose(t, u);
    times.push_back(t);
    dissipation.push_back(rec.dissipation);
    const double e0 = result.diagnostics.empty() ? rec.energy : result.diagnostics.front().energy;
    rec.energy_identity_residual = rec.energy + config.viscosity * simpson(times, dissipation) - e0;
    result.diagnostics.push_back(rec);
    if (config.store_trajectory || result.trajectory.empty() || t == t_final) result.trajectory.push_back(t, s);
  };

  record(0.0, state);
  double t = 0.0;
  for (long s = 1; s <= steps; ++s) {
    const bool last = s == steps;
    const double h = last ? t_final - t : config.dt;
    SpectralField next = same_time(h, config.dt) ? if_rk4(state, h, config.form, half, full)
                                                 : if_rk4(state, h, config.form,
                                                          DiffusionFactor(config.lattice, config.viscosity, 0.5 * h),
                                                          DiffusionFactor(config.lattice, config.viscosity, h));
    if (!finite(next)) throw BlowUpError(t, std::move(state));
    state = std::move(next);
    t = last ? t_final : static_cast<double>(s) * config.dt;
    if (last || s % config.sample_stride == 0) record(t, state);
  }
  return result;
}

}  // namespace vslb
