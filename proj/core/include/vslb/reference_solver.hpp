#pragma once

#include <string_view>
#include <vector>

#include "vslb/spectral_field.hpp"
#include "vslb/trajectory.hpp"

namespace vslb {

enum class Form { velocity, vorticity };

Form parse_form(std::string_view name);
std::string_view to_string(Form form);

struct SolverConfig {
  Lattice lattice{16};
  double dt = 1e-4;
  double t_end = 0.05;
  double viscosity = 1.0;
  int sample_stride = 1;
  Form form = Form::velocity;
  /// When false only the first and last states are kept; diagnostics still use every stride.
  bool store_trajectory = true;

  void validate() const;
  /// Number of steps; the last one is shortened so the run lands on t_end.
  long step_count() const;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double energy = 0.0;       // 1/2 sum_i ||u_i||^2
  double dissipation = 0.0;  // sum_i ||grad u_i||^2
  double enstrophy = 0.0;    // sum_i ||omega_i||^2
  /// energy(t) + viscosity * int_0^t dissipation - energy(0), Simpson in time.
  double energy_identity_residual = 0.0;
};

/// Integration aborted on a non-finite state; carries the last finite one.
class BlowUpError : public Error {
 public:
  BlowUpError(double last_time, SpectralField last_state);
  double last_time() const noexcept { return last_time_; }
  const SpectralField& last_state() const noexcept { return last_state_; }

 private:
  double last_time_;
  SpectralField last_state_;
};

/// P(-(u . grad) u), dealiased.
SpectralField velocity_nonlinear(const SpectralField& u);
/// P(-(u . grad) u) + viscosity * Delta u
SpectralField velocity_rhs(const SpectralField& u, double viscosity = 1.0);

/// P(-(u . grad) omega + (omega . grad) u), dealiased.
SpectralField vorticity_nonlinear(const SpectralField& omega, const SpectralField& u);
/// P(-(u . grad) omega + (omega . grad) u) + viscosity * Delta omega
SpectralField vorticity_rhs(const SpectralField& omega, const SpectralField& u, double viscosity = 1.0);

/// One integrating-factor RK4 step of the chosen form. Diffusion is applied exactly
/// per mode; for the vorticity form the velocity is recovered by Biot-Savart at each
/// stage. Throws BlowUpError (with `time` as the last finite time) on NaN/Inf.
SpectralField step(const SpectralField& state, double dt, double viscosity = 1.0, Form form = Form::velocity,
                   double time = 0.0);

/// Per-sample observables of a velocity field.
DiagnosticsRecord diagnose(double time, const SpectralField& u);

struct Integration {
  Form form = Form::velocity;
  /// Samples of the evolved variable: u for the velocity form, omega for the vorticity form.
  Trajectory trajectory;
  std::vector<DiagnosticsRecord> diagnostics;

  /// Velocity trajectory regardless of form (Biot-Savart applied for the vorticity form).
  Trajectory velocity() const;
};

/// Marches the velocity initial condition `ic` to t_end. The vorticity form starts
/// from curl(ic). Samples every `sample_stride` steps plus the final time.
Integration integrate(const SolverConfig& config, const SpectralField& ic);

/// Velocity of a velocity- or vorticity-form sample.
SpectralField velocity_of(const SpectralField& state, Form form);

}  // namespace vslb
