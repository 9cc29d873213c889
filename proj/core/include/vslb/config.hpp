#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vslb/initial_conditions.hpp"
#include "vslb/lattice.hpp"
#include "vslb/reference_solver.hpp"
#include "vslb/slab_scheme.hpp"

namespace vslb {

struct AuditSettings {
  int samples = 32;          // Sobolev probe fields
  int fields = 20;           // random fields per identity check
  double t_extent = 0.0;     // probe time extent; <= 0 uses solver t_end
  bool inject_hermitian_fault = false;
};

struct ConvergeSettings {
  std::vector<int> slab_counts{4, 8, 16, 32};
  int dt_levels = 3;
};

/// Everything a subcommand needs. Parsed from an INI-style file:
///
///   [run]       seed, output_dir
///   [lattice]   n, dealias_fraction (e.g. 2/3)
///   [initial]   kind, amplitude, spectrum_slope, peak_index
///   [solver]    dt, t_end, viscosity, sample_stride, form
///   [scheme]    epsilon0, sobolev_C (number or auto), picard_tol, picard_max_iter,
///               initial_slab_count, max_refinements, aux_dt
///   [audit]     samples, fields, t_extent, inject_hermitian_fault
///   [converge]  slab_counts (comma list), dt_levels
///
/// '#' and ';' start comments. Unknown sections or keys are ConfigErrors.
struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "vslb_out";
  ICSpec initial;
  SolverConfig solver;
  SchemeConfig scheme;
  /// Unset means "derive from the Sobolev probe".
  std::optional<double> sobolev_C;
  AuditSettings audit;
  ConvergeSettings converge;

  const Lattice& lattice() const { return solver.lattice; }
  /// Checks every component invariant; throws ConfigError naming the field.
  void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace vslb
