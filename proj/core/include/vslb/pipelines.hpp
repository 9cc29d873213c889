#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>

#include "vslb/config.hpp"

namespace vslb {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitBlowUp = 2,
  kExitPicard = 3,
  kExitIdentity = 4,
};

// Each command expects a validated config and an existing output directory. Files
// written there hold no run-dependent text apart from metadata.txt.

/// diagnostics.csv, final_velocity.vslb, audit.csv.
int cmd_reference(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// slab_report.csv, audit.csv.
int cmd_slab(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// audit.csv with the spectral identity suite on seeded random data.
int cmd_audit(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// rates.csv with the averaging, scheme and energy-residual refinement studies.
int cmd_converge(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Loads and validates the config, creates the output directory and dispatches.
/// Errors are reported as a single line on `err`.
int run_command(std::string_view command, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& out_override, std::ostream& err);

}  // namespace vslb
