#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vslb/estimate_auditor.hpp"
#include "vslb/reference_solver.hpp"
#include "vslb/slab_scheme.hpp"

namespace vslb {

/// 17 significant digits, so a double survives the round-trip through text.
std::string format_real(double value);

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);

void write_audit_csv(std::ostream& out, std::span<const AuditReport> reports);

/// One row per slab of the partition; slabs after a Picard failure have empty
/// run columns. Ends with a `summary,...` line.
void write_slab_report(std::ostream& out, const SchemeRun& run, const SchemeConfig& cfg);

struct RateRow {
  std::string study;
  int level = 0;        // slab count or dt halving index
  double step = 0.0;    // slab length or dt
  double error = 0.0;
  double slope = 0.0;   // fitted slope of the whole study
};

void write_rates_csv(std::ostream& out, std::span<const RateRow> rows);

}  // namespace vslb
