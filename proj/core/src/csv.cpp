#include "vslb/csv.hpp"

#include <cmath>
#include <cstdio>

namespace vslb {

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "t,energy,dissipation,enstrophy,energy_residual\n";
  for (const auto& r : records) {
    out << format_real(r.time) << ',' << format_real(r.energy) << ',' << format_real(r.dissipation) << ','
        << format_real(r.enstrophy) << ',' << format_real(r.energy_identity_residual) << '\n';
  }
}

void write_audit_csv(std::ostream& out, std::span<const AuditReport> reports) {
  out << "audit,lhs,rhs,margin,pass,context\n";
  for (const auto& r : reports) {
    out << r.name << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ',' << format_real(r.margin) << ','
        << (r.pass ? 1 : 0) << ',' << r.context << '\n';
  }
}

void write_slab_report(std::ostream& out, const SchemeRun& run, const SchemeConfig& cfg) {
  const double rate = cfg.growth_rate();
  const auto& p = run.partition;
  const double t0 = p.times.empty() ? 0.0 : p.times.front();
  out << "slab_index,t_a,t_b,kk_star,admissible,picard_iters,contraction_ratio,M_k,bound_value\n";
  for (std::size_t k = 0; k < p.size(); ++k) {
    out << k << ',' << format_real(p.t_a(k)) << ',' << format_real(p.t_b(k)) << ',' << format_real(p.kk_star[k])
        << ',' << (p.admissible[k] ? 1 : 0) << ',';
    if (k < run.reports.size()) {
      out << run.reports[k].iterations << ',' << format_real(run.reports[k].contraction_ratio);
    } else {
      out << ',';
    }
    out << ',';
    if (k < run.slab_sup.size()) out << format_real(run.slab_sup[k]);
    out << ',' << format_real(run.k0 * std::exp(rate * (p.t_b(k) - t0))) << '\n';
  }
  out << "summary,K0=" << format_real(run.k0) << ",epsilon0=" << format_real(cfg.epsilon0)
      << ",C=" << format_real(cfg.sobolev_C)
      << ",final_bound=" << format_real(run.k0 * std::exp(rate * (run.t_end - t0))) << ",failed_slab=";
  if (run.failed_slab) {
    out << *run.failed_slab;
  } else {
    out << "none";
  }
  out << '\n';
}

void write_rates_csv(std::ostream& out, std::span<const RateRow> rows) {
  out << "study,level,step,error,slope\n";
  for (const auto& r : rows) {
    out << r.study << ',' << r.level << ',' << format_real(r.step) << ',' << format_real(r.error) << ','
        << format_real(r.slope) << '\n';
  }
}

}  // namespace vslb
