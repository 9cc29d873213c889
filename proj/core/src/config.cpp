#include "vslb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "vslb/errors.hpp"

namespace vslb {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& field, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(field, "expected a finite number, got '" + text + "'");
  }
  return value;
}

long long to_integer(const std::string& field, const std::string& text) {
  long long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(field, "expected an integer, got '" + text + "'");
  return value;
}

int to_int(const std::string& field, const std::string& text) {
  const long long v = to_integer(field, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(field, "integer out of range");
  }
  return static_cast<int>(v);
}

bool to_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(field, "expected true or false, got '" + text + "'");
}

Rational to_rational(const std::string& field, const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    const int whole = to_int(field, text);
    return {whole, 1};
  }
  return {to_int(field, trim(text.substr(0, slash))), to_int(field, trim(text.substr(slash + 1)))};
}

std::vector<int> to_int_list(const std::string& field, const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_int(field, trim(item)));
  if (out.empty()) throw ConfigError(field, "expected a comma-separated list");
  return out;
}

struct Draft {
  RunConfig cfg;
  int n = 16;
  Rational fraction{2, 3};
};

using Setter = std::function<void(Draft&, const std::string& field, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"run.seed",
       [](Draft& d, const std::string& f, const std::string& v) {
         const long long s = to_integer(f, v);
         if (s < 0) throw ConfigError(f, "seed must be unsigned");
         d.cfg.seed = static_cast<std::uint64_t>(s);
       }},
      {"run.output_dir", [](Draft& d, const std::string& f,
                            const std::string& v) {
         if (v.empty()) throw ConfigError(f, "must not be empty");
         d.cfg.output_dir = v;
       }},
      {"lattice.n", [](Draft& d, const std::string& f, const std::string& v) { d.n = to_int(f, v); }},
      {"lattice.dealias_fraction",
       [](Draft& d, const std::string& f, const std::string& v) { d.fraction = to_rational(f, v); }},
      {"initial.kind",
       [](Draft& d, const std::string& f, const std::string& v) {
         try {
           d.cfg.initial.kind = parse_ic_kind(v);
         } catch (const Error&) {
           throw ConfigError(f, "unknown kind '" + v + "'");
         }
       }},
      {"initial.amplitude",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.initial.amplitude = to_double(f, v); }},
      {"initial.spectrum_slope",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.initial.spectrum_slope = to_double(f, v); }},
      {"initial.peak_index",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.initial.peak_index = to_int(f, v); }},
      {"solver.dt", [](Draft& d, const std::string& f, const std::string& v) { d.cfg.solver.dt = to_double(f, v); }},
      {"solver.t_end",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.solver.t_end = to_double(f, v); }},
      {"solver.viscosity",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.solver.viscosity = to_double(f, v); }},
      {"solver.sample_stride",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.solver.sample_stride = to_int(f, v); }},
      {"solver.form",
       [](Draft& d, const std::string& f, const std::string& v) {
         try {
           d.cfg.solver.form = parse_form(v);
         } catch (const Error&) {
           throw ConfigError(f, "unknown form '" + v + "'");
         }
       }},
      {"scheme.epsilon0",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.scheme.epsilon0 = to_double(f, v); }},
      {"scheme.sobolev_C",
       [](Draft& d, const std::string& f, const std::string& v) {
         if (v == "auto") {
           d.cfg.sobolev_C.reset();
         } else {
           d.cfg.sobolev_C = to_double(f, v);
         }
       }},
      {"scheme.picard_tol",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.scheme.picard_tol = to_double(f, v); }},
      {"scheme.picard_max_iter",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.scheme.picard_max_iter = to_int(f, v); }},
      {"scheme.initial_slab_count",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.scheme.initial_slab_count = to_int(f, v); }},
      {"scheme.max_refinements",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.scheme.max_refinements = to_int(f, v); }},
      {"scheme.aux_dt",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.scheme.aux_dt = to_double(f, v); }},
      {"audit.samples",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.audit.samples = to_int(f, v); }},
      {"audit.fields",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.audit.fields = to_int(f, v); }},
      {"audit.t_extent",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.audit.t_extent = to_double(f, v); }},
      {"audit.inject_hermitian_fault",
       [](Draft& d, const std::string& f, const std::string& v) {
         d.cfg.audit.inject_hermitian_fault = to_bool(f, v);
       }},
      {"converge.slab_counts",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.converge.slab_counts = to_int_list(f, v); }},
      {"converge.dt_levels",
       [](Draft& d, const std::string& f, const std::string& v) { d.cfg.converge.dt_levels = to_int(f, v); }},
  };
  return table;
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

}  // namespace

void RunConfig::validate() const {
  const Lattice& lat = solver.lattice;
  require(solver.dt > 0.0, "solver.dt", "must be > 0");
  require(solver.t_end > 0.0, "solver.t_end", "must be > 0");
  require(solver.dt <= solver.t_end * (1.0 + 1e-12), "solver.dt", "must not exceed t_end");
  require(solver.viscosity > 0.0, "solver.viscosity", "must be > 0");
  require(solver.sample_stride >= 1, "solver.sample_stride", "must be >= 1");
  require(initial.amplitude >= 0.0, "initial.amplitude", "must be >= 0");
  if (initial.kind == ICKind::random_divfree) {
    require(initial.peak_index >= 1 && initial.peak_index < lat.n() / 2 && initial.peak_index <= lat.cutoff(),
            "initial.peak_index", "must lie in [1, " + std::to_string(lat.cutoff()) + "]");
  }
  require(scheme.epsilon0 > 0.0 && scheme.epsilon0 < 1.0, "scheme.epsilon0", "must lie in (0, 1)");
  require(!sobolev_C || *sobolev_C > 0.0, "scheme.sobolev_C", "must be > 0 or auto");
  require(scheme.picard_tol > 0.0, "scheme.picard_tol", "must be > 0");
  require(scheme.picard_max_iter >= 1, "scheme.picard_max_iter", "must be >= 1");
  require(scheme.initial_slab_count >= 1, "scheme.initial_slab_count", "must be >= 1");
  require(scheme.max_refinements >= 0, "scheme.max_refinements", "must be >= 0");
  require(scheme.aux_dt >= 0.0, "scheme.aux_dt", "must be >= 0");
  require(audit.samples >= 1, "audit.samples", "must be >= 1");
  require(audit.fields >= 1, "audit.fields", "must be >= 1");
  require(audit.t_extent >= 0.0, "audit.t_extent", "must be >= 0");
  require(converge.slab_counts.size() >= 2, "converge.slab_counts", "needs at least two entries");
  for (int c : converge.slab_counts) require(c >= 1, "converge.slab_counts", "entries must be >= 1");
  require(converge.dt_levels >= 2, "converge.dt_levels", "must be >= 2");
  try {
    initial.validate(lat);
    solver.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError("config", e.what());
  }
  std::error_code ec;
  if (std::filesystem::exists(output_dir, ec) && !std::filesystem::is_directory(output_dir, ec)) {
    throw ConfigError("run.output_dir", "exists and is not a directory");
  }
}

RunConfig parse_config(const std::string& text) {
  Draft draft;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no), "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"run", "lattice", "initial", "solver", "scheme", "audit", "converge"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ConfigError(section, "unknown section");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(line_no), "key outside any section");
    const std::string field = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(field);
    if (it == setters().end()) throw ConfigError(field, "unknown key");
    it->second(draft, field, value);
  }
  try {
    draft.cfg.solver.lattice = Lattice(draft.n, draft.fraction);
  } catch (const Error& e) {
    throw ConfigError(draft.n < 4 || draft.n % 2 != 0 ? "lattice.n" : "lattice.dealias_fraction", e.what());
  }
  draft.cfg.initial.seed = draft.cfg.seed;
  draft.cfg.scheme.viscosity = draft.cfg.solver.viscosity;
  if (draft.cfg.sobolev_C) draft.cfg.scheme.sobolev_C = *draft.cfg.sobolev_C;
  return draft.cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace vslb
