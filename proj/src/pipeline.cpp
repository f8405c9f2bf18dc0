#include "qcl/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcl/csv.hpp"
#include "qcl/errors.hpp"

namespace qcl {

using nlohmann::json;

namespace {

json matrix_json(const DensityMatrix2& m) {
  json out = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    out.push_back(row);
  }
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
  if (!f) throw std::runtime_error("failed writing " + p.string());
}

const char* status_for(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitAudit: return "audit_failure";
    case kExitInput: return "input_error";
    default: return "quadrature_failure";
  }
}

}  // namespace

RunResult evaluate(const ScenarioConfig& c) {
  const Scenario s = make_split_scenario(c.params);
  RunResult r;
  r.D = s.D;
  r.times = s.times;
  r.warnings = s.kernel.warnings();
  r.report = build_report(s);
  r.audit = audit_report(r.report);
  r.rho_A = rho_A(r.report);
  r.rho_BR = rho_B_conditional(r.report, Branch::R);
  r.rho_BL = rho_B_conditional(r.report, Branch::L);
  r.V = visibility(r.rho_A);
  r.D_B = distinguishability(r.report);
  return r;
}

json report_json(const ScenarioConfig& c, const RunResult& r) {
  const DecoherenceReport& d = r.report;
  const AuditResult& a = r.audit;
  json j;
  j["config"] = c.document;
  j["geometry"] = {{"D", r.D}, {"T", r.times.T}, {"T_A", r.times.T_A}, {"T_B", r.times.T_B},
                   {"times_given", c.times_given}};
  j["report"] = {{"gamma_A", d.gamma_A},   {"gamma_B", d.gamma_B},
                 {"phi_A", d.phi_A},       {"phi_B", d.phi_B},
                 {"phi_AB", d.phi_AB},     {"phi_BA", d.phi_BA},
                 {"phi_A_BR", d.phi_A_BR}, {"phi_A_BL", d.phi_A_BL},
                 {"phi_B_AR", d.phi_B_AR}, {"phi_B_AL", d.phi_B_AL},
                 {"commutator", d.commutator}, {"sigma_used", d.sigma_used},
                 {"quad_error", d.quad_error}, {"robertson_error", d.robertson_error},
                 {"spacelike", d.spacelike}};
  json audit = {{"V", a.V},
                {"D", a.D},
                {"complementarity_residual", a.complementarity_residual},
                {"robertson_residual", a.robertson_residual},
                {"robertson_tolerance", a.robertson_tolerance},
                {"X", a.X},
                {"Y", a.Y ? json(*a.Y) : json(nullptr)},
                {"f_value", a.f_value ? json(*a.f_value) : json(nullptr)},
                {"complementarity_pass", a.complementarity_pass},
                {"robertson_pass", a.robertson_pass},
                {"pass", a.pass()}};
  j["audit"] = audit;
  j["matrices"] = {{"rho_A", matrix_json(r.rho_A)},
                   {"rho_BR", matrix_json(r.rho_BR)},
                   {"rho_BL", matrix_json(r.rho_BL)}};
  j["V"] = r.V;
  j["D_B"] = r.D_B;
  j["warnings"] = r.warnings;
  return j;
}

std::string report_csv_header() {
  return "D,T_A,T_B,sigma,gamma_A,gamma_B,phi_AB,phi_BA,V,D_B,robertson_residual,"
         "complementarity_residual,spacelike";
}

std::string report_csv_row(const RunResult& r) {
  std::string s;
  for (double v : {r.D, r.times.T_A, r.times.T_B, r.report.sigma_used, r.report.gamma_A,
                   r.report.gamma_B, r.report.phi_AB, r.report.phi_BA, r.V, r.D_B,
                   r.audit.robertson_residual, r.audit.complementarity_residual}) {
    s += fmt17(v);
    s += ',';
  }
  s += r.report.spacelike ? "true" : "false";
  return s;
}

int classify_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SingularityError& e) {
    err << "input error (singular geometry): " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericFailure& e) {
    err << "quadrature failure: " << e.what() << '\n';
    return kExitQuadrature;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitQuadrature;
  }
}

int run_command(const std::string& config_path, const std::string& out_dir, std::ostream& err) {
  ScenarioConfig c;
  RunResult r;
  try {
    c = load_config(config_path);
    r = evaluate(c);
  } catch (...) {
    return classify_exception(err);
  }
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  try {
    std::filesystem::create_directories(out_dir);
    write_file(std::filesystem::path(out_dir) / "report.json", report_json(c, r).dump(2) + "\n");
    write_file(std::filesystem::path(out_dir) / "report.csv",
               report_csv_header() + "\n" + report_csv_row(r) + "\n");
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kExitInput;
  }
  if (!r.audit.pass()) {
    err << "audit failure: complementarity residual " << r.audit.complementarity_residual
        << ", robertson residual " << r.audit.robertson_residual << '\n';
    return kExitAudit;
  }
  return kExitOk;
}

std::vector<double> VarySpec::values() const {
  std::vector<double> v;
  if (steps == 1) return {start};
  for (int i = 0; i < steps; ++i) v.push_back(start + (stop - start) * i / (steps - 1));
  return v;
}

VarySpec parse_vary(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--vary expects key=start:stop:steps");
  VarySpec v;
  v.key = text.substr(0, eq);
  const auto& keys = numeric_keys();
  if (std::find(keys.begin(), keys.end(), v.key) == keys.end())
    throw ConfigError("--vary: unknown numeric key " + v.key);
  std::stringstream ss(text.substr(eq + 1));
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) )
    throw ConfigError("--vary expects key=start:stop:steps");
  try {
    std::size_t pa = 0, pb = 0, pn = 0;
    v.start = std::stod(a, &pa);
    v.stop = std::stod(b, &pb);
    v.steps = std::stoi(n, &pn);
    if (pa != a.size() || pb != b.size() || pn != n.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ConfigError("--vary: cannot parse range in " + text);
  }
  if (v.steps < 1) throw ConfigError("--vary: steps must be >= 1");
  if (!std::isfinite(v.start) || !std::isfinite(v.stop)) throw ConfigError("--vary: range must be finite");
  return v;
}

int sweep_command(const std::string& config_path, const std::string& vary,
                  const std::string& out_csv, std::ostream& err) {
  ScenarioConfig base;
  VarySpec spec;
  try {
    spec = parse_vary(vary);
    base = load_config(config_path);
  } catch (...) {
    return classify_exception(err);
  }
  std::string out = spec.key + "," + report_csv_header() + ",status\n";
  int worst = kExitOk;
  for (double value : spec.values()) {
    int code = kExitOk;
    std::string row;
    try {
      ScenarioConfig c = parse_config(with_value(base.document, spec.key, value));
      apply_env_overrides(c);
      const RunResult r = evaluate(c);
      row = report_csv_row(r);
      if (!r.audit.pass()) code = kExitAudit;
    } catch (...) {
      std::ostringstream msg;
      code = classify_exception(msg);
      err << spec.key << "=" << fmt17(value) << ": " << msg.str();
      row.clear();
      for (int i = 0; i < 12; ++i) row += "nan,";
      row += "nan";
    }
    worst = std::max(worst, code);
    out += fmt17(value) + "," + row + "," + status_for(code) + "\n";
  }
  try {
    const std::filesystem::path p(out_csv);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    write_file(p, out);
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kExitInput;
  }
  return worst;
}

int audit_command(std::size_t samples, std::uint64_t seed, int grid, const std::string& out_dir,
                  std::ostream& out, std::ostream& err) {
  if (samples < 1 || grid < 1) {
    err << "input error: --samples and --grid must be >= 1\n";
    return kExitInput;
  }
  try {
    std::filesystem::create_directories(out_dir);
    const ImplicationAudit a = implication_audit(sample_robertson_triples(samples, seed));
    {
      std::ofstream f(std::filesystem::path(out_dir) / "audit.csv", std::ios::binary);
      write_audit_csv(a, f);
      if (!f) throw std::runtime_error("failed writing audit.csv");
    }
    GridScan g;
    {
      std::ofstream f(std::filesystem::path(out_dir) / "f_grid.csv", std::ios::binary);
      g = grid_scan(grid, &f);
      if (!f) throw std::runtime_error("failed writing f_grid.csv");
    }
    out << "samples " << samples << " robertson_satisfied " << a.robertson_satisfied
        << " violations " << a.violations << " min_bound_residual " << fmt17(a.min_bound_residual)
        << "\n";
    out << "f_grid " << grid << "x" << grid << " min " << fmt17(g.min_f) << " at X=" << fmt17(g.argmin_X)
        << " Y=" << fmt17(g.argmin_Y) << "; refined " << fmt17(g.refined_f) << " at X="
        << fmt17(g.refined_X) << " Y=" << fmt17(g.refined_Y) << "\n";
    if (a.violations != 0 || g.min_f < -1e-12) {
      err << "audit failure\n";
      return kExitAudit;
    }
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace qcl
