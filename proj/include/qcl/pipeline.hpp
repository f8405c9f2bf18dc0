#pragma once

// geometry -> kernels -> functionals -> quantum -> inequalities, driven by a
// ScenarioConfig, plus the run / sweep / audit commands behind the CLI.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcl/config.hpp"
#include "qcl/functionals.hpp"
#include "qcl/inequalities.hpp"
#include "qcl/quantum.hpp"

namespace qcl {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitAudit = 2,
  kExitQuadrature = 3,
};

struct RunResult {
  double D = 0.0;
  ScenarioTimes times;
  DecoherenceReport report;
  AuditResult audit;
  DensityMatrix2 rho_A = DensityMatrix2::balanced(0.5);
  DensityMatrix2 rho_BR = DensityMatrix2::balanced(0.5);
  DensityMatrix2 rho_BL = DensityMatrix2::balanced(0.5);
  double V = 1.0;
  double D_B = 0.0;
  std::vector<std::string> warnings;
};

/// Builds the scenario and evaluates everything. Exceptions propagate.
RunResult evaluate(const ScenarioConfig& c);

nlohmann::json report_json(const ScenarioConfig& c, const RunResult& r);

/// `D,T_A,T_B,sigma,gamma_A,gamma_B,phi_AB,phi_BA,V,D_B,robertson_residual,complementarity_residual,spacelike`
std::string report_csv_header();
std::string report_csv_row(const RunResult& r);

/// Maps an in-flight exception onto the exit-code contract and writes a
/// one-line diagnostic.
int classify_exception(std::ostream& err);

/// Writes report.json and report.csv into out_dir.
int run_command(const std::string& config_path, const std::string& out_dir, std::ostream& err);

struct VarySpec {
  std::string key;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
  std::vector<double> values() const;
};

/// Parses key=start:stop:steps. Throws ConfigError.
VarySpec parse_vary(const std::string& text);

/// One row per grid point with the varied value first and a trailing status
/// column (`ok`, `audit_failure`, `input_error`, `quadrature_failure`).
int sweep_command(const std::string& config_path, const std::string& vary,
                  const std::string& out_csv, std::ostream& err);

/// Implication audit on `samples` triples plus the n x n f-grid scan.
/// Writes f_grid.csv and audit.csv into out_dir; exit 0 iff no violations.
int audit_command(std::size_t samples, std::uint64_t seed, int grid, const std::string& out_dir,
                  std::ostream& out, std::ostream& err);

}  // namespace qcl
