#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "qcl/functionals.hpp"

namespace qcl {

/// 1 - V^2 - D^2. V, D must lie in [0, 1] (with 1e-12 slack).
double complementarity_residual(double V, double D);

/// gA gB - phiBA^2 / 16. Rejects negative gammas.
double robertson_residual(double gA, double gB, double phiBA);

/// f(X, Y) = 1 - X - Y sin^2(sqrt(log X log Y)) on (0, 1]^2.
double f_xy(double X, double Y);

struct Gradient {
  double dX;
  double dY;
};

/// Closed-form partials of f_xy on the open square.
Gradient f_gradient(double X, double Y);

struct CriticalPoint {
  double X;
  double Y;
  double f;
  double case2_residual;  // -X - Y sin^2(sqrt(log X log Y)) + Y
};

/// Interior zeros of the gradient found by Newton iteration from a
/// starts x starts grid; duplicates merged.
std::vector<CriticalPoint> find_critical_points(int starts = 24);

struct GridScan {
  int n = 0;
  double min_f = 0.0;
  double argmin_X = 0.0;
  double argmin_Y = 0.0;
  // Local refinement from the grid argmin over the closed square (0, 1].
  double refined_f = 0.0;
  double refined_X = 0.0;
  double refined_Y = 0.0;
};

/// Evaluates f on the n x n grid X_i = i / (n + 1), Y_j = j / (n + 1), i, j in
/// 1..n, optionally streaming `X,Y,f` rows to csv.
GridScan grid_scan(int n, std::ostream* csv = nullptr);

struct Triple {
  double gamma_A;
  double gamma_B;
  double phi_BA;
};

/// Deterministic sampler of triples with robertson_residual >= 0, including a
/// share placed on the equality surface.
std::vector<Triple> sample_robertson_triples(std::size_t n, std::uint64_t seed);

struct AuditRow {
  Triple t;
  double robertson_residual;
  double bound_residual;  // 1 - e^{-2 gA} - e^{-2 gB} sin^2(phiBA / 2)
  bool robertson_ok;
  bool bound_ok;          // bound_residual >= -1e-12
  bool pass() const { return !robertson_ok || bound_ok; }  // the implication holds
};

struct ImplicationAudit {
  std::vector<AuditRow> rows;
  std::size_t robertson_satisfied = 0;
  std::size_t violations = 0;  // Robertson holds but the bound fails
  double min_bound_residual = 0.0;
};

ImplicationAudit implication_audit(const std::vector<Triple>& samples);

/// `gamma_A,gamma_B,phi_BA,robertson_residual,bound_residual,pass`
void write_audit_csv(const ImplicationAudit& a, std::ostream& os);

struct AuditResult {
  double V = 0.0;
  double D = 0.0;
  double complementarity_residual = 0.0;
  double robertson_residual = 0.0;
  double robertson_tolerance = 0.0;
  double X = 0.0;
  std::optional<double> Y;  // absent when gamma_A = 0 and phi_BA != 0
  std::optional<double> f_value;
  bool complementarity_pass = false;
  bool robertson_pass = false;
  bool pass() const { return complementarity_pass && robertson_pass; }
};

/// Per-scenario audit. Gammas within their quadrature error below zero are
/// clamped to 0; anything further below is a failed audit.
AuditResult audit_report(const DecoherenceReport& r);

}  // namespace qcl
