#pragma once

// Adaptive 1D quadrature (QUADPACK QAGP via GSL) with user breakpoints.
// Nested integrals are built by calling integrate() from inside an integrand.

#include <cmath>
#include <functional>
#include <vector>

namespace qcl {

/// A value together with its achieved absolute error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
  friend Estimate operator*(double k, Estimate e) { return {k * e.value, std::abs(k) * e.error}; }
};

struct QuadOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int limit = 2000;  // max subintervals
  /// Accept GSL's "roundoff detected" / "limit reached" results when the
  /// reported error is within this absolute floor.
  double accept_floor = 0.0;
};

/// Integrates f over [a, b] with interior breakpoints (unsorted, may lie
/// outside (a, b); those are dropped). Throws NumericFailure.
Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   std::vector<double> breakpoints, const QuadOptions& opt);

/// Finds the root of a monotone function on [lo, hi] with f(lo), f(hi) of
/// opposite sign (TOMS 748). Throws NumericFailure if not bracketed.
double solve_monotone(const std::function<double(double)>& f, double lo, double hi,
                      double abs_tol = 1e-15);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace qcl
