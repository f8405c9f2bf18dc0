#include "qcl/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

double trampoline(double x, void* params) {
  const auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   std::vector<double> breakpoints, const QuadOptions& opt) {
  disable_gsl_abort();
  if (a == b) return {};
  if (a > b) {
    Estimate e = integrate(f, b, a, std::move(breakpoints), opt);
    return {-e.value, e.error};
  }
  std::vector<double> pts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  const double guard = 1e-14 * std::max(1.0, std::abs(b - a));
  for (double p : breakpoints)
    if (p > pts.back() + guard && p < b - guard) pts.push_back(p);
  pts.push_back(b);

  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(static_cast<std::size_t>(opt.limit)));
  gsl_function gf{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0;
  double abserr = 0.0;
  // QAGP's roundoff heuristic is sensitive to where the breakpoints fall; a
  // stalled run is retried with every piece bisected.
  for (int attempt = 0;; ++attempt) {
    const int status = gsl_integration_qagp(&gf, pts.data(), pts.size(), opt.abs_tol, opt.rel_tol,
                                            static_cast<std::size_t>(opt.limit), ws.get(), &result,
                                            &abserr);
    if (status == GSL_SUCCESS) break;
    const bool tolerable = (status == GSL_EROUND || status == GSL_EMAXITER ||
                            status == GSL_ESING || status == GSL_EDIVERGE) &&
                           std::isfinite(result) &&
                           abserr <= std::max({opt.accept_floor, opt.abs_tol,
                                               opt.rel_tol * std::abs(result)}) * 10.0;
    if (tolerable) break;
    if (attempt == 2) throw NumericFailure(std::string("quadrature: ") + gsl_strerror(status), abserr);
    std::vector<double> finer{pts.front()};
    for (std::size_t i = 1; i < pts.size(); ++i) {
      finer.push_back(0.5 * (pts[i - 1] + pts[i]));
      finer.push_back(pts[i]);
    }
    pts = std::move(finer);
  }
  if (!std::isfinite(result)) throw NumericFailure("quadrature: non-finite result", abserr);
  return {result, abserr};
}

double solve_monotone(const std::function<double(double)>& f, double lo, double hi,
                      double abs_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NumericFailure("root not bracketed", std::min(std::abs(flo), std::abs(fhi)));
  std::uintmax_t iters = 200;
  // Never ask for a bracket narrower than a few ulps.
  auto tol = [abs_tol](double x, double y) {
    const double ulps = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), std::abs(y));
    return std::abs(x - y) <= std::max(abs_tol, ulps);
  };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  if (iters >= 200) throw NumericFailure("root solve did not converge", r.second - r.first);
  const double x = 0.5 * (r.first + r.second);
  // Return the bracket end with the smaller residual when that is exact.
  const double fa = f(r.first);
  const double fb = f(r.second);
  if (fa == 0.0) return r.first;
  if (fb == 0.0) return r.second;
  return x;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
      gsl_integration_glfixed_table_free);
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &nodes[i], &weights[i],
                                  table.get());
}

}  // namespace qcl
