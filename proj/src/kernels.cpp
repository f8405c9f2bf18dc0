#include "qcl/kernels.hpp"

#include <gsl/gsl_sf_dawson.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcl/errors.hpp"
#include "qcl/quadrature.hpp"

namespace qcl {

using std::numbers::pi;

void KernelSpec::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("kernel.sigma must be finite and > 0");
  if (!(k_max > 0.0) || !std::isfinite(k_max))
    throw std::invalid_argument("kernel.k_max must be finite and > 0");
  if (!(quad_tol > 0.0 && quad_tol < 1.0))
    throw std::invalid_argument("kernel.quad_tol must lie in (0, 1)");
}

std::vector<std::string> KernelSpec::warnings() const {
  std::vector<std::string> out;
  if (k_max * sigma < 5.0)
    out.push_back("k_max * sigma = " + std::to_string(k_max * sigma) +
                  " < 5: momentum cutoff truncates the regulator");
  return out;
}

double dawson(double x) { return gsl_sf_dawson(x); }

double hadamard_scalar(const FourVector& dx, const KernelSpec& spec) {
  const double sigma = spec.sigma;
  const double r = norm(dx.s);
  const double b = dx.t / (2.0 * sigma);
  const double rho = r / (2.0 * sigma);
  const double norm4 = 4.0 * pi * pi * sigma * sigma;
  if (rho < 1e-3) {
    // F(b + rho) - F(b - rho) expanded to third order in rho.
    const double F = dawson(b);
    const double F1 = 1.0 - 2.0 * b * F;
    const double F3 = -4.0 * F1 + 4.0 * b * F + 4.0 * b * b * F1;
    return (F1 + rho * rho * F3 / 6.0) / norm4;
  }
  return (dawson(rho + b) + dawson(rho - b)) / (2.0 * rho * norm4);
}

double smeared_retarded_scalar(const FourVector& dx, const KernelSpec& spec) {
  const double tau = dx.t;
  if (tau <= 0.0) return 0.0;
  const double r = norm(dx.s);
  const double c = 4.0 * spec.sigma * spec.sigma;
  const double pref = 1.0 / (4.0 * pi * 2.0 * std::sqrt(pi) * spec.sigma);
  if (r == 0.0) return pref * std::exp(-tau * tau / c) * 4.0 * tau / c;
  const double shell = std::exp(-(tau - r) * (tau - r) / c) * -std::expm1(-4.0 * tau * r / c);
  return pref * shell / r;
}

// ---------------------------------------------------------------------------

std::optional<double> retarded_time(const Event& x, const Worldline& w) {
  const Window& win = w.window();
  auto f = [&](double tp) { return x.t - tp - norm(x.r - w.position(tp)); };

  const double f_start = f(win.start);
  if (f_start < 0.0) {
    if (!w.extend_past()) return std::nullopt;
    return x.t - norm(x.r - w.position(win.start));
  }
  double hi = x.t;
  if (x.t > win.end) {
    const double f_end = f(win.end);
    if (f_end > 0.0) {
      if (!w.extend_future()) return std::nullopt;
      return x.t - norm(x.r - w.position(win.end));
    }
    hi = win.end;
  }
  const double t = solve_monotone(f, win.start, hi);
  const double residual = std::abs(f(t));
  if (residual > 1e-10) throw NumericFailure("retarded_time residual", residual);
  return t;
}

std::optional<double> advanced_time(const Event& x, const Worldline& w) {
  const Window& win = w.window();
  auto g = [&](double tp) { return tp - x.t - norm(x.r - w.position(tp)); };

  const double g_end = g(win.end);
  if (g_end < 0.0) {
    if (!w.extend_future()) return std::nullopt;
    return x.t + norm(x.r - w.position(win.end));
  }
  double lo = x.t;
  if (x.t < win.start) {
    const double g_start = g(win.start);
    if (g_start > 0.0) {
      if (!w.extend_past()) return std::nullopt;
      return x.t + norm(x.r - w.position(win.start));
    }
    lo = win.start;
  }
  const double t = solve_monotone(g, lo, win.end);
  const double residual = std::abs(g(t));
  if (residual > 1e-10) throw NumericFailure("advanced_time residual", residual);
  return t;
}

FourVector point_potential(const Event& x, const Worldline& w, double ts, bool advanced) {
  const double sign = advanced ? -1.0 : 1.0;
  const Vec3 R = x.r - w.position(ts);
  const double Rn = norm(R);
  const Vec3 v = w.velocity(ts);
  const double kappa = Rn - sign * dot(R, v);
  if (Rn < 1e-12 || kappa < 1e-12)
    throw SingularityError("Lienard-Wiechert potential evaluated on its source worldline");
  const double k = w.charge() / (4.0 * pi * kappa);
  return {k, k * v};
}

FourVector lienard_wiechert(const Event& x, const Worldline& w) {
  const auto t = retarded_time(x, w);
  if (!t) return {};
  return point_potential(x, w, *t, false);
}

FourVector lienard_wiechert_advanced(const Event& x, const Worldline& w) {
  const auto t = advanced_time(x, w);
  if (!t) return {};
  return point_potential(x, w, *t, true);
}

// ---------------------------------------------------------------------------

BackgroundField::BackgroundField(Fn fn, std::string description)
    : fn_(std::move(fn)), description_(std::move(description)) {}

BackgroundField BackgroundField::coulomb(double charge, Vec3 position) {
  return BackgroundField(
      [charge, position](const Event& x) -> FourVector {
        const double r = norm(x.r - position);
        if (r < 1e-12) throw SingularityError("Coulomb background evaluated at its source");
        return {charge / (4.0 * pi * r), {}};
      },
      "coulomb");
}

BackgroundField BackgroundField::with_gauge_shift(
    const std::function<FourVector(const Event&)>& grad) const {
  Fn base = fn_;
  return BackgroundField(
      [base, grad](const Event& x) {
        const FourVector a = base ? base(x) : FourVector{};
        const FourVector g = grad(x);
        return FourVector{a.t + g.t, a.s - g.s};
      },
      description_ + "+gauge");
}

}  // namespace qcl
