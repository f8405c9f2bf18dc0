#include "qcl/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qcl/csv.hpp"
#include "qcl/errors.hpp"
#include "qcl/quantum.hpp"

namespace qcl {

namespace {

constexpr double kSlack = 1e-12;

double angle(double X, double Y) { return std::sqrt(std::max(0.0, std::log(X) * std::log(Y))); }

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double complementarity_residual(double V, double D) {
  if (!(V >= -kSlack && V <= 1.0 + kSlack) || !(D >= -kSlack && D <= 1.0 + kSlack))
    throw DomainError("complementarity_residual: V and D must lie in [0, 1]");
  return 1.0 - V * V - D * D;
}

double robertson_residual(double gA, double gB, double phiBA) {
  if (!(gA >= 0.0) || !(gB >= 0.0))
    throw DomainError("robertson_residual: gammas must be non-negative");
  return gA * gB - phiBA * phiBA / 16.0;
}

double f_xy(double X, double Y) {
  if (!(X > 0.0 && X <= 1.0) || !(Y > 0.0 && Y <= 1.0))
    throw DomainError("f_xy: arguments must lie in (0, 1]");
  const double s = std::sin(angle(X, Y));
  return 1.0 - X - Y * s * s;
}

Gradient f_gradient(double X, double Y) {
  if (!(X > 0.0 && X < 1.0) || !(Y > 0.0 && Y < 1.0))
    throw DomainError("f_gradient: arguments must lie in the open square (0, 1)^2");
  const double lX = std::log(X);
  const double lY = std::log(Y);
  const double s = std::sqrt(lX * lY);
  const double sn = std::sin(s);
  const double cs = std::cos(s);
  return {-1.0 - Y * lY * sn * cs / (X * s), -(lX * cs / s + sn) * sn};
}

std::vector<CriticalPoint> find_critical_points(int starts) {
  std::vector<CriticalPoint> found;
  for (int i = 1; i <= starts; ++i) {
    for (int j = 1; j <= starts; ++j) {
      double X = static_cast<double>(i) / (starts + 1);
      double Y = static_cast<double>(j) / (starts + 1);
      bool ok = false;
      for (int it = 0; it < 100; ++it) {
        const Gradient g = f_gradient(X, Y);
        if (std::hypot(g.dX, g.dY) < 1e-12) {
          ok = true;
          break;
        }
        const double hx = 1e-7 * X;
        const double hy = 1e-7 * Y;
        if (X + hx >= 1.0 || Y + hy >= 1.0) break;
        const Gradient gxp = f_gradient(X + hx, Y), gxm = f_gradient(X - hx, Y);
        const Gradient gyp = f_gradient(X, Y + hy), gym = f_gradient(X, Y - hy);
        const double a = (gxp.dX - gxm.dX) / (2 * hx), b = (gyp.dX - gym.dX) / (2 * hy);
        const double c = (gxp.dY - gxm.dY) / (2 * hx), d = (gyp.dY - gym.dY) / (2 * hy);
        const double det = a * d - b * c;
        if (!std::isfinite(det) || det == 0.0) break;
        double dx = (d * g.dX - b * g.dY) / det;
        double dy = (-c * g.dX + a * g.dY) / det;
        // Damp steps that would leave the open square.
        double lambda = 1.0;
        while (lambda > 1e-6 && !(X - lambda * dx > 0.0 && X - lambda * dx < 1.0 &&
                                  Y - lambda * dy > 0.0 && Y - lambda * dy < 1.0))
          lambda *= 0.5;
        if (lambda <= 1e-6) break;
        X -= lambda * dx;
        Y -= lambda * dy;
      }
      if (!ok) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const CriticalPoint& p) {
        return std::hypot(p.X - X, p.Y - Y) < 1e-7;
      });
      if (dup) continue;
      const double s = std::sin(angle(X, Y));
      found.push_back({X, Y, f_xy(X, Y), -X - Y * s * s + Y});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.X < b.X; });
  return found;
}

GridScan grid_scan(int n, std::ostream* csv) {
  if (n < 1) throw DomainError("grid_scan: n must be >= 1");
  GridScan out;
  out.n = n;
  out.min_f = std::numeric_limits<double>::infinity();
  if (csv) *csv << "X,Y,f\n";
  std::string line;
  for (int i = 1; i <= n; ++i) {
    const double X = static_cast<double>(i) / (n + 1);
    for (int j = 1; j <= n; ++j) {
      const double Y = static_cast<double>(j) / (n + 1);
      const double f = f_xy(X, Y);
      if (f < out.min_f) {
        out.min_f = f;
        out.argmin_X = X;
        out.argmin_Y = Y;
      }
      if (csv) {
        line = fmt17(X);
        line += ',';
        line += fmt17(Y);
        line += ',';
        line += fmt17(f);
        line += '\n';
        *csv << line;
      }
    }
  }
  // Compass search on the closed square (0, 1]^2 from the grid argmin.
  double X = out.argmin_X, Y = out.argmin_Y, best = out.min_f;
  for (double step = 1.0 / (n + 1); step > 1e-13;) {
    bool moved = false;
    for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const double x = std::clamp(X + dx * step, 1e-300, 1.0);
      const double y = std::clamp(Y + dy * step, 1e-300, 1.0);
      const double f = f_xy(x, y);
      if (f < best) {
        best = f;
        X = x;
        Y = y;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  out.refined_f = best;
  out.refined_X = X;
  out.refined_Y = Y;
  return out;
}

std::vector<Triple> sample_robertson_triples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Triple> out;
  out.reserve(n);
  auto draw_gamma = [&] {
    // Half uniform on [0, 3], half log-uniform on [1e-6, 10].
    if (uniform53(rng) < 0.5) return 3.0 * uniform53(rng);
    return std::pow(10.0, -6.0 + 7.0 * uniform53(rng));
  };
  for (std::size_t k = 0; k < n; ++k) {
    const double gA = draw_gamma();
    const double gB = draw_gamma();
    const double sel = uniform53(rng);
    const double u = sel < 0.2 ? 1.0 : uniform53(rng);  // 20% on the equality surface
    const double sign = uniform53(rng) < 0.5 ? -1.0 : 1.0;
    double phi = sign * 4.0 * std::sqrt(gA * gB) * u;
    while (robertson_residual(gA, gB, phi) < 0.0) phi = std::nextafter(phi, 0.0);
    out.push_back({gA, gB, phi});
  }
  return out;
}

ImplicationAudit implication_audit(const std::vector<Triple>& samples) {
  ImplicationAudit a;
  a.rows.reserve(samples.size());
  a.min_bound_residual = std::numeric_limits<double>::infinity();
  for (const Triple& t : samples) {
    AuditRow row{t, robertson_residual(t.gamma_A, t.gamma_B, t.phi_BA), 0.0, false, false};
    const double s = std::sin(0.5 * t.phi_BA);
    row.bound_residual = 1.0 - std::exp(-2.0 * t.gamma_A) - std::exp(-2.0 * t.gamma_B) * s * s;
    row.robertson_ok = row.robertson_residual >= 0.0;
    row.bound_ok = row.bound_residual >= -kSlack;
    if (row.robertson_ok) {
      ++a.robertson_satisfied;
      a.min_bound_residual = std::min(a.min_bound_residual, row.bound_residual);
      if (!row.bound_ok) ++a.violations;
    }
    a.rows.push_back(row);
  }
  return a;
}

void write_audit_csv(const ImplicationAudit& a, std::ostream& os) {
  os << "gamma_A,gamma_B,phi_BA,robertson_residual,bound_residual,pass\n";
  std::string line;
  for (const AuditRow& r : a.rows) {
    line = fmt17(r.t.gamma_A);
    for (double v : {r.t.gamma_B, r.t.phi_BA, r.robertson_residual, r.bound_residual}) {
      line += ',';
      line += fmt17(v);
    }
    line += r.pass() ? ",true\n" : ",false\n";
    os << line;
  }
}

AuditResult audit_report(const DecoherenceReport& r) {
  AuditResult a;
  a.V = visibility_closed_form(r);
  a.D = distinguishability_closed_form(r);
  a.complementarity_residual = complementarity_residual(std::min(a.V, 1.0), a.D);
  a.complementarity_pass = a.complementarity_residual >= -1e-9;

  const double err = r.quad_error;
  const bool gammas_ok = r.gamma_A >= -err && r.gamma_B >= -err;
  const double gA = std::max(r.gamma_A, 0.0);
  const double gB = std::max(r.gamma_B, 0.0);
  a.robertson_tolerance = 1e-9 + r.robertson_error;
  a.robertson_residual = gA * gB - r.phi_BA * r.phi_BA / 16.0;
  a.robertson_pass = gammas_ok && a.robertson_residual >= -a.robertson_tolerance;

  a.X = std::exp(-2.0 * gA);
  if (gA > 0.0)
    a.Y = std::exp(-r.phi_BA * r.phi_BA / (8.0 * gA));
  else if (r.phi_BA == 0.0)
    a.Y = 1.0;
  if (a.Y && *a.Y > 0.0 && a.X > 0.0) a.f_value = f_xy(a.X, *a.Y);
  return a;
}

}  // namespace qcl
