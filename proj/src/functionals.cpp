#include "qcl/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

using std::numbers::pi;

constexpr std::array<double, 2> kSign{1.0, -1.0};

std::array<const Worldline*, 2> branches(const BranchPair& p) { return {&p.right, &p.left}; }

std::vector<double> pair_breakpoints(const BranchPair& p) {
  std::vector<double> out = p.right.breakpoints();
  const auto l = p.left.breakpoints();
  out.insert(out.end(), l.begin(), l.end());
  return out;
}

/// Root of a monotone f on [lo, hi] when f changes sign there.
std::optional<double> crossing(const std::function<double(double)>& f, double lo, double hi) {
  if (!(hi > lo)) return std::nullopt;
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  return solve_monotone(f, lo, hi);
}

// 1D pairing integrals are cheap; run them well below quad_tol so that the
// commutator identity can be checked tightly.
double tight_rel(const KernelSpec& spec) { return std::max(1e-13, 1e-3 * spec.quad_tol); }

FourVector field_difference(const BranchPair& pair, const Event& x, bool advanced) {
  const auto sub = pair.superposition_window();
  if (!sub) return {};
  const auto solve = advanced ? advanced_time : retarded_time;
  const auto tR = solve(x, pair.right);
  const auto tL = solve(x, pair.left);
  if (!tR && !tL) return {};
  if (tR && tL &&
      ((*tR < sub->start && *tL < sub->start) || (*tR > sub->end && *tL > sub->end)))
    return {};
  FourVector out;
  if (tR) out = out + point_potential(x, pair.right, *tR, advanced);
  if (tL) out = out - point_potential(x, pair.left, *tL, advanced);
  return out;
}

/// q_probe sum_Q s_Q int dt u_Q . Delta A_source(X_Q(t)) over the probe's
/// sub-window, with breakpoints where the probe branches cross the light
/// cones of the source's sub-window boundaries and path breakpoints.
Estimate pairing_integral(const BranchPair& probe, const BranchPair& source, bool advanced,
                          const KernelSpec& spec) {
  const auto sp = probe.superposition_window();
  const auto ss = source.superposition_window();
  if (!sp || !ss) return {};
  const double qp = probe.charge();
  if (qp == 0.0 || source.charge() == 0.0) return {};

  std::vector<double> bps = pair_breakpoints(probe);
  std::vector<double> source_times{ss->start, ss->end};
  for (double t : pair_breakpoints(source))
    if (ss->contains(t)) source_times.push_back(t);
  for (const Worldline* src : branches(source)) {
    for (double ts : source_times) {
      const Event e = src->event(ts);
      for (const Worldline* q : branches(probe)) {
        auto h = [&](double t) {
          const double lag = advanced ? e.t - t : t - e.t;
          return lag - norm(q->position(t) - e.r);
        };
        if (auto r = crossing(h, sp->start, sp->end)) bps.push_back(*r);
      }
    }
  }

  auto integrand = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Worldline* q = branches(probe)[i];
      const FourVector dA = field_difference(source, q->event(t), advanced);
      sum += kSign[i] * minkowski(q->four_velocity(t), dA);
    }
    return qp * sum;
  };
  QuadOptions opt;
  opt.rel_tol = tight_rel(spec);
  opt.abs_tol = 1e-16 * std::abs(qp * source.charge()) / (4.0 * pi);
  opt.accept_floor = 1e3 * opt.abs_tol;
  return integrate(integrand, sp->start, sp->end, std::move(bps), opt);
}

void check_branches_apart(const BranchPair& pair, const Window& sub) {
  constexpr int n = 2000;
  for (int i = 1; i < n; ++i) {
    const double t = sub.start + sub.length() * i / n;
    if (norm(pair.right.position(t) - pair.left.position(t)) < 1e-12)
      throw SingularityError("phi_self: branches touch inside the superposition sub-window at t = " +
                             std::to_string(t));
  }
}

template <class F>
auto with_context(const char* what, F&& f) {
  try {
    return f();
  } catch (const NumericFailure& e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" (achieved error"));
    throw NumericFailure(std::string(what) + ": " + msg, e.achieved());
  } catch (const SingularityError& e) {
    throw SingularityError(std::string(what) + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Estimate gamma(const BranchPair& pair, const KernelSpec& spec) {
  spec.validate();
  const auto sub = pair.superposition_window();
  const double q = pair.charge();
  if (!sub || q == 0.0) return {};
  const double a = sub->start;
  const double b = sub->end;
  const double sg = spec.sigma;
  const auto w = branches(pair);
  const std::vector<double> path_bps = pair_breakpoints(pair);

  QuadOptions inner_opt;
  inner_opt.rel_tol = 1e-2 * spec.quad_tol;
  inner_opt.abs_tol = 1e-13 / (4.0 * pi * pi * sg);
  inner_opt.accept_floor = 1e2 * inner_opt.abs_tol;
  QuadOptions outer_opt;
  outer_opt.rel_tol = spec.quad_tol;
  outer_opt.abs_tol = 1e-15;
  outer_opt.accept_floor = 1e-12;

  double worst_inner = 0.0;
  auto outer = [&](double t) {
    const std::array<Vec3, 2> X{w[0]->position(t), w[1]->position(t)};
    const std::array<Vec3, 2> V{w[0]->velocity(t), w[1]->velocity(t)};
    auto inner = [&](double tp) {
      double sum = 0.0;
      for (int j = 0; j < 2; ++j) {
        const Vec3 Y = w[j]->position(tp);
        const Vec3 U = w[j]->velocity(tp);
        for (int i = 0; i < 2; ++i) {
          const double uu = 1.0 - dot(V[i], U);
          sum += kSign[i] * kSign[j] * uu * hadamard_scalar({t - tp, X[i] - Y}, spec);
        }
      }
      return sum;
    };
    std::vector<double> bps = path_bps;
    for (double k : {2.0, 6.0, 20.0}) bps.push_back(t - k * sg);
    for (int i = 0; i < 2; ++i) {
      const Worldline* other = w[1 - i];
      auto ridge = [&](double tp) { return (t - tp) - norm(X[i] - other->position(tp)); };
      if (auto r = crossing(ridge, a, t))
        for (double k : {-3.0, 0.0, 3.0}) bps.push_back(*r + k * sg);
    }
    const Estimate e = integrate(inner, a, t, std::move(bps), inner_opt);
    worst_inner = std::max(worst_inner, e.error);
    return e.value;
  };
  const Estimate total = integrate(outer, a, b, path_bps, outer_opt);
  const double k = 0.5 * q * q;
  return {-k * total.value, k * (total.error + (b - a) * worst_inner)};
}

FourVector retarded_field_difference(const BranchPair& pair, const Event& x) {
  return field_difference(pair, x, false);
}

FourVector advanced_field_difference(const BranchPair& pair, const Event& x) {
  return field_difference(pair, x, true);
}

Estimate phi_pairing(const BranchPair& probe, const BranchPair& source, const KernelSpec& spec) {
  spec.validate();
  if (!causally_connected(source, probe)) return {};
  return pairing_integral(probe, source, false, spec);
}

Estimate commutator_functional(const BranchPair& pair_A, const BranchPair& pair_B,
                               const KernelSpec& spec) {
  spec.validate();
  Estimate out;
  if (causally_connected(pair_A, pair_B)) out += pairing_integral(pair_A, pair_B, true, spec);
  if (causally_connected(pair_B, pair_A)) out += -1.0 * pairing_integral(pair_A, pair_B, false, spec);
  return out;
}

Estimate phi_background(const BranchPair& pair, const BackgroundField& bg, const KernelSpec& spec) {
  const auto sub = pair.superposition_window();
  if (!sub || bg.is_zero() || pair.charge() == 0.0) return {};
  const auto w = branches(pair);
  auto integrand = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
      sum += kSign[i] * minkowski(w[i]->four_velocity(t), bg(w[i]->event(t)));
    return pair.charge() * sum;
  };
  QuadOptions opt;
  opt.rel_tol = tight_rel(spec);
  opt.abs_tol = 1e-15;
  opt.accept_floor = 1e-12;
  return integrate(integrand, sub->start, sub->end, pair_breakpoints(pair), opt);
}

Estimate phi_self(const BranchPair& pair, const KernelSpec& spec, const BackgroundField& bg) {
  spec.validate();
  const auto sub = pair.superposition_window();
  const double q = pair.charge();
  if (!sub) return {};
  check_branches_apart(pair, *sub);
  Estimate out = phi_background(pair, bg, spec);
  if (q == 0.0) return out;

  const double sg = spec.sigma;
  const double shell = 12.0 * sg;  // support of the smeared retarded kernel around tau = r
  const auto w = branches(pair);
  const std::vector<double> path_bps = pair_breakpoints(pair);

  QuadOptions inner_opt;
  inner_opt.rel_tol = 1e-2 * spec.quad_tol;
  inner_opt.abs_tol = 1e-14 / sg;
  inner_opt.accept_floor = 1e2 * inner_opt.abs_tol;
  QuadOptions outer_opt;
  outer_opt.rel_tol = spec.quad_tol;
  outer_opt.abs_tol = 1e-14;
  outer_opt.accept_floor = 1e-11;

  double worst_inner = 0.0;
  // Field of branch j at X_i(t), contracted with u_i(t).
  auto self_field = [&](int i, int j, double t) {
    const Vec3 X = w[i]->position(t);
    const Vec3 V = w[i]->velocity(t);
    const Worldline& src = *w[j];
    auto lag = [&](double tp) { return (t - tp) - norm(X - src.position(tp)); };
    double lo = t - shell;
    for (double step = shell; lag(lo) < shell; step *= 2.0) lo -= step;
    lo = *crossing([&](double tp) { return lag(tp) - shell; }, lo, t);
    double hi = t;
    if (auto r = crossing([&](double tp) { return lag(tp) + shell; }, lo, t)) hi = *r;
    if (!src.extend_past()) lo = std::max(lo, src.window().start);
    if (!(hi > lo)) return 0.0;
    std::vector<double> bps = path_bps;
    for (double k : {-5.0, -2.0, 0.0, 2.0, 5.0})
      if (auto r = crossing([&](double tp) { return lag(tp) - k * sg; }, lo, hi)) bps.push_back(*r);
    auto inner = [&](double tp) {
      const double uu = 1.0 - dot(V, src.velocity(tp));
      return uu * smeared_retarded_scalar({t - tp, X - src.position(tp)}, spec);
    };
    const Estimate e = integrate(inner, lo, hi, std::move(bps), inner_opt);
    worst_inner = std::max(worst_inner, e.error);
    return e.value;
  };
  auto outer = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) sum += kSign[i] * (self_field(i, 0, t) + self_field(i, 1, t));
    return sum;
  };
  const Estimate self = integrate(outer, sub->start, sub->end, path_bps, outer_opt);
  const double k = 0.5 * q * q;
  out += Estimate{-k * self.value, k * (self.error + 4.0 * sub->length() * worst_inner)};
  return out;
}

// ---------------------------------------------------------------------------

DecoherenceReport build_report(const Scenario& s) {
  const KernelSpec& k = s.kernel;
  DecoherenceReport r;
  r.sigma_used = k.sigma;
  r.spacelike = s.spacelike;

  const Estimate gA = with_context("gamma_A", [&] { return gamma(s.pair_A, k); });
  const Estimate gB = with_context("gamma_B", [&] { return gamma(s.pair_B, k); });
  const Estimate pA = with_context("phi_A", [&] { return phi_self(s.pair_A, k, s.background); });
  const Estimate pB = with_context("phi_B", [&] { return phi_self(s.pair_B, k, s.background); });
  const Estimate pAB = with_context("phi_AB", [&] {
    return s.spacelike ? Estimate{} : phi_pairing(s.pair_A, s.pair_B, k);
  });
  const Estimate pBA = with_context("phi_BA", [&] { return phi_pairing(s.pair_B, s.pair_A, k); });
  const Estimate c =
      with_context("commutator", [&] { return commutator_functional(s.pair_A, s.pair_B, k); });

  r.gamma_A = gA.value;
  r.gamma_B = gB.value;
  r.phi_A = pA.value;
  r.phi_B = pB.value;
  r.phi_AB = pAB.value;
  r.phi_BA = pBA.value;
  r.phi_A_BR = 0.5 * pAB.value;
  r.phi_A_BL = -0.5 * pAB.value;
  r.phi_B_AR = 0.5 * pBA.value;
  r.phi_B_AL = -0.5 * pBA.value;
  r.commutator = c.value;
  r.quad_error = gA.error + gB.error + pA.error + pB.error + pAB.error + pBA.error + c.error;
  r.robertson_error = gA.error * std::abs(gB.value) + std::abs(gA.value) * gB.error +
                      gA.error * gB.error +
                      (2.0 * std::abs(pBA.value) * pBA.error + pBA.error * pBA.error) / 16.0;
  return r;
}

}  // namespace qcl
