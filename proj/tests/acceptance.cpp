// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles/momentum_gamma.hpp"
#include "qcl/functionals.hpp"
#include "qcl/inequalities.hpp"
#include "qcl/oracle.hpp"
#include "qcl/quantum.hpp"
#include "support.hpp"

using namespace qcl;
using testing_support::random_params;
using testing_support::uniform;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(const char* id, const char* name, bool ok, const std::string& detail, double secs) {
  std::printf("%s %-28s %s  %s  [%.1f s]\n", id, name, ok ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool same_bits(const DensityMatrix2& a, const DensityMatrix2& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

struct Sample {
  SplitScenarioParams params;
  DecoherenceReport report;
};

// 1. Phi_AB = 0 and rho_A untouched by any change to B.
void causality(std::vector<Sample>& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  int n = 0, zero = 0, stable = 0, flagged = 0;
  for (; n < 50; ++n) {
    const SplitScenarioParams p = random_params(rng, true);
    const DecoherenceReport r = build_report(make_split_scenario(p));
    out.push_back({p, r});
    flagged += r.spacelike;
    zero += r.phi_AB == 0.0;
    const DensityMatrix2 base = rho_A(r);
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      SplitScenarioParams q = p;
      if (k == 0) q.split_B.L *= 0.9;
      if (k == 1) q.split_B.ramp *= 0.95;
      if (k == 2) q.charge_B *= 1.7;
      const DecoherenceReport rq = build_report(make_split_scenario(q));
      ok &= rq.spacelike && rq.phi_AB == 0.0 && same_bits(base, rho_A(rq));
    }
    stable += ok;
  }
  const bool pass = zero == n && stable == n && flagged == n;
  const double secs = seconds_since(t0);
  verdict("C1", "causality", pass && secs < 60.0,
          fmt("%.0f/50 phi_AB == 0, %.0f/50 rho_A bit-identical under B perturbations", zero, stable), secs);
}

// 2, 3, 5. Complementarity, Robertson and closed forms on 100 + 100 scenarios.
void complementarity_robertson(std::vector<Sample>& all) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  std::vector<Sample> batch;
  for (int i = 0; i < 200; ++i) {
    const SplitScenarioParams p = random_params(rng, i % 2 == 0);
    batch.push_back({p, build_report(make_split_scenario(p))});
  }
  const double secs = seconds_since(t0);

  double worst_c = -INFINITY;
  int c_ok = 0, spacelike = 0;
  double worst_r = INFINITY, worst_r_quad = INFINITY;
  int r_ok = 0;
  for (const Sample& s : batch) {
    const DecoherenceReport& r = s.report;
    spacelike += r.spacelike;
    const double V = visibility(rho_A(r));
    const double D = distinguishability(r);
    const double excess = V * V + D * D - 1.0;
    worst_c = std::max(worst_c, excess);
    c_ok += excess <= 1e-9;
    const double res = r.gamma_A * r.gamma_B - r.phi_BA * r.phi_BA / 16.0;
    worst_r = std::min(worst_r, res + r.robertson_error);
    worst_r_quad = std::min(worst_r_quad, res + r.quad_error);
    r_ok += res >= -r.robertson_error;
  }
  verdict("C2", "complementarity", c_ok == 200 && secs < 600.0,
          fmt("%.0f/200 with V^2+D^2-1 <= 1e-9 (max %.3e, %.0f spacelike)", c_ok, worst_c, spacelike), secs);
  verdict("C3", "robertson", r_ok == 200,
          fmt("%.0f/200; min(residual + error bound) = %.3e, min(residual + quad_error) = %.3e", r_ok, worst_r,
              worst_r_quad),
          0.0);
  all.insert(all.end(), batch.begin(), batch.end());
}

// 4. Implication on 1e6 Robertson triples and the 1000 x 1000 f grid.
void implication() {
  const auto t0 = Clock::now();
  const ImplicationAudit a = implication_audit(sample_robertson_triples(1000000, 1));
  const GridScan g = grid_scan(1000);
  const double secs = seconds_since(t0);
  const bool ok = a.robertson_satisfied == 1000000 && a.violations == 0 && g.min_f >= -1e-12 && secs < 60.0;
  verdict("C4", "implication",
          ok, fmt("%.0f violations in 1e6 (min bound residual %.3e); grid min f = %.3e", a.violations,
                  a.min_bound_residual, g.min_f),
          secs);
}

void closed_forms(const std::vector<Sample>& all) {
  double worst_v = 0.0, worst_d = 0.0;
  for (const Sample& s : all) {
    worst_v = std::max(worst_v, std::abs(visibility(rho_A(s.report)) - visibility_closed_form(s.report)));
    worst_d = std::max(worst_d, std::abs(distinguishability(s.report) - distinguishability_closed_form(s.report)));
  }
  verdict("C5", "closed forms", worst_v <= 1e-12 && worst_d <= 1e-12,
          fmt("%.0f scenarios; max |dV| = %.3e, max |dD| = %.3e", static_cast<double>(all.size()), worst_v, worst_d),
          0.0);
}

// 6. commutator = Phi_BA - Phi_AB.
void commutator(const std::vector<Sample>& all) {
  double worst = 0.0, worst_sl = 0.0;
  int n = 0, ok = 0, n_sl = 0, nonzero = 0;
  for (const Sample& s : all) {
    const DecoherenceReport& r = s.report;
    const double scale = std::max(std::abs(r.phi_BA), std::abs(r.phi_AB));
    const double diff = std::abs(r.commutator - (r.phi_BA - r.phi_AB));
    const double rel = scale > 0.0 ? diff / scale : (diff == 0.0 ? 0.0 : INFINITY);
    ++n;
    nonzero += scale > 0.0;
    bool good = rel <= 1e-8;
    worst = std::max(worst, rel);
    if (r.spacelike) {
      ++n_sl;
      const double d = std::abs(r.commutator - r.phi_BA);
      const double rs = std::abs(r.phi_BA) > 0.0 ? d / std::abs(r.phi_BA) : (d == 0.0 ? 0.0 : INFINITY);
      worst_sl = std::max(worst_sl, rs);
      good &= rs <= 1e-8;
    }
    ok += good;
  }
  verdict("C6", "commutator identity", ok == n && nonzero >= 20,
          fmt("%.0f scenarios (%.0f with nonzero pairings); max rel dev %.3e", n, nonzero, worst) +
              fmt(", spacelike (%.0f) vs phi_BA %.3e", n_sl, worst_sl),
          0.0);
}

// 7. Truncated Fock evolution vs e^{-Gamma + i Phi}; continuum convergence.
void oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(707);
  const BranchLabel labels[4] = {{Branch::R, Branch::R}, {Branch::R, Branch::L}, {Branch::L, Branch::R},
                                 {Branch::L, Branch::L}};
  double worst = 0.0;
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    const ModeSet s = random_modes(rng, 3, 16, uniform(rng, 0.1, 0.5));
    const int a = static_cast<int>(rng() % 4);
    const int b = (a + 1 + static_cast<int>(rng() % 3)) % 4;
    const GammaPhi gp = discrete_gamma_phi(s, labels[a], labels[b]);
    const cplx o = branch_overlap_exact(s, labels[a], labels[b]);
    const double dev = std::abs(o - std::exp(cplx(-gp.gamma, gp.phi)));
    worst = std::max(worst, dev);
    ok += dev <= 1e-6;
  }

  const BranchPair ref = make_split_pair(ParticleLabel::A, {1.0, 0.0, 1.0, 2.0});
  KernelSpec k;
  k.sigma = 0.1;
  const ModeSet cont = continuum_modes(ref, k, 64, 16);
  const double g_modes = discrete_gamma(cont, labels[0], labels[2]);
  const double g_fn = gamma(ref, k).value;
  const double gap = std::abs(g_modes - g_fn) / g_fn;
  const double secs = seconds_since(t0);
  verdict("C7", "oracle equivalence", ok == 100 && gap < 0.05 && cont.modes.size() == 1024,
          fmt("%.0f/100 overlaps within 1e-6 (max %.3e); continuum gap %.3e at 1024 modes", ok, worst, gap), secs);
}

// 8. D <= sqrt(1 - |alpha|^2) in the full truncated space.
void overlap_bound() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(808);
  int ok = 0;
  double worst = INFINITY;
  for (int i = 0; i < 50; ++i) {
    const JointBound j = joint_overlap_and_bound(random_modes(rng, 2, 12, uniform(rng, 0.1, 0.45)));
    worst = std::min(worst, j.bound_residual);
    ok += j.bound_residual >= -1e-9;
  }
  verdict("C8", "overlap bound", ok == 50, fmt("%.0f/50 (min residual %.3e)", ok, worst), seconds_since(t0));
}

// 9. Position-space vs momentum-space Gamma; gauge invariance of phi_self.
void representations() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(909);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const SplitScenarioParams p = random_params(rng, i % 2 == 0);
    const Scenario s = make_split_scenario(p);
    const BranchPair& pair = i % 4 < 2 ? s.pair_A : s.pair_B;
    const double g = gamma(pair, s.kernel).value;
    const double o = oracle::momentum_gamma(pair, s.kernel.sigma);
    const double rel = std::abs(g - o) / o;
    worst = std::max(worst, rel);
    ok += rel <= 1e-4;
  }

  int gauge_ok = 0;
  double worst_gauge = 0.0;
  for (int i = 0; i < 5; ++i) {
    const SplitScenarioParams p = random_params(rng, true);
    const Scenario s = make_split_scenario(p);
    const BackgroundField bg =
        BackgroundField::coulomb(uniform(rng, -2, 2), {uniform(rng, -3, -1), uniform(rng, -1, 1), 0.5});
    const double a = uniform(rng, -1, 1), b = uniform(rng, -1, 1), c = uniform(rng, 0.5, 2);
    // chi = a x y sin(c t) + b z t^2 + t y^3
    const BackgroundField shifted = bg.with_gauge_shift([=](const Event& e) {
      const double x = e.r.x, y = e.r.y, z = e.r.z, t = e.t;
      return FourVector{a * x * y * c * std::cos(c * t) + 2.0 * b * z * t + y * y * y,
                        {a * y * std::sin(c * t), a * x * std::sin(c * t) + 3.0 * t * y * y, b * t * t}};
    });
    const Estimate base = phi_self(s.pair_A, s.kernel, bg);
    const Estimate moved = phi_self(s.pair_A, s.kernel, shifted);
    const double d = std::abs(moved.value - base.value);
    const double tol = base.error + moved.error + s.kernel.quad_tol * std::abs(base.value);
    worst_gauge = std::max(worst_gauge, d / std::max(tol, 1e-300));
    gauge_ok += d <= tol;
  }
  verdict("C9", "representation cross-check", ok == 20 && gauge_ok == 5,
          fmt("%.0f/20 Gamma within 1e-4 of momentum space (max %.3e); ", ok, worst) +
              fmt("gauge shift %.0f/5, worst |dphi|/tol = %.3e", gauge_ok, worst_gauge),
          seconds_since(t0));
}

}  // namespace

int main() {
  std::vector<Sample> all;
  causality(all);
  complementarity_robertson(all);
  implication();
  closed_forms(all);
  commutator(all);
  oracle_equivalence();
  overlap_bound();
  representations();
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
