#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qcl/errors.hpp"
#include "qcl/oracle.hpp"

using namespace qcl;

namespace {

constexpr BranchLabel RR{Branch::R, Branch::R};
constexpr BranchLabel RL{Branch::R, Branch::L};
constexpr BranchLabel LR{Branch::L, Branch::R};
constexpr BranchLabel LL{Branch::L, Branch::L};

Mode::Coupling constant(cplx c) {
  return [c](double) { return c; };
}

ModeSet single_mode(cplx ga, cplx gb, double omega, int n_max = 24) {
  ModeSet s;
  s.t_start = 0.0;
  s.t_end = 1.5;
  s.n_max = n_max;
  s.modes.push_back({omega, {constant(ga), constant(gb), constant(ga), constant(gb)}});
  return s;
}

// Each coupling depends on A's label only.
ModeSet a_only(std::mt19937_64& rng, int n_modes, int n_max, double amp) {
  ModeSet s = random_modes(rng, n_modes, n_max, amp);
  for (Mode& m : s.modes) {
    m.g[RL.index()] = m.g[RR.index()];
    m.g[LL.index()] = m.g[LR.index()];
  }
  return s;
}

}  // namespace

TEST_CASE("ModeSet validation") {
  ModeSet s = single_mode(0.1, 0.0, 1.0);
  CHECK_NOTHROW(s.validate());
  s.modes[0].omega = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = single_mode(0.1, 0.0, 1.0, 1);
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = single_mode(0.1, 0.0, 1.0);
  s.modes[0].g[2] = nullptr;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = single_mode(0.1, 0.0, 1.0);
  s.t_end = s.t_start;
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("identical labels overlap to one") {
  std::mt19937_64 rng(1);
  const ModeSet s = random_modes(rng, 3, 16, 0.5);
  for (BranchLabel l : {RR, RL, LR, LL}) {
    const cplx o = branch_overlap_exact(s, l, l);
    CHECK(std::abs(o - 1.0) < 1e-12);
    const GammaPhi gp = discrete_gamma_phi(s, l, l);
    CHECK(gp.gamma == 0.0);
    CHECK(gp.phi == 0.0);
  }
}

TEST_CASE("single displaced mode") {
  const double omega = 1.3;
  const cplx g(0.4, -0.2);
  const ModeSet s = single_mode(g, 0.0, omega);
  // beta = -i g int_0^T e^{i w t} dt
  const double T = s.t_end;
  const cplx i(0.0, 1.0);
  const cplx beta = -i * g * (std::exp(i * omega * T) - 1.0) / (i * omega);
  const cplx md = mode_displacement(s.modes[0], RR.index(), s.t_start, s.t_end);
  CHECK(std::abs(md - beta) < 1e-13);
  const GammaPhi gp = discrete_gamma_phi(s, RR, RL);
  CHECK(gp.gamma == doctest::Approx(0.5 * std::norm(beta)).epsilon(1e-12));
  CHECK(discrete_gamma(s, RR, RL) == doctest::Approx(gp.gamma).epsilon(1e-14));
  CHECK(std::abs(branch_overlap_exact(s, RR, RL)) == doctest::Approx(std::exp(-0.5 * std::norm(beta))).epsilon(1e-10));
}

TEST_CASE("zero coupling difference gives zero gamma and phase") {
  const ModeSet s = single_mode(cplx(0.3, 0.1), cplx(0.3, 0.1), 0.9);
  const GammaPhi gp = discrete_gamma_phi(s, RR, RL);
  CHECK(gp.gamma == 0.0);
  CHECK(gp.phi == 0.0);
}

TEST_CASE("truncated evolution matches the closed form") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const ModeSet s = random_modes(rng, 3, 16, 0.4);
    const GammaPhi gp = discrete_gamma_phi(s, RR, LL);
    const cplx o = branch_overlap_exact(s, RR, LL);
    CHECK(std::abs(o - std::exp(cplx(-gp.gamma, gp.phi))) < 1e-6);
    // Reversing the labels conjugates the overlap.
    CHECK(std::abs(branch_overlap_exact(s, LL, RR) - std::conj(o)) < 1e-9);
  }
}

TEST_CASE("leakage is detected") {
  std::mt19937_64 rng(3);
  const ModeSet s = random_modes(rng, 1, 4, 3.0);
  CHECK_THROWS_AS(branch_overlap_exact(s, RR, LL), TruncationLeakage);
  const OverlapResult r = evolve_overlap(s, RR, LL);
  CHECK(r.leakage >= kLeakageLimit);
}

TEST_CASE("raising n_max never increases the deviation") {
  std::mt19937_64 rng(19);
  const ModeSet base = random_modes(rng, 2, 4, 0.6);
  const GammaPhi gp = discrete_gamma_phi(base, RR, LL);
  const cplx exact = std::exp(cplx(-gp.gamma, gp.phi));
  double prev = INFINITY;
  for (int n : {3, 4, 6, 8, 12, 16, 20}) {
    ModeSet s = base;
    s.n_max = n;
    const double dev = std::abs(evolve_overlap(s, RR, LL).value - exact);
    CAPTURE(n);
    CHECK(dev <= prev + 1e-12);
    prev = dev;
  }
  CHECK(prev < 1e-9);
}

TEST_CASE("joint bound with identical A branches") {
  std::mt19937_64 rng(5);
  ModeSet s = random_modes(rng, 2, 10, 0.4);
  for (Mode& m : s.modes) {
    m.g[LR.index()] = m.g[RR.index()];
    m.g[LL.index()] = m.g[RL.index()];
  }
  const JointBound j = joint_overlap_and_bound(s);
  CHECK(std::abs(j.alpha - 1.0) < 1e-10);
  CHECK(j.D_exact == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
}

TEST_CASE("joint bound with B decoupled") {
  std::mt19937_64 rng(6);
  const JointBound j = joint_overlap_and_bound(a_only(rng, 2, 10, 0.5));
  CHECK(std::abs(j.alpha) < 1.0 - 1e-3);
  CHECK(j.D_exact < 1e-10);
  CHECK(j.bound_residual > 1e-3);
}

TEST_CASE("joint bound on small random instances") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    const JointBound j = joint_overlap_and_bound(random_modes(rng, 2, 12, 0.4));
    CHECK(j.bound_residual >= -1e-9);
    CHECK(j.D_exact >= 0.0);
    CHECK(j.D_exact <= 1.0 + 1e-12);
    const double V = std::abs(j.alpha);
    CHECK(V * V + j.D_exact * j.D_exact <= 1.0 + 1e-9);
    // Conditional states are normalized.
    CHECK(std::abs(j.rho_BR[0][0] + j.rho_BR[1][1] - 1.0) < 1e-9);
    CHECK(std::abs(j.rho_BL[0][0] + j.rho_BL[1][1] - 1.0) < 1e-9);
  }
}

TEST_CASE("continuum modes track the regularized decoherence functional") {
  const BranchPair p = make_split_pair(ParticleLabel::A, {0.8, 0.0, 1.0, 0.5});
  KernelSpec k;
  k.sigma = 0.1;
  const ModeSet coarse = continuum_modes(p, k, 16, 8);
  const ModeSet fine = continuum_modes(p, k, 32, 16);
  CHECK(coarse.modes.size() == 128);
  const double gc = discrete_gamma(coarse, RR, LR);
  const double gf = discrete_gamma(fine, RR, LR);
  CHECK(gc > 0.0);
  CHECK(gf > 0.0);
  // B does not couple: labels differing only in Q see identical fields.
  CHECK(discrete_gamma(fine, RR, RL) == 0.0);
}
