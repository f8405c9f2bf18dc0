#pragma once

// Finite-mode stand-in for the photon field. Each mode is a harmonic
// oscillator driven by H(t) = f(t) a^dag + f(t)^* a with f = g(t) e^{i omega t},
// one coupling g per branch label (P of A, Q of B). The vacuum evolves into
// e^{i theta} |beta> with
//   beta  = -i int f dt,
//   theta = - iint_{t' < t} Im(f(t)^* f(t')).

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qcl/geometry.hpp"
#include "qcl/kernels.hpp"
#include "qcl/quantum.hpp"

namespace qcl {

/// Joint branch label: P is A's branch, Q is B's.
struct BranchLabel {
  Branch P = Branch::R;
  Branch Q = Branch::R;
  int index() const { return 2 * (P == Branch::L) + (Q == Branch::L); }
  friend bool operator==(const BranchLabel&, const BranchLabel&) = default;
};

struct Mode {
  using Coupling = std::function<cplx(double)>;
  double omega = 1.0;
  std::array<Coupling, 4> g;  // indexed by BranchLabel::index()
};

struct ModeSet {
  std::vector<Mode> modes;
  double t_start = 0.0;
  double t_end = 1.0;
  int n_max = 16;  // Fock levels 0 .. n_max - 1 per mode

  /// Throws DomainError on omega <= 0, missing couplings, empty span or n_max < 2.
  void validate() const;
};

inline constexpr double kLeakageLimit = 1e-8;

struct OverlapResult {
  cplx value;
  double leakage;  // largest top-level population seen during either evolution
};

/// <0| U_{b}^dag U_{a} |0> by truncated-Fock time evolution, without the
/// leakage check.
OverlapResult evolve_overlap(const ModeSet& modes, BranchLabel a, BranchLabel b);

/// Same, throwing TruncationLeakage when leakage >= kLeakageLimit.
cplx branch_overlap_exact(const ModeSet& modes, BranchLabel a, BranchLabel b);

struct GammaPhi {
  double gamma;
  double phi;
};

/// Closed form: overlap = e^{-Gamma + i Phi} with
/// Gamma = (1/2) sum |beta_a - beta_b|^2 and
/// Phi = sum theta_a - theta_b + Im(beta_b^* beta_a).
GammaPhi discrete_gamma_phi(const ModeSet& modes, BranchLabel a, BranchLabel b);

/// Gamma only (skips the time-ordered phase integrals).
double discrete_gamma(const ModeSet& modes, BranchLabel a, BranchLabel b);

/// Per-mode displacement beta = -i int f dt.
cplx mode_displacement(const Mode& m, int label, double t0, double t1);

struct JointBound {
  cplx alpha;            // <Omega_L | Omega_R>, so V_A = |alpha|
  double D_exact;        // trace distance of B's conditional states
  double bound_residual; // sqrt(1 - |alpha|^2) - D_exact
  std::array<std::array<cplx, 2>, 2> rho_BR;
  std::array<std::array<cplx, 2>, 2> rho_BL;
};

/// Builds |Omega_P> = (|R>_B |psi_PR> + |L>_B |psi_PL>) / sqrt(2) in the full
/// truncated tensor-product space and evaluates the overlap bound exactly.
/// Throws TruncationLeakage.
JointBound joint_overlap_and_bound(const ModeSet& modes);

/// Discretized continuum for one branch pair moving along y: modes on a
/// Gauss-Legendre (k, cos) grid with k in [0, min(k_max, 6 / sigma)], so that
/// discrete_gamma(R, L) approaches the regularized Gamma as the grid refines.
/// Couplings depend only on the A label.
ModeSet continuum_modes(const BranchPair& pair, const KernelSpec& spec, int n_k, int n_c,
                        int n_max = 8);

/// Random instance: each coupling is a sum of sin(m pi (t - t0) / T),
/// m = 1..3, with complex coefficients scaled by `amplitude`.
ModeSet random_modes(std::mt19937_64& rng, int n_modes, int n_max, double amplitude,
                     double span = 2.0);

}  // namespace qcl
