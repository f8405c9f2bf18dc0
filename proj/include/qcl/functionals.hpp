#pragma once

// Worldline reductions of the decoherence and phase functionals. Every d^4x
// integral collapses onto the branch worldlines, leaving 1D or nested 2D
// lab-time quadratures. Branch signs: s_R = +1, s_L = -1.

#include "qcl/geometry.hpp"
#include "qcl/kernels.hpp"
#include "qcl/quadrature.hpp"
#include "qcl/scenario.hpp"

namespace qcl {

/// Gamma = -(q^2/4) sum_{P,P'} s_P s_P' iint dt dt' (u_P . u_P') H_sigma(X_P(t) - X_P'(t'))
/// over the superposition sub-window. Non-negative up to the returned error.
Estimate gamma(const BranchPair& pair, const KernelSpec& spec);

/// A_R^mu(x) - A_L^mu(x), retarded Lienard-Wiechert fields of the two
/// branches. Exactly zero when both retarded points fall where the branches
/// coincide.
FourVector retarded_field_difference(const BranchPair& pair, const Event& x);
/// Same with advanced fields.
FourVector advanced_field_difference(const BranchPair& pair, const Event& x);

/// q_probe sum_Q s_Q int dt u_Q . Delta A_source^ret(X_Q(t)): Phi_BA for
/// (probe B, source A) and Phi_AB for (probe A, source B). Exact zero when
/// the source sub-window cannot reach the probe sub-window.
Estimate phi_pairing(const BranchPair& probe, const BranchPair& source, const KernelSpec& spec);

/// Background term q sum_P s_P int dt u_P . A_bg(X_P(t)).
Estimate phi_background(const BranchPair& pair, const BackgroundField& bg,
                        const KernelSpec& spec);

/// Background term minus the regularized retarded self term
/// (q^2/2) sum_P s_P sum_P' iint (u_P . u_P') G_ret,sigma(X_P(t) - X_P'(t')).
/// Throws SingularityError when the branches touch inside the sub-window.
Estimate phi_self(const BranchPair& pair, const KernelSpec& spec, const BackgroundField& bg);

/// Real c with <[phi_A, phi_B]> = -i c, evaluated as
/// int Delta J_A . (Delta A_B^adv - Delta A_B^ret). Equals Phi_BA - Phi_AB.
Estimate commutator_functional(const BranchPair& pair_A, const BranchPair& pair_B,
                               const KernelSpec& spec);

struct DecoherenceReport {
  double gamma_A = 0.0;
  double gamma_B = 0.0;
  double phi_A = 0.0;
  double phi_B = 0.0;
  double phi_AB = 0.0;
  double phi_BA = 0.0;
  // Pairings against each branch's deviation from the branch-averaged field:
  // phi_AB = phi_A_BR - phi_A_BL, phi_BA = phi_B_AR - phi_B_AL.
  double phi_A_BR = 0.0;
  double phi_A_BL = 0.0;
  double phi_B_AR = 0.0;
  double phi_B_AL = 0.0;
  double commutator = 0.0;
  double sigma_used = 0.0;
  double quad_error = 0.0;  // sum of achieved absolute errors
  double robertson_error = 0.0;  // error bound on gamma_A gamma_B - phi_BA^2 / 16
  bool spacelike = false;
};

/// Evaluates every functional for the scenario. Sub-operation failures are
/// rethrown with the failing quantity named.
DecoherenceReport build_report(const Scenario& s);

}  // namespace qcl
