#pragma once

#include <array>
#include <complex>

#include "qcl/functionals.hpp"

namespace qcl {

using cplx = std::complex<double>;

/// 2x2 density matrix in the ordered basis {R, L}, row-major: m[0][1] is <R|rho|L>.
class DensityMatrix2 {
 public:
  /// Throws DomainError unless Hermitian, unit trace (1e-12) and PSD (-1e-12).
  explicit DensityMatrix2(std::array<std::array<cplx, 2>, 2> m);

  /// Diagonal 1/2 with the given <R|rho|L>.
  static DensityMatrix2 balanced(cplx off_diagonal);

  const cplx& operator()(int i, int j) const { return m_[i][j]; }
  /// Eigenvalues in ascending order.
  std::array<double, 2> eigenvalues() const;

 private:
  std::array<std::array<cplx, 2>, 2> m_;
};

/// rho_A(R, L) = (1/4) e^{-Gamma_A + i Phi_A} (e^{-i phi_A,BR} + e^{-i phi_A,BL}).
DensityMatrix2 rho_A(const DecoherenceReport& r);

/// rho_BP(R, L) = (1/2) e^{-Gamma_B + i (Phi_B - phi_B,AP)} for A's branch P.
DensityMatrix2 rho_B_conditional(const DecoherenceReport& r, Branch branch_of_A);

/// 2 |<L|rho|R>|.
double visibility(const DensityMatrix2& rho);

/// (1/2) sum |eigenvalues(r1 - r2)|.
double trace_distance(const DensityMatrix2& r1, const DensityMatrix2& r2);

/// Trace distance between rho_BR and rho_BL.
double distinguishability(const DecoherenceReport& r);

/// e^{-Gamma_A} |cos(Phi_AB / 2)|.
double visibility_closed_form(const DecoherenceReport& r);
/// e^{-Gamma_B} |sin(Phi_BA / 2)|.
double distinguishability_closed_form(const DecoherenceReport& r);

}  // namespace qcl
