#include "qcl/quantum.hpp"

#include <cmath>
#include <string>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

constexpr double kTol = 1e-12;

using Mat = std::array<std::array<cplx, 2>, 2>;

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat& m) {
  const double mean = 0.5 * (m[0][0].real() + m[1][1].real());
  const double half_gap = 0.5 * (m[0][0].real() - m[1][1].real());
  const double rad = std::hypot(half_gap, std::abs(m[0][1]));
  return {mean - rad, mean + rad};
}

void require_finite(const DecoherenceReport& r) {
  for (double v : {r.gamma_A, r.gamma_B, r.phi_A, r.phi_B, r.phi_AB, r.phi_BA, r.phi_A_BR,
                   r.phi_A_BL, r.phi_B_AR, r.phi_B_AL})
    if (!std::isfinite(v)) throw DomainError("report contains a non-finite field");
}

}  // namespace

DensityMatrix2::DensityMatrix2(Mat m) : m_(m) {
  if (std::abs(m[0][1] - std::conj(m[1][0])) > kTol || std::abs(m[0][0].imag()) > kTol ||
      std::abs(m[1][1].imag()) > kTol)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(m[0][0] + m[1][1] - 1.0) > kTol)
    throw DomainError("density matrix trace differs from 1");
  const auto ev = eigenvalues();
  if (ev[0] < -kTol)
    throw DomainError("density matrix has negative eigenvalue " + std::to_string(ev[0]));
}

DensityMatrix2 DensityMatrix2::balanced(cplx off) {
  return DensityMatrix2(Mat{{{0.5, off}, {std::conj(off), 0.5}}});
}

std::array<double, 2> DensityMatrix2::eigenvalues() const { return hermitian_eigenvalues(m_); }

DensityMatrix2 rho_A(const DecoherenceReport& r) {
  require_finite(r);
  const cplx i(0.0, 1.0);
  const cplx off = 0.25 * std::exp(-r.gamma_A + i * r.phi_A) *
                   (std::exp(-i * r.phi_A_BR) + std::exp(-i * r.phi_A_BL));
  return DensityMatrix2::balanced(off);
}

DensityMatrix2 rho_B_conditional(const DecoherenceReport& r, Branch branch_of_A) {
  require_finite(r);
  const cplx i(0.0, 1.0);
  const double pairing = branch_of_A == Branch::R ? r.phi_B_AR : r.phi_B_AL;
  return DensityMatrix2::balanced(0.5 * std::exp(-r.gamma_B + i * (r.phi_B - pairing)));
}

double visibility(const DensityMatrix2& rho) { return 2.0 * std::abs(rho(1, 0)); }

double trace_distance(const DensityMatrix2& r1, const DensityMatrix2& r2) {
  Mat d;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) d[a][b] = r1(a, b) - r2(a, b);
  const auto ev = hermitian_eigenvalues(d);
  return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

double distinguishability(const DecoherenceReport& r) {
  return trace_distance(rho_B_conditional(r, Branch::R), rho_B_conditional(r, Branch::L));
}

double visibility_closed_form(const DecoherenceReport& r) {
  return std::exp(-r.gamma_A) * std::abs(std::cos(0.5 * r.phi_AB));
}

double distinguishability_closed_form(const DecoherenceReport& r) {
  return std::exp(-r.gamma_B) * std::abs(std::sin(0.5 * r.phi_BA));
}

}  // namespace qcl
