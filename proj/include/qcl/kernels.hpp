#pragma once

// Feynman-gauge photon two-point structures. Tensor kernels are eta_{mu nu}
// times a scalar:
//   G^r_{mu nu}(x, y)    = eta_{mu nu} G_ret(x - y),  G_ret = delta(t - r) / (4 pi r)
//   <{A_mu(x), A_nu(y)}> = -eta_{mu nu} H_sigma(x - y)
// H_sigma is the symmetric massless two-point function with each mode damped
// by exp(-k^2 sigma^2).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcl/geometry.hpp"

namespace qcl {

struct KernelSpec {
  double sigma = 0.1;     // UV smearing time
  double k_max = 60.0;    // momentum cutoff for mode-sum / momentum-space evaluations
  double quad_tol = 1e-6; // relative quadrature tolerance

  /// Throws std::invalid_argument on sigma <= 0, k_max <= 0, quad_tol outside (0, 1).
  void validate() const;
  /// Non-fatal diagnostics (k_max * sigma < 5).
  std::vector<std::string> warnings() const;
};

/// Dawson's integral F(x) = exp(-x^2) int_0^x exp(y^2) dy.
double dawson(double x);

/// H_sigma(dt, r) = (1 / (2 pi^2 r)) int_0^inf sin(k r) cos(k dt) exp(-k^2 sigma^2) dk,
/// in closed form via Dawson's integral. Finite at coincidence, where it
/// equals 1 / (4 pi^2 sigma^2).
double hadamard_scalar(const FourVector& dx, const KernelSpec& spec);

/// Smeared retarded scalar: theta(dt) times the exp(-k^2 sigma^2)-damped
/// commutator function. A Gaussian shell of width ~sigma around the future
/// light cone; used only for same-particle self fields.
double smeared_retarded_scalar(const FourVector& dx, const KernelSpec& spec);

/// Lab time t_ret with x^0 - t_ret = |x - X(t_ret)|, or none when x precedes
/// all causal contact with the charge (including its static extensions).
std::optional<double> retarded_time(const Event& x, const Worldline& w);
/// Mirror image: t_adv - x^0 = |x - X(t_adv)|.
std::optional<double> advanced_time(const Event& x, const Worldline& w);

/// Point-charge retarded four-potential q u^mu / (4 pi (R - R.v)) at the
/// retarded point; exactly zero when there is no retarded point. Throws
/// SingularityError when x lies on the worldline.
FourVector lienard_wiechert(const Event& x, const Worldline& w);
/// Advanced counterpart q u^mu / (4 pi (R + R.v)).
FourVector lienard_wiechert_advanced(const Event& x, const Worldline& w);
/// Point-charge potential at x sourced from w at lab time t_source, which
/// must already solve the retarded (or advanced) light-cone equation.
FourVector point_potential(const Event& x, const Worldline& w, double t_source,
                           bool advanced = false);

/// Classical background four-potential A^mu(x) (contravariant). Default: zero.
class BackgroundField {
 public:
  using Fn = std::function<FourVector(const Event&)>;

  BackgroundField() = default;
  explicit BackgroundField(Fn fn, std::string description = "custom");

  static BackgroundField none() { return {}; }
  /// Static Coulomb field (A^0 = Q / (4 pi |x - p|)) of a third charge.
  static BackgroundField coulomb(double charge, Vec3 position);

  /// Adds the pure-gauge term d^mu chi given the gradient of chi:
  /// grad returns (d_t chi, d_x chi, d_y chi, d_z chi).
  BackgroundField with_gauge_shift(const std::function<FourVector(const Event&)>& grad) const;

  bool is_zero() const { return !fn_; }
  FourVector operator()(const Event& x) const { return fn_ ? fn_(x) : FourVector{}; }
  const std::string& description() const { return description_; }

 private:
  Fn fn_;
  std::string description_ = "none";
};

}  // namespace qcl
