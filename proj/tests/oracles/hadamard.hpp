#pragma once

// H_sigma(t, r) = (1 / (2 pi^2 r)) int_0^inf sin(k r) cos(k t) exp(-k^2 sigma^2) dk
// by brute-force composite quadrature in k.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "legendre.hpp"

namespace oracle {

inline double hadamard(double t, double r, double sigma) {
  using std::numbers::pi;
  static const Rule rule = legendre(16);
  const double k_hi = 10.0 / sigma;
  const int panels = std::max(16, static_cast<int>(std::ceil(k_hi * (r + std::abs(t) + sigma))));
  if (r == 0.0) {
    auto f = [&](double k) { return k * std::cos(k * t) * std::exp(-k * k * sigma * sigma); };
    return composite(f, 0.0, k_hi, panels, rule) / (2.0 * pi * pi);
  }
  auto f = [&](double k) { return std::sin(k * r) * std::cos(k * t) * std::exp(-k * k * sigma * sigma); };
  return composite(f, 0.0, k_hi, panels, rule) / (2.0 * pi * pi * r);
}

}  // namespace oracle
