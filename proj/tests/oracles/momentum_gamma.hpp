#pragma once

// Gamma in momentum space for a branch pair whose branches move along y only:
//   Gamma = (1 / 16 pi^2) int_0^inf k dk int_{-1}^{1} dc exp(-k^2 sigma^2) (1 - c^2) |J_y(k, c)|^2,
//   J_y(k, c) = q sum_P s_P int dt v_P(t) exp(i k (t - c y_P(t))).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "legendre.hpp"
#include "qcl/geometry.hpp"

namespace oracle {

inline double momentum_gamma(const qcl::BranchPair& pair, double sigma) {
  using std::numbers::pi;
  const auto sub = pair.superposition_window();
  if (!sub) return 0.0;
  const Rule r16 = legendre(16);

  // Time nodes: panels of length <= 0.1, 16 nodes each; nodes where both
  // branches rest contribute nothing and are dropped.
  struct Node {
    double t, w, v[2], y[2];
  };
  std::vector<Node> nodes;
  const int tp = std::max(8, static_cast<int>(std::ceil(sub->length() / 0.1)));
  const double h = sub->length() / tp;
  for (int p = 0; p < tp; ++p) {
    const double c = sub->start + (p + 0.5) * h;
    for (std::size_t i = 0; i < r16.x.size(); ++i) {
      Node n;
      n.t = c + 0.5 * h * r16.x[i];
      n.w = 0.5 * h * r16.w[i];
      const qcl::Worldline* b[2] = {&pair.right, &pair.left};
      for (int j = 0; j < 2; ++j) {
        n.v[j] = b[j]->velocity(n.t).y;
        n.y[j] = b[j]->position(n.t).y;
      }
      if (n.v[0] != 0.0 || n.v[1] != 0.0) nodes.push_back(n);
    }
  }
  const double q = pair.charge();
  auto J2 = [&](double k, double c) {
    std::complex<double> s = 0.0;
    for (const Node& n : nodes)
      s += n.w * (n.v[0] * std::polar(1.0, k * (n.t - c * n.y[0])) -
                  n.v[1] * std::polar(1.0, k * (n.t - c * n.y[1])));
    return std::norm(q * s);
  };
  const Rule rc = legendre(32);
  auto over_c = [&](double k) {
    auto g = [&](double c) { return (1.0 - c * c) * J2(k, c); };
    return composite(g, -1.0, 1.0, 2, rc);
  };
  auto over_k = [&](double k) { return k * std::exp(-k * k * sigma * sigma) * over_c(k); };
  const Rule rk = legendre(32);
  return composite(over_k, 0.0, 8.0 / sigma, 8, rk) / (16.0 * pi * pi);
}

}  // namespace oracle
