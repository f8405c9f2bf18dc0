#pragma once

// Shared randomized scenario families for the unit and acceptance suites.

#include <cstdint>
#include <random>

#include "qcl/scenario.hpp"

namespace testing_support {

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Split whose peak branch speed is at most 0.75.
inline qcl::SplitParams random_split(std::mt19937_64& rng, double t0, double max_ramp = 1.5,
                                     double max_hold = 1.0) {
  qcl::SplitParams s;
  s.ramp = uniform(rng, 0.8, max_ramp);
  s.hold = uniform(rng, 0.0, max_hold);
  s.L = uniform(rng, 0.2, 0.8) * 16.0 * s.ramp / 15.0;
  s.t0 = t0;
  return s;
}

/// A splits at t = 0, B at t = T_A with a superposition no longer than A's. Spacelike draws place B beyond the reach
/// of A's whole superposition; the others sit at D in [0.3, T].
inline qcl::SplitScenarioParams random_params(std::mt19937_64& rng, bool spacelike) {
  qcl::SplitScenarioParams p;
  p.split_A = random_split(rng, 0.0);
  p.split_B = random_split(rng, p.split_A.ramp, p.split_A.ramp, p.split_A.hold);
  p.charge_A = uniform(rng, 0.5, 1.5);
  p.charge_B = uniform(rng, 0.5, 1.5);
  p.kernel.sigma = uniform(rng, 0.05, 0.15);
  const double T = 2.0 * p.split_A.ramp + p.split_A.hold;
  if (spacelike)
    p.D = T + 0.5 * (p.split_A.L + p.split_B.L) + uniform(rng, 0.5, 3.0);
  else
    p.D = uniform(rng, 0.3, T);
  return p;
}

}  // namespace testing_support
