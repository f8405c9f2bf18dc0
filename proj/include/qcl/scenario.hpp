#pragma once

// Two-particle layout: A rests at the origin, B at (D, 0, 0); each particle
// splits along +-y into R and L branches and recombines.

#include <optional>

#include "qcl/geometry.hpp"
#include "qcl/kernels.hpp"

namespace qcl {

struct ScenarioTimes {
  double T = 0.0;    // duration of A's superposition
  double T_A = 0.0;  // A's split (ramp) time
  double T_B = 0.0;  // duration of B's superposition
};

struct Scenario {
  BranchPair pair_A;
  BranchPair pair_B;
  double D = 0.0;
  ScenarioTimes times;
  KernelSpec kernel;
  BackgroundField background;
  /// B's superposition sub-window has no causal contact with A's: no event
  /// of A's sub-window lies strictly inside the future light cone of an
  /// event of B's. Guarantees Phi_AB = 0.
  bool spacelike = false;
};

/// Validates both pairs, the kernel and T_A <= T, T_B <= T, and caches the
/// spacelike flag. Throws DomainError or std::invalid_argument.
Scenario make_scenario(BranchPair pair_A, BranchPair pair_B, double D, ScenarioTimes times,
                       KernelSpec kernel, BackgroundField background = {});

struct SplitScenarioParams {
  double charge_A = 1.0;
  double charge_B = 1.0;
  SplitParams split_A;
  SplitParams split_B;
  double D = 10.0;
  KernelSpec kernel;
  std::optional<ScenarioTimes> times;  // derived from the splits when absent
  BackgroundField background;
  double margin = 1.0;
};

/// Times implied by the split profiles: T = 2 ramp_A + hold_A, T_A = ramp_A,
/// T_B = 2 ramp_B + hold_B.
ScenarioTimes derived_times(const SplitParams& a, const SplitParams& b);

Scenario make_split_scenario(const SplitScenarioParams& p);

}  // namespace qcl
