#include "qcl/scenario.hpp"

#include <stdexcept>
#include <string>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

void require_valid(const BranchPair& p, const char* name) {
  const auto v = validate_branch_pair(p);
  if (v.empty()) return;
  std::string msg = std::string("invalid branch pair ") + name + ":";
  for (const auto& e : v) msg += " [" + to_string(e.kind) + ": " + e.detail + "]";
  throw DomainError(msg);
}

}  // namespace

Scenario make_scenario(BranchPair pair_A, BranchPair pair_B, double D, ScenarioTimes times,
                       KernelSpec kernel, BackgroundField background) {
  kernel.validate();
  require_valid(pair_A, "A");
  require_valid(pair_B, "B");
  if (!(times.T >= 0.0 && times.T_A >= 0.0 && times.T_B >= 0.0))
    throw std::invalid_argument("times must be non-negative");
  if (times.T_A > times.T) throw std::invalid_argument("times: T_A must not exceed T");
  if (times.T_B > times.T) throw std::invalid_argument("times: T_B must not exceed T");
  pair_A.label = ParticleLabel::A;
  pair_B.label = ParticleLabel::B;
  const bool spacelike = !causally_connected(pair_B, pair_A);
  return Scenario{std::move(pair_A), std::move(pair_B), D,       times,
                  kernel,            std::move(background), spacelike};
}

ScenarioTimes derived_times(const SplitParams& a, const SplitParams& b) {
  return {2.0 * a.ramp + a.hold, a.ramp, 2.0 * b.ramp + b.hold};
}

Scenario make_split_scenario(const SplitScenarioParams& p) {
  if (!std::isfinite(p.D) || p.D < 0.0) throw std::invalid_argument("D must be finite and >= 0");
  SplitOptions oa;
  oa.charge = p.charge_A;
  oa.margin = p.margin;
  SplitOptions ob = oa;
  ob.charge = p.charge_B;
  ob.origin = {p.D, 0.0, 0.0};
  BranchPair a = make_split_pair(ParticleLabel::A, p.split_A, oa);
  BranchPair b = make_split_pair(ParticleLabel::B, p.split_B, ob);
  const ScenarioTimes t = p.times ? *p.times : derived_times(p.split_A, p.split_B);
  return make_scenario(std::move(a), std::move(b), p.D, t, p.kernel, p.background);
}

}  // namespace qcl
