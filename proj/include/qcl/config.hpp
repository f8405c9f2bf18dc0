#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcl/scenario.hpp"

namespace qcl {

/// Parsed scenario document:
///   particles.{A,B}.{charge, split: {L, t0, ramp, hold}}
///   geometry.D                     B sits at (D, 0, 0); splits run along +-y
///   kernel.{sigma, k_max, quad_tol}   optional, defaults from KernelSpec
///   times.{T, T_A, T_B}            optional, derived from the splits
///   background                     "none" | {"coulomb": {charge, position: [x, y, z]}}
///   seed                           optional unsigned integer
struct ScenarioConfig {
  nlohmann::json document;
  SplitScenarioParams params;
  bool times_given = false;
  std::uint64_t seed = 0;
};

/// Validates against the schema; unknown keys are rejected. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a file, then applies environment overrides. Throws ConfigError.
ScenarioConfig load_config(const std::string& path);

/// QCL_QUAD_TOL, when set, replaces kernel.quad_tol.
void apply_env_overrides(ScenarioConfig& c);

/// Dotted numeric keys accepted by sweeps, e.g. "geometry.D".
const std::vector<std::string>& numeric_keys();
/// Copy of doc with the numeric key set to value. Throws ConfigError on unknown keys.
nlohmann::json with_value(const nlohmann::json& doc, const std::string& key, double value);

}  // namespace qcl
