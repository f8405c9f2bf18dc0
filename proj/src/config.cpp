#include "qcl/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError("unknown key " + where + "." + k);
}

double number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ConfigError("missing " + where + "." + key);
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
  return d;
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, where, key) : fallback;
}

void particle(const json& doc, const char* name, double& charge, SplitParams& split) {
  const std::string where = std::string("particles.") + name;
  const json& p = doc.at("particles").at(name);
  only_keys(p, where, {"charge", "split"});
  charge = number(p, where, "charge");
  if (!p.contains("split")) throw ConfigError("missing " + where + ".split");
  const json& s = p.at("split");
  const std::string ws = where + ".split";
  only_keys(s, ws, {"L", "t0", "ramp", "hold"});
  split.L = number(s, ws, "L");
  split.t0 = number(s, ws, "t0");
  split.ramp = number(s, ws, "ramp");
  split.hold = number(s, ws, "hold");
  if (split.L < 0.0) throw ConfigError(ws + ".L must be >= 0");
  if (split.ramp <= 0.0) throw ConfigError(ws + ".ramp must be > 0");
  if (split.hold < 0.0) throw ConfigError(ws + ".hold must be >= 0");
  if (15.0 * 0.5 * split.L / (8.0 * split.ramp) >= 1.0)
    throw ConfigError(ws + ": peak branch speed 15 L / (16 ramp) must be < 1");
}

}  // namespace

ScenarioConfig parse_config(const json& doc) {
  ScenarioConfig c;
  c.document = doc;
  only_keys(doc, "(root)", {"particles", "geometry", "kernel", "times", "background", "seed"});
  if (!doc.contains("particles")) throw ConfigError("missing particles");
  only_keys(doc.at("particles"), "particles", {"A", "B"});
  for (const char* n : {"A", "B"})
    if (!doc.at("particles").contains(n)) throw ConfigError(std::string("missing particles.") + n);
  SplitScenarioParams& p = c.params;
  particle(doc, "A", p.charge_A, p.split_A);
  particle(doc, "B", p.charge_B, p.split_B);

  if (!doc.contains("geometry")) throw ConfigError("missing geometry");
  only_keys(doc.at("geometry"), "geometry", {"D"});
  p.D = number(doc.at("geometry"), "geometry", "D");
  if (p.D < 0.0) throw ConfigError("geometry.D must be >= 0");

  if (doc.contains("kernel")) {
    const json& k = doc.at("kernel");
    only_keys(k, "kernel", {"sigma", "k_max", "quad_tol"});
    p.kernel.sigma = number_or(k, "kernel", "sigma", p.kernel.sigma);
    p.kernel.k_max = number_or(k, "kernel", "k_max", p.kernel.k_max);
    p.kernel.quad_tol = number_or(k, "kernel", "quad_tol", p.kernel.quad_tol);
  }
  try {
    p.kernel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (doc.contains("times")) {
    const json& t = doc.at("times");
    only_keys(t, "times", {"T", "T_A", "T_B"});
    ScenarioTimes d = derived_times(p.split_A, p.split_B);
    d.T = number_or(t, "times", "T", d.T);
    d.T_A = number_or(t, "times", "T_A", d.T_A);
    d.T_B = number_or(t, "times", "T_B", d.T_B);
    if (d.T < 0.0 || d.T_A < 0.0 || d.T_B < 0.0) throw ConfigError("times must be >= 0");
    if (d.T_A > d.T || d.T_B > d.T) throw ConfigError("times: T_A and T_B must not exceed T");
    p.times = d;
    c.times_given = true;
  }

  if (doc.contains("background")) {
    const json& b = doc.at("background");
    if (b.is_string()) {
      if (b.get<std::string>() != "none") throw ConfigError("background must be \"none\" or {coulomb}");
    } else {
      only_keys(b, "background", {"coulomb"});
      if (!b.contains("coulomb")) throw ConfigError("background object must hold \"coulomb\"");
      const json& cb = b.at("coulomb");
      only_keys(cb, "background.coulomb", {"charge", "position"});
      const double q = number(cb, "background.coulomb", "charge");
      if (!cb.contains("position") || !cb.at("position").is_array() || cb.at("position").size() != 3)
        throw ConfigError("background.coulomb.position must be [x, y, z]");
      std::array<double, 3> r{};
      for (int i = 0; i < 3; ++i) {
        const json& v = cb.at("position").at(i);
        if (!v.is_number() || !std::isfinite(v.get<double>()))
          throw ConfigError("background.coulomb.position entries must be finite numbers");
        r[i] = v.get<double>();
      }
      p.background = BackgroundField::coulomb(q, {r[0], r[1], r[2]});
    }
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ConfigError("seed must be a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  return c;
}

void apply_env_overrides(ScenarioConfig& c) {
  const char* v = std::getenv("QCL_QUAD_TOL");
  if (!v || !*v) return;
  char* end = nullptr;
  const double tol = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(tol > 0.0 && tol < 1.0))
    throw ConfigError(std::string("QCL_QUAD_TOL must be a number in (0, 1), got ") + v);
  c.params.kernel.quad_tol = tol;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  ScenarioConfig c = parse_config(doc);
  apply_env_overrides(c);
  return c;
}

const std::vector<std::string>& numeric_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const char* p : {"A", "B"}) {
      const std::string base = std::string("particles.") + p;
      k.push_back(base + ".charge");
      for (const char* s : {"L", "t0", "ramp", "hold"}) k.push_back(base + ".split." + s);
    }
    for (const char* s : {"geometry.D", "kernel.sigma", "kernel.k_max", "kernel.quad_tol", "times.T",
                          "times.T_A", "times.T_B", "background.coulomb.charge"})
      k.push_back(s);
    return k;
  }();
  return keys;
}

json with_value(const json& doc, const std::string& key, double value) {
  const auto& keys = numeric_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw ConfigError("unknown numeric key " + key);
  json out = doc;
  json* node = &out;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object() && !node->is_null()) throw ConfigError("cannot set " + key);
    node = &(*node)[parts[i]];
  }
  if (!node->is_object() && !node->is_null()) throw ConfigError("cannot set " + key);
  (*node)[parts.back()] = value;
  return out;
}

}  // namespace qcl
