#pragma once

// Minkowski-space primitives and the split-hold-recombine worldlines of the
// two-particle interferometer. Signature (+,-,-,-), natural units c = 1.
// Worldlines are parametrized by lab time.

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qcl {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Contravariant four-vector components (t, x, y, z).
struct FourVector {
  double t = 0.0;
  Vec3 s;

  friend FourVector operator+(FourVector a, FourVector b) { return {a.t + b.t, a.s + b.s}; }
  friend FourVector operator-(FourVector a, FourVector b) { return {a.t - b.t, a.s - b.s}; }
  friend FourVector operator*(double k, FourVector a) { return {k * a.t, k * a.s}; }
  friend bool operator==(const FourVector&, const FourVector&) = default;
};

/// a^mu b_mu with signature (+,-,-,-).
inline double minkowski(FourVector a, FourVector b) { return a.t * b.t - dot(a.s, b.s); }

struct Event {
  double t = 0.0;
  Vec3 r;

  friend FourVector operator-(Event a, Event b) { return {a.t - b.t, a.r - b.r}; }
  friend bool operator==(const Event&, const Event&) = default;
};

struct Window {
  double start = 0.0;
  double end = 0.0;

  bool contains(double t) const { return t >= start && t <= end; }
  double length() const { return end - start; }
  friend bool operator==(const Window&, const Window&) = default;
};

// ---------------------------------------------------------------------------
// Path families

struct StaticPoint {
  Vec3 position;
  friend bool operator==(const StaticPoint&, const StaticPoint&) = default;
};

/// Leaves `origin` at t0, reaches origin + displacement after `ramp`, holds
/// for `hold`, and returns over another `ramp`. Ramps use the quintic
/// smoothstep 6u^5 - 15u^4 + 10u^3, so the path is C2.
struct SmoothSplit {
  Vec3 origin;
  Vec3 displacement;
  double t0 = 0.0;
  double ramp = 1.0;
  double hold = 0.0;

  double end() const { return t0 + 2.0 * ramp + hold; }
  /// Peak speed, reached mid-ramp: 15|d| / (8 ramp).
  double peak_speed() const { return 15.0 * norm(displacement) / (8.0 * ramp); }
  friend bool operator==(const SmoothSplit&, const SmoothSplit&) = default;
};

/// Clamped cubic spline through samples with zero end velocities; the point
/// rests at the first/last sample outside the sampled range.
class Sampled {
 public:
  Sampled(std::vector<double> times, std::vector<Vec3> positions);

  Vec3 position(double t) const;
  Vec3 velocity(double t) const;
  const std::vector<double>& times() const { return times_; }
  const std::vector<Vec3>& positions() const { return positions_; }
  friend bool operator==(const Sampled& a, const Sampled& b) {
    return a.times_ == b.times_ && a.positions_ == b.positions_;
  }

 private:
  std::vector<double> times_;
  std::vector<Vec3> positions_;
  std::vector<Vec3> second_;  // spline second derivatives at knots
};

using Path = std::variant<StaticPoint, SmoothSplit, Sampled>;

Vec3 path_position(const Path& p, double t);
Vec3 path_velocity(const Path& p, double t);
/// Interval outside which the path is at rest at its base point; empty for static paths.
std::optional<Window> path_active_window(const Path& p);
/// Times where the path changes analytic piece (useful quadrature breakpoints).
std::vector<double> path_breakpoints(const Path& p);

// ---------------------------------------------------------------------------

/// Charged timelike trajectory. The charge exists on `window`; with the
/// extension flags it also rests at its end positions before/after it.
class Worldline {
 public:
  Worldline(double charge, Window window, Path path, bool extend_past = true,
            bool extend_future = true);

  double charge() const { return charge_; }
  const Window& window() const { return window_; }
  const Path& path() const { return path_; }
  bool extend_past() const { return extend_past_; }
  bool extend_future() const { return extend_future_; }

  /// True when the charge exists at lab time t.
  bool exists_at(double t) const;
  /// Position and velocity honoring the static extensions. No domain check.
  Vec3 position(double t) const;
  Vec3 velocity(double t) const;
  /// Lab-time four-velocity (1, v).
  FourVector four_velocity(double t) const { return {1.0, velocity(t)}; }
  Event event(double t) const { return {t, position(t)}; }

  std::vector<double> breakpoints() const;

 private:
  double charge_;
  Window window_;
  Path path_;
  bool extend_past_;
  bool extend_future_;
};

struct CurrentSample {
  Event position;
  FourVector current;  // q (1, dX/dt)
};

/// Classical point current at lab time t: q u^mu at X(t). Throws DomainError
/// when the charge does not exist at t.
CurrentSample current_sample(const Worldline& w, double t);

enum class IntervalClass { timelike, spacelike, lightlike };

struct Interval {
  IntervalClass kind;
  double s2;  // (dt)^2 - |dx|^2
};

inline constexpr double kLightconeTolerance = 1e-9;

Interval interval_class(const Event& a, const Event& b, double eps = kLightconeTolerance);

// ---------------------------------------------------------------------------

enum class ParticleLabel { A, B };
enum class Branch { R, L };

/// The (R, L) superposed worldlines of one particle.
struct BranchPair {
  Worldline right;
  Worldline left;
  ParticleLabel label = ParticleLabel::A;

  const Worldline& branch(Branch b) const { return b == Branch::R ? right : left; }
  double charge() const { return right.charge(); }
  /// Hull of the branches' active windows; empty when both branches rest.
  std::optional<Window> superposition_window() const;
  /// Branches describe the same trajectory (no superposition).
  bool degenerate() const;
};

struct Violation {
  enum class Kind {
    ChargeMismatch,
    WindowMismatch,
    ExtensionMismatch,
    SuperluminalSegment,
    NonCoincidentOutsideSubWindow,
    ExtensionNotAtRest,
  };
  Kind kind;
  std::string detail;
};

std::string to_string(Violation::Kind k);

/// Empty iff the pair is admissible: matching charge/window, subluminal
/// everywhere, branches coincident (position and velocity) outside the
/// superposition sub-window.
std::vector<Violation> validate_branch_pair(const BranchPair& p);

struct SplitParams {
  double L = 0.0;  // full branch separation; each branch moves L/2
  double t0 = 0.0;
  double ramp = 1.0;
  double hold = 0.0;
};

struct SplitOptions {
  Vec3 origin;
  Vec3 direction{0.0, 1.0, 0.0};
  double charge = 1.0;
  double margin = 1.0;  // window padding around the split
  bool extend_past = true;
  bool extend_future = true;
};

/// One branch of a split-hold-recombine path, displaced by +L/2 along
/// `direction`. Rejects ramp <= 0, hold < 0, L < 0, or peak speed >= 1.
Worldline make_split_path(const SplitParams& p, const SplitOptions& opt = {});

/// R branch along +direction, L branch along -direction.
BranchPair make_split_pair(ParticleLabel label, const SplitParams& p, const SplitOptions& opt = {});

/// True when some event of `target`'s superposition sub-window lies strictly
/// inside the future light cone (s^2 > eps) of an event of `source`'s
/// sub-window. Resolved by branch-and-bound over time rectangles; an
/// unresolved search counts as connected.
bool causally_connected(const BranchPair& source, const BranchPair& target,
                        double eps = kLightconeTolerance);

}  // namespace qcl
