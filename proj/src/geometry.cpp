#include "qcl/geometry.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "qcl/errors.hpp"

namespace qcl {

namespace {

double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double smoothstep_slope(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }

// Fraction of the displacement reached at time t, and its time derivative.
std::pair<double, double> split_profile(const SmoothSplit& s, double t) {
  const double tau = t - s.t0;
  if (tau <= 0.0) return {0.0, 0.0};
  if (tau < s.ramp) {
    const double u = tau / s.ramp;
    return {smoothstep(u), smoothstep_slope(u) / s.ramp};
  }
  if (tau <= s.ramp + s.hold) return {1.0, 0.0};
  if (tau < 2.0 * s.ramp + s.hold) {
    const double u = (tau - s.ramp - s.hold) / s.ramp;
    return {smoothstep(1.0 - u), -smoothstep_slope(u) / s.ramp};
  }
  return {0.0, 0.0};
}

double component(const Vec3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); }
void set_component(Vec3& v, int i, double value) {
  (i == 0 ? v.x : (i == 1 ? v.y : v.z)) = value;
}

}  // namespace

// ---------------------------------------------------------------------------

Sampled::Sampled(std::vector<double> times, std::vector<Vec3> positions)
    : times_(std::move(times)), positions_(std::move(positions)) {
  const std::size_t n = times_.size();
  if (n < 2 || positions_.size() != n)
    throw std::invalid_argument("Sampled path needs >= 2 samples with matching positions");
  for (std::size_t i = 1; i < n; ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("Sampled path times must be strictly increasing");

  // Clamped spline (zero end slopes), Thomas algorithm per coordinate.
  second_.assign(n, Vec3{});
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = times_[i + 1] - times_[i];
  for (int c = 0; c < 3; ++c) {
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    auto y = [&](std::size_t i) { return component(positions_[i], c); };
    diag[0] = 2.0 * h[0];
    sup[0] = h[0];
    rhs[0] = 6.0 * ((y(1) - y(0)) / h[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h[i - 1];
      diag[i] = 2.0 * (h[i - 1] + h[i]);
      sup[i] = h[i];
      rhs[i] = 6.0 * ((y(i + 1) - y(i)) / h[i] - (y(i) - y(i - 1)) / h[i - 1]);
    }
    sub[n - 1] = h[n - 2];
    diag[n - 1] = 2.0 * h[n - 2];
    rhs[n - 1] = 6.0 * (-(y(n - 1) - y(n - 2)) / h[n - 2]);
    for (std::size_t i = 1; i < n; ++i) {
      const double m = sub[i] / diag[i - 1];
      diag[i] -= m * sup[i - 1];
      rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> M(n);
    M[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) M[i] = (rhs[i] - sup[i] * M[i + 1]) / diag[i];
    for (std::size_t i = 0; i < n; ++i) set_component(second_[i], c, M[i]);
  }
}

Vec3 Sampled::position(double t) const {
  if (t <= times_.front()) return positions_.front();
  if (t >= times_.back()) return positions_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double h = times_[i + 1] - times_[i];
  const double a = (times_[i + 1] - t) / h;
  const double b = (t - times_[i]) / h;
  return a * positions_[i] + b * positions_[i + 1] +
         (h * h / 6.0) * ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]);
}

Vec3 Sampled::velocity(double t) const {
  if (t <= times_.front() || t >= times_.back()) return {};
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double h = times_[i + 1] - times_[i];
  const double a = (times_[i + 1] - t) / h;
  const double b = (t - times_[i]) / h;
  return (1.0 / h) * (positions_[i + 1] - positions_[i]) +
         (h / 6.0) * ((1.0 - 3.0 * a * a) * second_[i] + (3.0 * b * b - 1.0) * second_[i + 1]);
}

// ---------------------------------------------------------------------------

Vec3 path_position(const Path& p, double t) {
  struct Visitor {
    double t;
    Vec3 operator()(const StaticPoint& s) const { return s.position; }
    Vec3 operator()(const SmoothSplit& s) const {
      return s.origin + split_profile(s, t).first * s.displacement;
    }
    Vec3 operator()(const Sampled& s) const { return s.position(t); }
  };
  return std::visit(Visitor{t}, p);
}

Vec3 path_velocity(const Path& p, double t) {
  struct Visitor {
    double t;
    Vec3 operator()(const StaticPoint&) const { return {}; }
    Vec3 operator()(const SmoothSplit& s) const {
      return split_profile(s, t).second * s.displacement;
    }
    Vec3 operator()(const Sampled& s) const { return s.velocity(t); }
  };
  return std::visit(Visitor{t}, p);
}

std::optional<Window> path_active_window(const Path& p) {
  struct Visitor {
    std::optional<Window> operator()(const StaticPoint&) const { return std::nullopt; }
    std::optional<Window> operator()(const SmoothSplit& s) const {
      if (norm(s.displacement) == 0.0) return std::nullopt;
      return Window{s.t0, s.end()};
    }
    std::optional<Window> operator()(const Sampled& s) const {
      return Window{s.times().front(), s.times().back()};
    }
  };
  return std::visit(Visitor{}, p);
}

std::vector<double> path_breakpoints(const Path& p) {
  struct Visitor {
    std::vector<double> operator()(const StaticPoint&) const { return {}; }
    std::vector<double> operator()(const SmoothSplit& s) const {
      return {s.t0, s.t0 + s.ramp, s.t0 + s.ramp + s.hold, s.end()};
    }
    std::vector<double> operator()(const Sampled& s) const { return s.times(); }
  };
  return std::visit(Visitor{}, p);
}

// ---------------------------------------------------------------------------

Worldline::Worldline(double charge, Window window, Path path, bool extend_past,
                     bool extend_future)
    : charge_(charge),
      window_(window),
      path_(std::move(path)),
      extend_past_(extend_past),
      extend_future_(extend_future) {
  if (!(window_.end > window_.start))
    throw std::invalid_argument("worldline window must have positive length");
  if (!std::isfinite(charge_)) throw std::invalid_argument("worldline charge must be finite");
}

bool Worldline::exists_at(double t) const {
  if (window_.contains(t)) return true;
  return (t < window_.start && extend_past_) || (t > window_.end && extend_future_);
}

Vec3 Worldline::position(double t) const {
  if (t < window_.start && extend_past_) return path_position(path_, window_.start);
  if (t > window_.end && extend_future_) return path_position(path_, window_.end);
  return path_position(path_, t);
}

Vec3 Worldline::velocity(double t) const {
  if ((t < window_.start && extend_past_) || (t > window_.end && extend_future_)) return {};
  return path_velocity(path_, t);
}

std::vector<double> Worldline::breakpoints() const {
  std::vector<double> out;
  for (double b : path_breakpoints(path_))
    if (b > window_.start && b < window_.end) out.push_back(b);
  out.push_back(window_.start);
  out.push_back(window_.end);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CurrentSample current_sample(const Worldline& w, double t) {
  if (!w.exists_at(t))
    throw DomainError("current_sample: t = " + std::to_string(t) + " outside worldline support");
  return {w.event(t), w.charge() * w.four_velocity(t)};
}

Interval interval_class(const Event& a, const Event& b, double eps) {
  const FourVector d = b - a;
  const double s2 = minkowski(d, d);
  if (std::abs(s2) <= eps) return {IntervalClass::lightlike, s2};
  return {s2 > 0.0 ? IntervalClass::timelike : IntervalClass::spacelike, s2};
}

// ---------------------------------------------------------------------------

std::optional<Window> BranchPair::superposition_window() const {
  auto a = path_active_window(right.path());
  auto b = path_active_window(left.path());
  std::optional<Window> hull;
  if (a && b) hull = Window{std::min(a->start, b->start), std::max(a->end, b->end)};
  else if (a) hull = a;
  else if (b) hull = b;
  if (!hull || degenerate()) return std::nullopt;
  hull->start = std::max(hull->start, right.window().start);
  hull->end = std::min(hull->end, right.window().end);
  if (!(hull->end > hull->start)) return std::nullopt;
  return hull;
}

bool BranchPair::degenerate() const { return right.path() == left.path(); }

std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::ChargeMismatch: return "ChargeMismatch";
    case Violation::Kind::WindowMismatch: return "WindowMismatch";
    case Violation::Kind::ExtensionMismatch: return "ExtensionMismatch";
    case Violation::Kind::SuperluminalSegment: return "SuperluminalSegment";
    case Violation::Kind::NonCoincidentOutsideSubWindow: return "NonCoincidentOutsideSubWindow";
    case Violation::Kind::ExtensionNotAtRest: return "ExtensionNotAtRest";
  }
  return "Unknown";
}

std::vector<Violation> validate_branch_pair(const BranchPair& p) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  if (p.right.charge() != p.left.charge())
    out.push_back({K::ChargeMismatch, "branch charges differ"});
  if (!(p.right.window() == p.left.window()))
    out.push_back({K::WindowMismatch, "branch windows differ"});
  if (p.right.extend_past() != p.left.extend_past() ||
      p.right.extend_future() != p.left.extend_future())
    out.push_back({K::ExtensionMismatch, "branch static extensions differ"});

  constexpr int kGrid = 10000;
  for (const Worldline* w : {&p.right, &p.left}) {
    const char* name = (w == &p.right) ? "R" : "L";
    double vmax = 0.0;
    if (const auto* s = std::get_if<SmoothSplit>(&w->path())) vmax = s->peak_speed();
    const Window& win = w->window();
    for (int i = 0; i <= kGrid; ++i) {
      const double t = win.start + win.length() * i / kGrid;
      vmax = std::max(vmax, norm(w->velocity(t)));
    }
    if (vmax >= 1.0)
      out.push_back({K::SuperluminalSegment,
                     std::string("branch ") + name + " peak speed " + std::to_string(vmax)});
    if ((w->extend_past() && norm(path_velocity(w->path(), win.start)) > 1e-12) ||
        (w->extend_future() && norm(path_velocity(w->path(), win.end)) > 1e-12))
      out.push_back({K::ExtensionNotAtRest,
                     std::string("branch ") + name + " moves at a static-extension boundary"});
  }

  const auto sub = p.superposition_window();
  const Window win{std::min(p.right.window().start, p.left.window().start),
                   std::max(p.right.window().end, p.left.window().end)};
  constexpr int kCoincidenceGrid = 4000;
  for (int i = 0; i <= kCoincidenceGrid; ++i) {
    const double t = win.start + win.length() * i / kCoincidenceGrid;
    if (sub && t > sub->start && t < sub->end) continue;
    const double dx = norm(p.right.position(t) - p.left.position(t));
    const double dv = norm(p.right.velocity(t) - p.left.velocity(t));
    if (dx > 1e-12 || dv > 1e-12) {
      out.push_back({K::NonCoincidentOutsideSubWindow,
                     "branches differ at t = " + std::to_string(t)});
      break;
    }
  }
  return out;
}

Worldline make_split_path(const SplitParams& p, const SplitOptions& opt) {
  if (!(p.ramp > 0.0)) throw std::invalid_argument("make_split_path: ramp must be > 0");
  if (!(p.hold >= 0.0)) throw std::invalid_argument("make_split_path: hold must be >= 0");
  if (!(p.L >= 0.0)) throw std::invalid_argument("make_split_path: L must be >= 0");
  const double dn = norm(opt.direction);
  if (!(dn > 0.0)) throw std::invalid_argument("make_split_path: direction must be nonzero");
  SmoothSplit s{opt.origin, (0.5 * p.L / dn) * opt.direction, p.t0, p.ramp, p.hold};
  if (s.peak_speed() >= 1.0)
    throw std::invalid_argument("make_split_path: peak speed " + std::to_string(s.peak_speed()) +
                                " >= 1");
  const Window w{p.t0 - opt.margin, s.end() + opt.margin};
  return Worldline(opt.charge, w, s, opt.extend_past, opt.extend_future);
}

BranchPair make_split_pair(ParticleLabel label, const SplitParams& p, const SplitOptions& opt) {
  SplitOptions mirrored = opt;
  mirrored.direction = -opt.direction;
  return BranchPair{make_split_path(p, opt), make_split_path(p, mirrored), label};
}

// ---------------------------------------------------------------------------

namespace {

enum class Search { connected, clear, unresolved };

Search branch_and_bound(const Worldline& src, Window ws, const Worldline& dst, Window wd,
                        double eps) {
  struct Rect {
    double s1, s2, u1, u2;
  };
  std::vector<Rect> stack{{ws.start, ws.end, wd.start, wd.end}};
  long budget = 4'000'000;
  bool unresolved = false;
  while (!stack.empty()) {
    if (--budget < 0) return Search::unresolved;
    const Rect r = stack.back();
    stack.pop_back();
    const double dt_max = r.u2 - r.s1;
    if (dt_max <= 0.0) continue;
    const double sc = 0.5 * (r.s1 + r.s2);
    const double uc = 0.5 * (r.u1 + r.u2);
    const double dist_c = norm(dst.position(uc) - src.position(sc));
    const double dlb = std::max(0.0, dist_c - 0.5 * (r.s2 - r.s1) - 0.5 * (r.u2 - r.u1));
    if (dt_max * dt_max - dlb * dlb <= eps) continue;
    const double dtc = uc - sc;
    if (dtc > 0.0 && dtc * dtc - dist_c * dist_c > eps) return Search::connected;
    if (r.s2 - r.s1 < 1e-13 && r.u2 - r.u1 < 1e-13) {
      unresolved = true;
      continue;
    }
    stack.push_back({r.s1, sc, r.u1, uc});
    stack.push_back({sc, r.s2, r.u1, uc});
    stack.push_back({r.s1, sc, uc, r.u2});
    stack.push_back({sc, r.s2, uc, r.u2});
  }
  return unresolved ? Search::unresolved : Search::clear;
}

}  // namespace

bool causally_connected(const BranchPair& source, const BranchPair& target, double eps) {
  const auto ws = source.superposition_window();
  const auto wd = target.superposition_window();
  if (!ws || !wd) return false;
  for (const Worldline* s : {&source.right, &source.left})
    for (const Worldline* d : {&target.right, &target.left})
      if (branch_and_bound(*s, *ws, *d, *wd, eps) != Search::clear) return true;
  return false;
}

}  // namespace qcl
