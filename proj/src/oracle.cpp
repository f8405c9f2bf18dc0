#include "qcl/oracle.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <memory>
#include <numbers>

#include "qcl/errors.hpp"
#include "qcl/quadrature.hpp"

namespace qcl {

namespace {

using std::numbers::pi;
using State = std::vector<double>;  // interleaved re/im Fock amplitudes

cplx drive(const Mode& m, int label, double t) {
  return m.g[label](t) * std::polar(1.0, m.omega * t);
}

/// Composite Gauss-Legendre panels fine enough for the mode's oscillation.
struct Panels {
  std::vector<double> edges;
  std::vector<double> x;  // reference nodes on [-1, 1]
  std::vector<double> w;
};

Panels make_panels(const Mode& m, double t0, double t1) {
  Panels p;
  const int n = std::max(32, static_cast<int>(std::ceil(2.0 * (t1 - t0) * (m.omega + 1.0))));
  for (int i = 0; i <= n; ++i) p.edges.push_back(t0 + (t1 - t0) * i / n);
  gauss_legendre(16, -1.0, 1.0, p.x, p.w);
  return p;
}

cplx gl_integral(const Mode& m, int label, double a, double b, const Panels& p) {
  cplx s = 0.0;
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  for (std::size_t k = 0; k < p.x.size(); ++k) s += p.w[k] * drive(m, label, c + h * p.x[k]);
  return h * s;
}

/// theta = - iint_{t' < t} Im(f(t)^* f(t')) via the running integral F(t).
double mode_phase(const Mode& m, int label, double t0, double t1) {
  const Panels p = make_panels(m, t0, t1);
  double theta = 0.0;
  cplx before = 0.0;  // integral of f up to the current panel start
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    const double a = p.edges[i], b = p.edges[i + 1];
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (std::size_t k = 0; k < p.x.size(); ++k) {
      const double t = c + h * p.x[k];
      const cplx F = before + gl_integral(m, label, a, t, p);
      theta -= h * p.w[k] * std::imag(std::conj(drive(m, label, t)) * F);
    }
    before += gl_integral(m, label, a, b, p);
  }
  return theta;
}

struct Evolved {
  std::vector<cplx> amp;
  double leakage;
};

Evolved evolve_mode(const Mode& m, int label, double t0, double t1, int n_max) {
  namespace ode = boost::numeric::odeint;
  State x(2 * static_cast<std::size_t>(n_max), 0.0);
  x[0] = 1.0;
  std::vector<double> sq(n_max + 1);
  for (int n = 0; n <= n_max; ++n) sq[n] = std::sqrt(static_cast<double>(n));
  auto rhs = [&](const State& s, State& ds, double t) {
    const cplx f = drive(m, label, t);
    for (int n = 0; n < n_max; ++n) {
      cplx acc = 0.0;
      if (n > 0) acc += f * sq[n] * cplx(s[2 * n - 2], s[2 * n - 1]);
      if (n + 1 < n_max) acc += std::conj(f) * sq[n + 1] * cplx(s[2 * n + 2], s[2 * n + 3]);
      const cplx d = cplx(0.0, -1.0) * acc;
      ds[2 * n] = d.real();
      ds[2 * n + 1] = d.imag();
    }
  };
  double leak = 0.0;
  auto observe = [&](const State& s, double) {
    leak = std::max(leak, s[2 * n_max - 2] * s[2 * n_max - 2] + s[2 * n_max - 1] * s[2 * n_max - 1]);
  };
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-13, 1e-13);
  const double dt0 = 1e-3 / (1.0 + m.omega);
  ode::integrate_adaptive(stepper, rhs, x, t0, t1, dt0, observe);
  Evolved e{std::vector<cplx>(n_max), leak};
  double nrm = 0.0;
  for (int n = 0; n < n_max; ++n) {
    e.amp[n] = cplx(x[2 * n], x[2 * n + 1]);
    nrm += std::norm(e.amp[n]);
  }
  // Remove integrator drift of the norm (the truncated generator is unitary).
  const double scale = 1.0 / std::sqrt(nrm);
  for (cplx& a : e.amp) a *= scale;
  return e;
}

cplx inner(const std::vector<cplx>& bra, const std::vector<cplx>& ket) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

}  // namespace

void ModeSet::validate() const {
  if (!(t_end > t_start)) throw DomainError("ModeSet: empty time span");
  if (n_max < 2) throw DomainError("ModeSet: n_max must be >= 2");
  for (const Mode& m : modes) {
    if (!(m.omega > 0.0) || !std::isfinite(m.omega))
      throw DomainError("ModeSet: mode frequency must be > 0");
    for (const auto& g : m.g)
      if (!g) throw DomainError("ModeSet: missing coupling");
  }
}

cplx mode_displacement(const Mode& m, int label, double t0, double t1) {
  const Panels p = make_panels(m, t0, t1);
  cplx s = 0.0;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
    s += gl_integral(m, label, p.edges[i], p.edges[i + 1], p);
  return cplx(0.0, -1.0) * s;
}

OverlapResult evolve_overlap(const ModeSet& ms, BranchLabel a, BranchLabel b) {
  ms.validate();
  if (a == b) return {1.0, 0.0};
  cplx total = 1.0;
  double leak = 0.0;
  for (const Mode& m : ms.modes) {
    const Evolved ea = evolve_mode(m, a.index(), ms.t_start, ms.t_end, ms.n_max);
    const Evolved eb = evolve_mode(m, b.index(), ms.t_start, ms.t_end, ms.n_max);
    total *= inner(eb.amp, ea.amp);
    leak = std::max({leak, ea.leakage, eb.leakage});
  }
  return {total, leak};
}

cplx branch_overlap_exact(const ModeSet& ms, BranchLabel a, BranchLabel b) {
  const OverlapResult r = evolve_overlap(ms, a, b);
  if (r.leakage >= kLeakageLimit)
    throw TruncationLeakage("Fock truncation leakage " + std::to_string(r.leakage), r.leakage);
  return r.value;
}

double discrete_gamma(const ModeSet& ms, BranchLabel a, BranchLabel b) {
  ms.validate();
  double g = 0.0;
  for (const Mode& m : ms.modes) {
    const cplx d = mode_displacement(m, a.index(), ms.t_start, ms.t_end) -
                   mode_displacement(m, b.index(), ms.t_start, ms.t_end);
    g += 0.5 * std::norm(d);
  }
  return g;
}

GammaPhi discrete_gamma_phi(const ModeSet& ms, BranchLabel a, BranchLabel b) {
  ms.validate();
  GammaPhi out{0.0, 0.0};
  if (a == b) return out;
  for (const Mode& m : ms.modes) {
    const cplx ba = mode_displacement(m, a.index(), ms.t_start, ms.t_end);
    const cplx bb = mode_displacement(m, b.index(), ms.t_start, ms.t_end);
    out.gamma += 0.5 * std::norm(ba - bb);
    out.phi += mode_phase(m, a.index(), ms.t_start, ms.t_end) -
               mode_phase(m, b.index(), ms.t_start, ms.t_end) + std::imag(std::conj(bb) * ba);
  }
  return out;
}

JointBound joint_overlap_and_bound(const ModeSet& ms) {
  ms.validate();
  // Full tensor-product field state for every joint label.
  std::array<std::vector<cplx>, 4> psi;
  double leak = 0.0;
  for (int l = 0; l < 4; ++l) {
    std::vector<cplx> v{1.0};
    for (const Mode& m : ms.modes) {
      const Evolved e = evolve_mode(m, l, ms.t_start, ms.t_end, ms.n_max);
      leak = std::max(leak, e.leakage);
      std::vector<cplx> next(v.size() * e.amp.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < e.amp.size(); ++j) next[i * e.amp.size() + j] = v[i] * e.amp[j];
      v = std::move(next);
    }
    psi[l] = std::move(v);
  }
  if (leak >= kLeakageLimit)
    throw TruncationLeakage("Fock truncation leakage " + std::to_string(leak), leak);

  auto idx = [](Branch P, Branch Q) { return BranchLabel{P, Q}.index(); };
  constexpr Branch RL[2] = {Branch::R, Branch::L};
  JointBound jb;
  // |Omega_P> = sum_Q |Q> |psi_PQ> / sqrt(2).
  jb.alpha = 0.5 * (inner(psi[idx(Branch::L, Branch::R)], psi[idx(Branch::R, Branch::R)]) +
                    inner(psi[idx(Branch::L, Branch::L)], psi[idx(Branch::R, Branch::L)]));
  for (int q = 0; q < 2; ++q)
    for (int qp = 0; qp < 2; ++qp) {
      jb.rho_BR[q][qp] = 0.5 * inner(psi[idx(Branch::R, RL[qp])], psi[idx(Branch::R, RL[q])]);
      jb.rho_BL[q][qp] = 0.5 * inner(psi[idx(Branch::L, RL[qp])], psi[idx(Branch::L, RL[q])]);
    }
  // Trace distance of the (Hermitian, traceless) difference.
  const double a = 0.5 * (jb.rho_BR[0][0] - jb.rho_BL[0][0] - jb.rho_BR[1][1] + jb.rho_BL[1][1]).real();
  const cplx b = jb.rho_BR[0][1] - jb.rho_BL[0][1];
  const double t = 0.5 * (jb.rho_BR[0][0] - jb.rho_BL[0][0] + jb.rho_BR[1][1] - jb.rho_BL[1][1]).real();
  const double r = std::hypot(a, std::abs(b));
  jb.D_exact = 0.5 * (std::abs(t + r) + std::abs(t - r));
  jb.bound_residual = std::sqrt(std::max(0.0, 1.0 - std::norm(jb.alpha))) - jb.D_exact;
  return jb;
}

ModeSet continuum_modes(const BranchPair& pair, const KernelSpec& spec, int n_k, int n_c,
                        int n_max) {
  spec.validate();
  const auto sub = pair.superposition_window();
  if (!sub) throw DomainError("continuum_modes: pair has no superposition");
  const auto shared = std::make_shared<const BranchPair>(pair);
  const double q = pair.charge();
  const double y0 = pair.right.position(sub->start).y;
  const double k_hi = std::min(spec.k_max, 6.0 / spec.sigma);
  std::vector<double> kx, kw, cx, cw;
  gauss_legendre(n_k, 0.0, k_hi, kx, kw);
  gauss_legendre(n_c, -1.0, 1.0, cx, cw);

  ModeSet ms;
  ms.t_start = sub->start;
  ms.t_end = sub->end;
  ms.n_max = n_max;
  for (int i = 0; i < n_k; ++i) {
    for (int j = 0; j < n_c; ++j) {
      const double k = kx[i], c = cx[j];
      const double w = 2.0 / (16.0 * pi * pi) * k * std::exp(-k * k * spec.sigma * spec.sigma) *
                       (1.0 - c * c) * kw[i] * cw[j];
      const double amp = std::sqrt(w) * q;
      Mode m;
      m.omega = k;
      for (int l = 0; l < 4; ++l) {
        const Worldline* wl = (l / 2 == 0) ? &shared->right : &shared->left;
        m.g[l] = [shared, wl, amp, k, c, y0](double t) {
          const double y = wl->position(t).y - y0;
          return amp * wl->velocity(t).y * std::polar(1.0, -k * c * y);
        };
      }
      ms.modes.push_back(std::move(m));
    }
  }
  return ms;
}

ModeSet random_modes(std::mt19937_64& rng, int n_modes, int n_max, double amplitude, double span) {
  auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  ModeSet ms;
  ms.t_start = 0.0;
  ms.t_end = span;
  ms.n_max = n_max;
  for (int i = 0; i < n_modes; ++i) {
    Mode m;
    m.omega = 0.5 + 2.5 * u();
    for (int l = 0; l < 4; ++l) {
      std::array<cplx, 3> a;
      for (cplx& z : a) z = amplitude * cplx(2.0 * u() - 1.0, 2.0 * u() - 1.0);
      m.g[l] = [a, span](double t) {
        cplx s = 0.0;
        for (int k = 0; k < 3; ++k) s += a[k] * std::sin((k + 1) * pi * t / span);
        return s;
      };
    }
    ms.modes.push_back(std::move(m));
  }
  return ms;
}

}  // namespace qcl
