#pragma once
//! \file geometry.hpp
//! \brief Frenet frames along curvature/torsion profiles: transport, time
//!        evolution, and curve reconstruction.
//!
//! Conventions. Arclength s parametrizes the axis curve; kappa(s) and tau(s)
//! are its curvature and torsion. The frame transport rule is
//!     t' = kappa n,   n' = -kappa t + tau b,   b' = -tau n,
//! and the frame's time evolution under the flows considered here is the
//! algebraic map
//!     dt/dt = kappa' b - kappa tau n,   dn/dt = kappa tau t,   db/dt = -kappa' t.
//! Frames are never silently re-orthonormalized: evolve_frame() reports the
//! worst orthonormality and handedness drift it produced and leaves the raw
//! vectors untouched, so callers can judge the transport quality themselves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tubedyn/integrate.hpp"
#include "tubedyn/vec3.hpp"

namespace tubedyn::geometry {

//! Curvature/torsion profile over an arclength window.
//! Either closed-form callables or sampled arrays (linear interpolation,
//! clamped at the window ends).
class CurveProfile {
 public:
  static CurveProfile from_functions(std::function<double(double)> kappa,
                                     std::function<double(double)> tau, double s_min,
                                     double s_max) {
    check_window(s_min, s_max);
    if (!kappa || !tau) throw std::invalid_argument("CurveProfile: null profile function");
    CurveProfile p;
    p.kappa_ = std::move(kappa);
    p.tau_ = std::move(tau);
    p.s_min_ = s_min;
    p.s_max_ = s_max;
    return p;
  }

  static CurveProfile from_samples(std::vector<double> s, std::vector<double> kappa,
                                   std::vector<double> tau) {
    if (s.size() < 2) throw std::invalid_argument("CurveProfile: need at least 2 samples");
    if (kappa.size() != s.size() || tau.size() != s.size())
      throw std::invalid_argument("CurveProfile: sample arrays differ in length");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!(s[i] < s[i + 1]))
        throw std::invalid_argument("CurveProfile: abscissae not strictly increasing");
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!std::isfinite(s[i]) || !std::isfinite(kappa[i]) || !std::isfinite(tau[i]))
        throw std::invalid_argument("CurveProfile: non-finite sample");
    check_window(s.front(), s.back());
    auto sp = std::make_shared<Samples>(Samples{std::move(s), std::move(kappa), std::move(tau)});
    CurveProfile p;
    p.s_min_ = sp->s.front();
    p.s_max_ = sp->s.back();
    p.kappa_ = [sp](double x) { return interp(sp->s, sp->kappa, x); };
    p.tau_ = [sp](double x) { return interp(sp->s, sp->tau, x); };
    return p;
  }

  double kappa(double s) const { return kappa_(s); }
  double tau(double s) const { return tau_(s); }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

 private:
  struct Samples {
    std::vector<double> s, kappa, tau;
  };

  static void check_window(double s_min, double s_max) {
    if (!(std::isfinite(s_min) && std::isfinite(s_max) && s_min < s_max))
      throw std::invalid_argument("CurveProfile: degenerate arclength window");
  }

  static double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
  }

  std::function<double(double)> kappa_, tau_;
  double s_min_ = 0.0, s_max_ = 0.0;
};

//! Helical profile: kappa = tau = kappa0, constant along the window.
//! kappa0 = 0 degenerates to a straight line, which is fine.
inline CurveProfile helical_profile(double kappa0, double s_min, double s_max) {
  if (!std::isfinite(kappa0)) throw std::invalid_argument("helical_profile: non-finite kappa0");
  return CurveProfile::from_functions([kappa0](double) { return kappa0; },
                                      [kappa0](double) { return kappa0; }, s_min, s_max);
}

//! Integral of tau over [s0, s1] (the accumulated twist angle).
inline double total_torsion(const CurveProfile& p, double s0, double s1,
                            std::size_t panels = 512) {
  return simpson([&](double s) { return p.tau(s); }, s0, s1, panels);
}

//! Integral of kappa^2 over [s0, s1] (curvature energy of the window).
inline double total_curvature_energy(const CurveProfile& p, double s0, double s1,
                                     std::size_t panels = 512) {
  return simpson(
      [&](double s) {
        const double k = p.kappa(s);
        return k * k;
      },
      s0, s1, panels);
}

//! Right-handed orthonormal triad (t, n, b).
//! Construction enforces unit norms, mutual orthogonality and t.(n x b) = +1,
//! each to 1e-10. Integrators that accumulate small drift build frames through
//! unchecked() and report the drift instead.
struct FrenetFrame {
  Vec3 t, n, b;

  FrenetFrame(const Vec3& t_, const Vec3& n_, const Vec3& b_) : t(t_), n(n_), b(b_) {
    constexpr double tol = 1e-10;
    if (orthonormality_error() > tol)
      throw std::invalid_argument("FrenetFrame: triad not orthonormal to 1e-10");
    if (std::abs(dot(t, cross(n, b)) - 1.0) > tol)
      throw std::invalid_argument("FrenetFrame: triad not right-handed");
  }

  static FrenetFrame identity() { return unchecked({1, 0, 0}, {0, 1, 0}, {0, 0, 1}); }

  static FrenetFrame unchecked(const Vec3& t_, const Vec3& n_, const Vec3& b_) {
    FrenetFrame f(Unchecked{}, t_, n_, b_);
    return f;
  }

  //! Worst deviation among the three unit norms and three orthogonality dots.
  double orthonormality_error() const {
    double e = std::abs(dot(t, t) - 1.0);
    e = std::max(e, std::abs(dot(n, n) - 1.0));
    e = std::max(e, std::abs(dot(b, b) - 1.0));
    e = std::max(e, std::abs(dot(t, n)));
    e = std::max(e, std::abs(dot(t, b)));
    e = std::max(e, std::abs(dot(n, b)));
    return e;
  }

  //! |t.(n x b) - 1|, zero for an exact right-handed triad.
  double handedness_error() const { return std::abs(dot(t, cross(n, b)) - 1.0); }

 private:
  struct Unchecked {};
  FrenetFrame(Unchecked, const Vec3& t_, const Vec3& n_, const Vec3& b_) : t(t_), n(n_), b(b_) {}
};

struct FrameDerivative {
  Vec3 dt, dn, db;
};

//! Arclength transport: (t', n', b') = (kappa n, -kappa t + tau b, -tau n).
inline FrameDerivative frenet_arclength_derivative(const FrenetFrame& f, double kappa,
                                                   double tau) {
  return {f.n * kappa, f.t * (-kappa) + f.b * tau, f.n * (-tau)};
}

//! Time evolution of the triad under the flow class considered here:
//! dt/dt = kappa' b - kappa tau n, dn/dt = kappa tau t, db/dt = -kappa' t.
//! Purely algebraic; kappa' is the arclength derivative of kappa.
inline FrameDerivative frame_time_derivative(double kappa, double kappa_prime, double tau,
                                             const FrenetFrame& f) {
  return {f.b * kappa_prime - f.n * (kappa * tau), f.t * (kappa * tau), f.t * (-kappa_prime)};
}

//! Frames sampled along the window, plus the worst drift the transport
//! accumulated. Drift is measured on every returned frame, not just the last.
struct FrameEvolution {
  std::vector<std::pair<double, FrenetFrame>> samples;
  double max_orthonormality_drift = 0.0;
  double max_handedness_drift = 0.0;
};

namespace detail {

struct FrameState {
  Vec3 t, n, b;
  FrameState operator+(const FrameState& o) const { return {t + o.t, n + o.n, b + o.b}; }
  FrameState operator*(double c) const { return {t * c, n * c, b * c}; }
};

}  // namespace detail

//! Transport frame0 from s_min to s_max with fixed-step RK4 (a short final
//! step closes the window when (s_max - s_min) is not a multiple of step).
//! Throws std::domain_error when the profile turns non-finite mid-run.
inline FrameEvolution evolve_frame(const CurveProfile& profile, const FrenetFrame& frame0,
                                   double step) {
  if (!(std::isfinite(step) && step > 0.0)) throw std::invalid_argument("evolve_frame: step must be > 0");

  auto rhs = [&profile](double s, const detail::FrameState& y) {
    const double k = profile.kappa(s);
    const double tau = profile.tau(s);
    if (!std::isfinite(k) || !std::isfinite(tau))
      throw std::domain_error("evolve_frame: non-finite kappa/tau at s=" + std::to_string(s));
    return detail::FrameState{y.n * k, y.t * (-k) + y.b * tau, y.n * (-tau)};
  };

  FrameEvolution out;
  const double s0 = profile.s_min();
  const double s1 = profile.s_max();
  const std::size_t n_whole = static_cast<std::size_t>(std::floor((s1 - s0) / step + 1e-12));
  out.samples.reserve(n_whole + 2);

  detail::FrameState y{frame0.t, frame0.n, frame0.b};
  double s = s0;
  auto record = [&out](double where, const detail::FrameState& st) {
    FrenetFrame f = FrenetFrame::unchecked(st.t, st.n, st.b);
    out.max_orthonormality_drift = std::max(out.max_orthonormality_drift, f.orthonormality_error());
    out.max_handedness_drift = std::max(out.max_handedness_drift, f.handedness_error());
    out.samples.emplace_back(where, f);
  };
  record(s, y);
  for (std::size_t k = 0; k < n_whole; ++k) {
    y = rk4_step(rhs, s, y, step);
    s = s0 + static_cast<double>(k + 1) * step;
    record(s, y);
  }
  if (s < s1) {  // short closing step
    y = rk4_step(rhs, s, y, s1 - s);
    record(s1, y);
  }
  return out;
}

//! Discrete axis curve. Construction checks the discretization sanity bound:
//! no chord may exceed its arclength spacing (up to roundoff slack).
struct SpaceCurve {
  std::vector<double> s;
  std::vector<Vec3> points;

  SpaceCurve(std::vector<double> s_, std::vector<Vec3> pts) : s(std::move(s_)), points(std::move(pts)) {
    if (s.size() != points.size() || s.size() < 2)
      throw std::invalid_argument("SpaceCurve: need matching s/point arrays, length >= 2");
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const double ds = s[i + 1] - s[i];
      if (!(ds > 0.0)) throw std::invalid_argument("SpaceCurve: arclength not increasing");
      const double chord = norm(points[i + 1] - points[i]);
      if (chord > ds * (1.0 + 1e-9) + 1e-12)
        throw std::invalid_argument("SpaceCurve: chord exceeds arclength spacing at sample " +
                                    std::to_string(i));
    }
  }
};

//! Integrate dX/ds = t through the sampled frames, starting at X0.
//! Trapezoid with an endpoint-slope correction: the t' values entering the
//! -h^2/12 (t'_{k+1} - t'_k) term come from 3-point finite differences of the
//! stored tangents, which lifts the cumulative error to O(h^4) without
//! needing kappa.
inline SpaceCurve reconstruct_curve(const std::vector<std::pair<double, FrenetFrame>>& frames,
                                    const Vec3& X0) {
  const std::size_t n = frames.size();
  if (n < 2) throw std::invalid_argument("reconstruct_curve: need at least 2 frames");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(frames[i].first < frames[i + 1].first))
      throw std::invalid_argument("reconstruct_curve: frames not ordered in s");

  // Tangent slopes by 3-point finite differences on the (possibly non-uniform) grid.
  std::vector<Vec3> tp(n);
  auto slope3 = [&](std::size_t i0, std::size_t i1, std::size_t i2, double at) {
    const double x0 = frames[i0].first, x1 = frames[i1].first, x2 = frames[i2].first;
    const Vec3 &f0 = frames[i0].second.t, &f1 = frames[i1].second.t, &f2 = frames[i2].second.t;
    const double c0 = (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double c1 = (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double c2 = (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return f0 * c0 + f1 * c1 + f2 * c2;
  };
  tp[0] = slope3(0, 1, 2, frames[0].first);
  for (std::size_t i = 1; i + 1 < n; ++i) tp[i] = slope3(i - 1, i, i + 1, frames[i].first);
  tp[n - 1] = slope3(n - 3, n - 2, n - 1, frames[n - 1].first);

  std::vector<double> s(n);
  std::vector<Vec3> pts(n);
  s[0] = frames[0].first;
  pts[0] = X0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = frames[i + 1].first - frames[i].first;
    const Vec3 incr = (frames[i].second.t + frames[i + 1].second.t) * (h / 2.0) -
                      (tp[i + 1] - tp[i]) * (h * h / 12.0);
    pts[i + 1] = pts[i] + incr;
    s[i + 1] = frames[i + 1].first;
  }
  return SpaceCurve(std::move(s), std::move(pts));
}

}  // namespace tubedyn::geometry
