#pragma once
//! \file flows.hpp
//! \brief Stretching diagnostics and flow fields around the tube axis.
//!
//! Sign conventions: a filament element of length l obeys
//!     dl/dt = (-kappa v_n + v_s') l
//! and the poloidal tube flow enters through v_n = -v_theta sin(theta),
//! v_b = v_theta cos(theta), which turns the rate into
//!     dl/dt = (kappa v_theta sin(theta) + v_s') l.
//! Incompressibility for the filament reads v_s' - kappa v_n = 0; the same
//! expression is exposed as a residual so callers can measure how far a flow
//! is from solenoidal instead of assuming it.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tubedyn/integrate.hpp"
#include "tubedyn/vec3.hpp"

namespace tubedyn::flows {

//! dl/dt / l for a filament: -kappa v_n + v_s'.
inline double stretch_rate_filament(double kappa, double v_n, double v_s_prime) {
  return -kappa * v_n + v_s_prime;
}

//! Incompressibility residual v_s' - kappa v_n (zero for solenoidal flow).
inline double solenoidal_residual_filament(double kappa, double v_n, double v_s_prime) {
  return v_s_prime - kappa * v_n;
}

//! dl/dt / l with the poloidal component folded in: kappa v_theta sin(theta) + v_s'.
inline double stretch_rate_tube(double kappa, double v_theta, double theta, double v_s_prime) {
  return kappa * v_theta * std::sin(theta) + v_s_prime;
}

//! Normal/binormal components of a poloidal section flow.
inline double v_n_from_poloidal(double v_theta, double theta) { return -v_theta * std::sin(theta); }
inline double v_b_from_poloidal(double v_theta, double theta) { return v_theta * std::cos(theta); }

//! Saturated stretching exponent v_theta / (v0 tau0 a). Larger torsion or a
//! fatter tube means less stretching per revolution.
inline double tube_stretch_exponent(double v_theta, double v0, double tau0, double a) {
  const double den = v0 * tau0 * a;
  if (den == 0.0) throw std::invalid_argument("tube_stretch_exponent: v0*tau0*a = 0");
  return v_theta / den;
}

//! l(t1) = l0 exp(integral of gamma over [t0, t1]).
template <class F>
double stretch_factor(const F& gamma_of_t, double t0, double t1, double l0,
                      std::size_t panels = 512) {
  if (!(l0 > 0.0) || !std::isfinite(l0)) throw std::invalid_argument("stretch_factor: l0 must be > 0");
  return l0 * std::exp(simpson(gamma_of_t, t0, t1, panels));
}

//! Length bookkeeping for one stretched element.
struct StretchState {
  double l0, l, gamma;

  StretchState(double l0_, double l_, double gamma_) : l0(l0_), l(l_), gamma(gamma_) {
    if (!(l0 > 0.0) || !(l > 0.0) || !std::isfinite(gamma))
      throw std::invalid_argument("StretchState: lengths must be > 0 and gamma finite");
  }
  double ratio() const { return l / l0; }
};

//! d(v_theta)/ds = r kappa tau sin(theta) v_theta, the poloidal advection rate.
inline double poloidal_evolution_rhs(double r, double kappa, double tau, double theta,
                                     double v_theta) {
  return r * kappa * tau * std::sin(theta) * v_theta;
}

struct Vorticity {
  double omega_r, omega_theta, omega_s;
  double omega_0;  // the constant poloidal part, kept for bookkeeping
};

//! Vorticity of the helical tube flow (constant torsion tau0):
//!   omega_r     = -tau0^2 r sin(theta) v_theta
//!   omega_theta = omega_0
//!   omega_s     = -(d v_theta/dr - (cos(theta)/r) tau0 v_theta)
inline Vorticity vorticity_components(double tau0, double r, double theta, double v_theta,
                                      double dv_theta_dr, double omega0) {
  if (r == 0.0) throw std::invalid_argument("vorticity_components: r = 0 (axial component has 1/r)");
  const double omega_r = -tau0 * tau0 * r * std::sin(theta) * v_theta;
  const double omega_s = -(dv_theta_dr - (std::cos(theta) / r) * tau0 * v_theta);
  return {omega_r, omega0, omega_s, omega0};
}

//! Axial flow implied by a constant poloidal vorticity: v_s = -omega_0 r.
inline double axial_flow_from_vorticity(double omega0, double r) { return -omega0 * r; }

//! Growth rate of the binormal-driven flow: gamma = tau0 v0.
inline double binormal_flow_gamma(double tau0, double v0) { return tau0 * v0; }

//! Along-axis filament flow profiles (callables of s).
struct FilamentFlow {
  std::function<double(double)> v_s, v_n, v_b, v_s_prime;

  double rate_at(double s, double kappa) const {
    return stretch_rate_filament(kappa, v_n(s), v_s_prime(s));
  }
};

//! Section flow for the tube scenarios: poloidal profile over (r, theta) plus
//! an axial profile of r, with a reference speed for exponents.
struct TubeFlow {
  std::function<double(double, double)> v_theta;
  std::function<double(double)> v_s;
  double v0 = 1.0;
};

// ---------------------------------------------------------------------------
// Grid Beltrami residual: curl u - lambda_B u on a structured orthogonal grid.

enum class GridGeometry {
  cartesian,      // scale factors (1, 1, 1)
  tube_section,   // coordinates (r, theta, s), scale factors (1, r, 1)
};

//! Structured grid of a 3-component field. A direction with n = 1 is treated
//! as invariant (derivatives vanish); otherwise at least 3 nodes are needed
//! for the second-order stencils, and n = 2 is rejected as degenerate.
struct VectorGrid {
  GridGeometry geometry = GridGeometry::cartesian;
  std::size_t n1 = 1, n2 = 1, n3 = 1;
  double x1_min = 0.0, d1 = 1.0;
  double x2_min = 0.0, d2 = 1.0;
  double x3_min = 0.0, d3 = 1.0;
  bool periodic1 = false, periodic2 = false, periodic3 = false;
  std::vector<Vec3> f;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n2 + j) * n3 + k;
  }
  const Vec3& at(std::size_t i, std::size_t j, std::size_t k) const { return f[index(i, j, k)]; }
  Vec3& at(std::size_t i, std::size_t j, std::size_t k) { return f[index(i, j, k)]; }

  double x1(std::size_t i) const { return x1_min + d1 * static_cast<double>(i); }
  double x2(std::size_t j) const { return x2_min + d2 * static_cast<double>(j); }
  double x3(std::size_t k) const { return x3_min + d3 * static_cast<double>(k); }

  template <class F>
  static VectorGrid sample(GridGeometry geom, std::size_t n1, std::size_t n2, std::size_t n3,
                           double x1_min, double d1, double x2_min, double d2, double x3_min,
                           double d3, bool p1, bool p2, bool p3, const F& field) {
    VectorGrid g;
    g.geometry = geom;
    g.n1 = n1; g.n2 = n2; g.n3 = n3;
    g.x1_min = x1_min; g.d1 = d1;
    g.x2_min = x2_min; g.d2 = d2;
    g.x3_min = x3_min; g.d3 = d3;
    g.periodic1 = p1; g.periodic2 = p2; g.periodic3 = p3;
    g.f.resize(n1 * n2 * n3);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t k = 0; k < n3; ++k)
          g.at(i, j, k) = field(g.x1(i), g.x2(j), g.x3(k));
    return g;
  }
};

struct BeltramiResidual {
  std::vector<Vec3> residual;  // curl u - lambda_B u per node
  double max_abs = 0.0;
};

namespace detail {

//! d/dx_axis of the scalar picked by `pick` at node (i,j,k), second order.
//! Periodic directions wrap; open ones fall back to one-sided 3-point stencils.
template <class Pick>
double grid_derivative(const VectorGrid& g, const Pick& pick, std::size_t i, std::size_t j,
                       std::size_t k, int axis) {
  const std::size_t n = axis == 0 ? g.n1 : axis == 1 ? g.n2 : g.n3;
  const double d = axis == 0 ? g.d1 : axis == 1 ? g.d2 : g.d3;
  const bool periodic = axis == 0 ? g.periodic1 : axis == 1 ? g.periodic2 : g.periodic3;
  if (n == 1) return 0.0;

  const std::size_t pos = axis == 0 ? i : axis == 1 ? j : k;
  auto value = [&](std::size_t p) {
    std::size_t ii = i, jj = j, kk = k;
    (axis == 0 ? ii : axis == 1 ? jj : kk) = p;
    return pick(ii, jj, kk);
  };

  if (periodic) {
    const std::size_t prev = (pos + n - 1) % n;
    const std::size_t next = (pos + 1) % n;
    return (value(next) - value(prev)) / (2.0 * d);
  }
  if (pos > 0 && pos + 1 < n) return (value(pos + 1) - value(pos - 1)) / (2.0 * d);
  if (pos == 0) return (-3.0 * value(0) + 4.0 * value(1) - value(2)) / (2.0 * d);
  return (3.0 * value(n - 1) - 4.0 * value(n - 2) + value(n - 3)) / (2.0 * d);
}

}  // namespace detail

//! curl u - lambda_B u over the whole grid, in the grid's orthogonal basis.
//! Uses the curvilinear curl with the geometry's scale factors; for the tube
//! section the radial window must stay at r > 0.
inline BeltramiResidual beltrami_residual(const VectorGrid& g, double lambda_B) {
  if (g.f.size() != g.n1 * g.n2 * g.n3)
    throw std::invalid_argument("beltrami_residual: field size does not match grid");
  for (std::size_t n : {g.n1, g.n2, g.n3})
    if (n == 2) throw std::invalid_argument("beltrami_residual: degenerate grid (n = 2)");
  if (g.n1 < 2 && g.n2 < 2 && g.n3 < 2)
    throw std::invalid_argument("beltrami_residual: degenerate grid (single node)");
  const bool tube = g.geometry == GridGeometry::tube_section;
  if (tube && !(g.x1_min > 0.0))
    throw std::invalid_argument("beltrami_residual: tube section needs r > 0");

  BeltramiResidual out;
  out.residual.resize(g.f.size());

  // scale factors h = (1, h2(x1), 1); cartesian has h2 = 1
  auto h2_of = [tube](double r) { return tube ? r : 1.0; };

  for (std::size_t i = 0; i < g.n1; ++i) {
    const double h2 = h2_of(g.x1(i));
    for (std::size_t j = 0; j < g.n2; ++j)
      for (std::size_t k = 0; k < g.n3; ++k) {
        auto u1 = [&g](std::size_t a, std::size_t b, std::size_t c) { return g.at(a, b, c).x; };
        auto u2 = [&g](std::size_t a, std::size_t b, std::size_t c) { return g.at(a, b, c).y; };
        auto u3 = [&g](std::size_t a, std::size_t b, std::size_t c) { return g.at(a, b, c).z; };
        auto h2u2 = [&](std::size_t a, std::size_t b, std::size_t c) {
          return h2_of(g.x1(a)) * g.at(a, b, c).y;
        };
        const double c1 =
            (detail::grid_derivative(g, u3, i, j, k, 1) / h2) -
            detail::grid_derivative(g, u2, i, j, k, 2);
        const double c2 = detail::grid_derivative(g, u1, i, j, k, 2) -
                          detail::grid_derivative(g, u3, i, j, k, 0);
        const double c3 = (detail::grid_derivative(g, h2u2, i, j, k, 0) -
                           detail::grid_derivative(g, u1, i, j, k, 1)) /
                          h2;
        const Vec3& u = g.at(i, j, k);
        const Vec3 res{c1 - lambda_B * u.x, c2 - lambda_B * u.y, c3 - lambda_B * u.z};
        out.residual[g.index(i, j, k)] = res;
        out.max_abs = std::max({out.max_abs, std::abs(res.x), std::abs(res.y), std::abs(res.z)});
      }
  }
  return out;
}

}  // namespace tubedyn::flows
