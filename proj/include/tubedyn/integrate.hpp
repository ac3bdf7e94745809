#pragma once
//! \file integrate.hpp
//! \brief Fixed-step integrators shared by the curve and induction modules.
//!
//! Two deliberate choices, made once here so every caller inherits them:
//!   * ODE advance is classical fourth-order Runge-Kutta with a fixed step.
//!     No adaptivity; reproducibility beats efficiency at this problem size.
//!   * Definite integrals use composite Simpson on an even panel count.

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace tubedyn {

//! One RK4 step of y' = f(x, y) for any state with +, scalar *.
template <class State, class Rhs>
State rk4_step(const Rhs& f, double x, const State& y, double h) {
  const State k1 = f(x, y);
  const State k2 = f(x + 0.5 * h, y + k1 * (0.5 * h));
  const State k3 = f(x + 0.5 * h, y + k2 * (0.5 * h));
  const State k4 = f(x + h, y + k3 * h);
  return y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

//! Composite Simpson rule with n panels (n rounded up to even, n >= 2).
//! Throws std::domain_error when the integrand returns a non-finite value.
template <class F>
double simpson(const F& f, double a, double b, std::size_t n = 512) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw std::domain_error("simpson: non-finite bounds");
  if (a == b) return 0.0;
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw std::domain_error("simpson: integrand not finite");
    return v;
  };
  double acc = eval(a) + eval(b);
  for (std::size_t k = 1; k < n; ++k) {
    const double x = a + static_cast<double>(k) * h;
    acc += eval(x) * ((k % 2 != 0) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace tubedyn
