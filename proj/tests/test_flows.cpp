// Stretch rates, vorticity, grid Beltrami residual.
//
// Grid oracle for the Beltrami check: the single-harmonic circularly
// polarized field
//   u = (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)
// satisfies curl u = u on a 2pi-periodic box (hand re-derived before use),
// so the residual at lambda_B = 1 is pure discretization error, bounded by
// ~h^2/3 for second-order stencils and shrinking by 4x when h halves.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tubedyn/flows.hpp"

using namespace tubedyn;
using namespace tubedyn::flows;
using Catch::Approx;

TEST_CASE("filament stretch rate and solenoidal residual", "[flows]") {
  REQUIRE(stretch_rate_filament(1.0, 0.5, 0.2) == Approx(-0.3).margin(1e-15));
  REQUIRE(stretch_rate_filament(0.0, 123.0, 0.7) == 0.7);
  // solenoidal flow with no binormal part cannot stretch: v_s' = kappa v_n
  const double kappa = 2.0, v_n = 0.3, v_s_prime = kappa * v_n;
  REQUIRE(solenoidal_residual_filament(kappa, v_n, v_s_prime) == 0.0);
  REQUIRE(stretch_rate_filament(kappa, v_n, v_s_prime) == 0.0);
  REQUIRE(solenoidal_residual_filament(1.0, 1.0, 0.0) == -1.0);
}

TEST_CASE("solenoidal flows never stretch, exactly", "[flows][property]") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double kappa = u(rng), v_n = u(rng);
    const double v_s_prime = kappa * v_n;  // same product, same rounding
    REQUIRE(solenoidal_residual_filament(kappa, v_n, v_s_prime) == 0.0);
    REQUIRE(stretch_rate_filament(kappa, v_n, v_s_prime) == 0.0);
  }
}

TEST_CASE("stretch factor accumulates the rate", "[flows]") {
  auto zero = [](double) { return 0.0; };
  REQUIRE(stretch_factor(zero, 0.0, 5.0, 2.0) == Approx(2.0).epsilon(1e-14));
  auto one = [](double) { return 1.0; };
  REQUIRE(stretch_factor(one, 0.0, 1.0, 1.0) == Approx(std::exp(1.0)).epsilon(1e-13));
  auto ramp = [](double t) { return t; };  // integral over [0,2] = 2
  REQUIRE(stretch_factor(ramp, 0.0, 2.0, 3.0) == Approx(3.0 * std::exp(2.0)).epsilon(1e-13));

  REQUIRE_THROWS_AS(stretch_factor(zero, 0.0, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(stretch_factor(zero, 0.0, 1.0, -2.0), std::invalid_argument);
  auto nanrate = [](double) { return std::nan(""); };
  REQUIRE_THROWS_AS(stretch_factor(nanrate, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("stretching forward then backward restores the length", "[flows][property]") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ul(0.1, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng), l0 = ul(rng);
    auto gamma = [a, b](double t) { return a + b * std::sin(t); };
    auto minus = [&gamma](double t) { return -gamma(t); };
    const double mid = stretch_factor(gamma, 0.0, 3.0, l0);
    const double back = stretch_factor(minus, 0.0, 3.0, mid);
    REQUIRE(back == Approx(l0).epsilon(1e-12));
  }
}

TEST_CASE("tube stretch rate and poloidal components", "[flows]") {
  const double pi = std::acos(-1.0);
  REQUIRE(stretch_rate_tube(0.5, 1.0, pi / 6.0, 0.25) == Approx(0.5).epsilon(1e-12));
  REQUIRE(stretch_rate_tube(1.0, 0.0, 1.0, 0.0) == 0.0);
  REQUIRE(v_n_from_poloidal(2.0, pi / 2.0) == Approx(-2.0).epsilon(1e-12));
  REQUIRE(v_b_from_poloidal(2.0, 0.0) == 2.0);
  // the tube rate is the filament rate with v_n = -v_theta sin(theta)
  const double kappa = 0.7, v_theta = 1.3, theta = 0.4, vsp = 0.05;
  REQUIRE(stretch_rate_tube(kappa, v_theta, theta, vsp) ==
          Approx(stretch_rate_filament(kappa, v_n_from_poloidal(v_theta, theta), vsp))
              .epsilon(1e-14));
}

TEST_CASE("saturated twist exponent", "[flows]") {
  REQUIRE(tube_stretch_exponent(2.0, 1.0, 4.0, 0.5) == Approx(1.0));
  REQUIRE(tube_stretch_exponent(1.0, 2.0, 5.0, 0.1) == Approx(1.0));
  REQUIRE_THROWS_AS(tube_stretch_exponent(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
  // stronger twist -> weaker stretching, for positive inputs
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double v_theta = u(rng), v0 = u(rng), a = u(rng), tau = u(rng);
    REQUIRE(tube_stretch_exponent(v_theta, v0, tau, a) >
            tube_stretch_exponent(v_theta, v0, tau * 1.5, a));
  }
}

TEST_CASE("poloidal advection rate and its exponential solution", "[flows]") {
  const double pi = std::acos(-1.0);
  REQUIRE(poloidal_evolution_rhs(2.0, 0.5, 0.25, pi / 2.0, 3.0) == Approx(0.75).epsilon(1e-12));
  REQUIRE(poloidal_evolution_rhs(2.0, 0.5, 0.25, 0.0, 3.0) == 0.0);

  // constant coefficients: v_theta(s) = v0 exp(c s); march with RK4 and
  // compare against the closed form
  const double r = 1.2, kappa = 0.8, tau = 0.5, theta = 0.9;
  const double c = r * kappa * tau * std::sin(theta);
  auto rhs = [&](double, double v) { return poloidal_evolution_rhs(r, kappa, tau, theta, v); };
  double v = 2.0, s = 0.0;
  const double h = 1e-3;
  for (int k = 0; k < 2000; ++k, s += h) v = rk4_step(rhs, s, v, h);
  REQUIRE(v == Approx(2.0 * std::exp(c * 2.0)).epsilon(1e-10));
}

TEST_CASE("vorticity of the helical section flow", "[flows]") {
  const double pi = std::acos(-1.0);
  auto w = vorticity_components(1.0, 2.0, pi / 2.0, 3.0, 0.0, 0.0);
  REQUIRE(w.omega_r == Approx(-6.0).epsilon(1e-12));
  REQUIRE(w.omega_theta == 0.0);
  REQUIRE(w.omega_s == Approx(0.0).margin(1e-15));

  auto w2 = vorticity_components(2.0, 1.0, 0.0, 1.0, 4.0, 5.0);
  REQUIRE(w2.omega_r == 0.0);  // sin(0) = 0
  REQUIRE(w2.omega_theta == 5.0);
  REQUIRE(w2.omega_s == Approx(-2.0).epsilon(1e-12));  // -(4 - 2)

  REQUIRE_THROWS_AS(vorticity_components(1.0, 0.0, 0.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("constant poloidal vorticity implies a linear axial flow", "[flows]") {
  REQUIRE(axial_flow_from_vorticity(3.0, 2.0) == -6.0);
  // recomputing omega_theta = -d(v_s)/dr from v_s = -omega0 r is exact
  const double omega0 = 1.75;
  auto v_s = [omega0](double r) { return axial_flow_from_vorticity(omega0, r); };
  const double r = 0.8, dr = 0.25;  // exact finite difference of a linear function
  const double recovered = -(v_s(r + dr) - v_s(r - dr)) / (2.0 * dr);
  REQUIRE(recovered == omega0);
}

TEST_CASE("binormal flow growth rate", "[flows]") {
  REQUIRE(binormal_flow_gamma(0.0, 5.0) == 0.0);
  REQUIRE(binormal_flow_gamma(2.0, 3.0) == 6.0);
  // solar-scale torsion with a fast photospheric flow
  REQUIRE(binormal_flow_gamma(1e-10, 1e8) == Approx(1e-2).epsilon(1e-15));
  REQUIRE(binormal_flow_gamma(-2.0, 3.0) == -6.0);
}

TEST_CASE("filament flow bag evaluates its rate", "[flows]") {
  FilamentFlow f;
  f.v_s = [](double) { return 0.0; };
  f.v_n = [](double s) { return 0.5 * s; };
  f.v_b = [](double) { return 0.0; };
  f.v_s_prime = [](double) { return 0.2; };
  REQUIRE(f.rate_at(1.0, 1.0) == Approx(-0.3).margin(1e-15));
}

TEST_CASE("circularly polarized eigenfield has grid-order residual", "[flows]") {
  const double two_pi = 2.0 * std::acos(-1.0);
  auto abc = [](double x, double y, double z) {
    return Vec3{std::sin(z) + std::cos(y), std::sin(x) + std::cos(z), std::sin(y) + std::cos(x)};
  };
  auto make = [&](std::size_t n) {
    const double h = two_pi / static_cast<double>(n);
    return VectorGrid::sample(GridGeometry::cartesian, n, n, n, 0.0, h, 0.0, h, 0.0, h, true,
                              true, true, abc);
  };
  const auto res32 = beltrami_residual(make(32), 1.0);
  const double h32 = two_pi / 32.0;
  REQUIRE(res32.max_abs <= h32 * h32 / 2.0);
  REQUIRE(res32.max_abs > 0.0);

  // second-order convergence: halving h divides the residual by ~4
  const auto res64 = beltrami_residual(make(64), 1.0);
  const double ratio = res32.max_abs / res64.max_abs;
  REQUIRE(ratio > 3.5);
  REQUIRE(ratio < 4.5);
}

TEST_CASE("curl-free fields at lambda 0 give zero residual", "[flows]") {
  auto constant = [](double, double, double) { return Vec3{1.0, -2.0, 0.5}; };
  auto g = VectorGrid::sample(GridGeometry::cartesian, 5, 5, 5, 0.0, 0.1, 0.0, 0.1, 0.0, 0.1,
                              false, false, false, constant);
  REQUIRE(beltrami_residual(g, 0.0).max_abs == 0.0);

  // gradient field (2x, 2y, 0): central and one-sided stencils are exact on it
  auto grad = [](double x, double y, double) { return Vec3{2.0 * x, 2.0 * y, 0.0}; };
  auto g2 = VectorGrid::sample(GridGeometry::cartesian, 7, 7, 1, 0.0, 0.2, 0.0, 0.2, 0.0, 1.0,
                               false, false, false, grad);
  REQUIRE(beltrami_residual(g2, 0.0).max_abs <= 1e-13);
}

TEST_CASE("tube-section curl picks up the scale factor", "[flows]") {
  // u_theta = r: curl = (0, 0, (1/r) d(r^2)/dr) = (0, 0, 2); the r-stencil is
  // exact on the quadratic r*u_theta
  auto swirl = [](double, double, double) { return Vec3{0.0, 0.0, 0.0}; };
  auto g = VectorGrid::sample(GridGeometry::tube_section, 9, 1, 1, 0.5, 0.1, 0.0, 1.0, 0.0, 1.0,
                              false, false, false, swirl);
  for (std::size_t i = 0; i < g.n1; ++i) g.at(i, 0, 0) = Vec3{0.0, g.x1(i), 0.0};
  const auto res = beltrami_residual(g, 0.0);
  for (const auto& r : res.residual) {
    REQUIRE(r.x == Approx(0.0).margin(1e-12));
    REQUIRE(r.y == Approx(0.0).margin(1e-12));
    REQUIRE(r.z == Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("degenerate grids and bad sections are rejected", "[flows]") {
  auto zero = [](double, double, double) { return Vec3{}; };
  auto g2 = VectorGrid::sample(GridGeometry::cartesian, 2, 3, 3, 0.0, 0.1, 0.0, 0.1, 0.0, 0.1,
                               false, false, false, zero);
  REQUIRE_THROWS_AS(beltrami_residual(g2, 1.0), std::invalid_argument);

  auto g1 = VectorGrid::sample(GridGeometry::cartesian, 1, 1, 1, 0.0, 0.1, 0.0, 0.1, 0.0, 0.1,
                               false, false, false, zero);
  REQUIRE_THROWS_AS(beltrami_residual(g1, 1.0), std::invalid_argument);

  auto gt = VectorGrid::sample(GridGeometry::tube_section, 5, 1, 1, 0.0, 0.1, 0.0, 1.0, 0.0, 1.0,
                               false, false, false, zero);
  REQUIRE_THROWS_AS(beltrami_residual(gt, 1.0), std::invalid_argument);  // r window at 0

  auto gm = VectorGrid::sample(GridGeometry::cartesian, 3, 3, 3, 0.0, 0.1, 0.0, 0.1, 0.0, 0.1,
                               false, false, false, zero);
  gm.f.pop_back();
  REQUIRE_THROWS_AS(beltrami_residual(gm, 1.0), std::invalid_argument);

  StretchState ok(1.0, 2.5, 0.3);
  REQUIRE(ok.ratio() == 2.5);
  REQUIRE_THROWS_AS(StretchState(0.0, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(StretchState(1.0, -1.0, 0.0), std::invalid_argument);
}
