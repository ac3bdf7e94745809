#pragma once
//! \file induction.hpp
//! \brief Closed-form induction scenarios on twisted tubes and filaments.
//!
//! Each scenario in the derivation chain this toolkit audits reduces the
//! induction equation to algebra: steady field/flow ratios, the volume energy
//! rate, exponential decay of a diffusive filament, an exponentially growing
//! filamentary mode, the helical-device balance equations, diffusive radial
//! modes, and the Anosov-flow growth-rate bound. Where the source material
//! states two inconsistent forms of the same quantity (first-power vs squared
//! curvature in the filament decay, quadratic roots vs stated exponents for
//! the radial modes), BOTH forms are computed and tagged; nothing here picks
//! a winner. The report module measures the gaps.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tubedyn/geometry.hpp"
#include "tubedyn/integrate.hpp"

namespace tubedyn::induction {

//! Raised when a closed form divides by a growth rate that is zero, i.e. the
//! configuration sits exactly on the marginal case the formula excludes.
class marginal_case_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

//! Raised when eta = 0 makes a gamma/eta term undefined; the vanishing-eta
//! limit belongs to the classifier, not to the algebra here.
class diffusionless_limit_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Steady balances

//! Steady poloidal/axial field ratio: B_theta/B_s = v_theta/v_s.
inline double steady_field_flow_ratio(double v_theta, double v_s) {
  if (v_s == 0.0) throw std::invalid_argument("steady_field_flow_ratio: v_s = 0, ratio undefined");
  return v_theta / v_s;
}

//! Near-axis axial/poloidal ratio: B_s/B_theta ~ tau0 r cos(theta).
inline double axis_field_ratio(double tau0, double r, double theta) {
  return tau0 * r * std::cos(theta);
}

//! Axial field that balances the poloidal one pointwise: B_s = B_theta/(tau0 r).
//! Fields satisfying this make the volume energy rate vanish.
inline double marginal_axial_field(double B_theta, double tau0, double r) {
  if (tau0 == 0.0 || r == 0.0)
    throw std::invalid_argument("marginal_axial_field: tau0 and r must be nonzero");
  return B_theta / (tau0 * r);
}

// ---------------------------------------------------------------------------
// Energy rate

//! d(eps_M)/dt bookkeeping. The rate is stored with the 4*pi factor of the
//! volume-integral convention folded in; eps_M itself is only present for
//! scenarios that track a total energy.
struct EnergyRate {
  double d_eps_dt = 0.0;
  std::optional<double> eps_M;
};

//! Volume energy rate of the helical tube flow: integrates
//!   [B_theta tau0^2 sin(theta) (v_theta - v_s/tau0) + B_s v_theta]
//!     * (B_s - B_theta/(tau0 r))
//! over the given section grid with the caller's volume element. Fields and
//! flows are callables of (r, theta). Deterministic summation in grid order.
template <class BS, class BT, class VS, class VT, class DV>
EnergyRate zeldovich_rate(const BS& B_s, const BT& B_theta, const VS& v_s, const VT& v_theta,
                          double tau0, std::span<const double> r_grid,
                          std::span<const double> theta_grid, const DV& volume_element) {
  if (tau0 == 0.0) throw std::invalid_argument("zeldovich_rate: tau0 = 0");
  if (r_grid.empty() || theta_grid.empty())
    throw std::invalid_argument("zeldovich_rate: empty grid");
  double acc = 0.0;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw std::invalid_argument("zeldovich_rate: grid contains r <= 0");
    for (double th : theta_grid) {
      const double bs = B_s(r, th), bt = B_theta(r, th);
      const double vs = v_s(r, th), vt = v_theta(r, th);
      const double bracket = bt * tau0 * tau0 * std::sin(th) * (vt - vs / tau0) + bs * vt;
      acc += bracket * (bs - bt / (tau0 * r)) * volume_element(r, th);
    }
  }
  return {acc, std::nullopt};
}

//! Same rate over a full (r, theta, s) grid; callables take (r, theta, s).
template <class BS, class BT, class VS, class VT, class DV>
EnergyRate zeldovich_rate(const BS& B_s, const BT& B_theta, const VS& v_s, const VT& v_theta,
                          double tau0, std::span<const double> r_grid,
                          std::span<const double> theta_grid, std::span<const double> s_grid,
                          const DV& volume_element) {
  if (tau0 == 0.0) throw std::invalid_argument("zeldovich_rate: tau0 = 0");
  if (r_grid.empty() || theta_grid.empty() || s_grid.empty())
    throw std::invalid_argument("zeldovich_rate: empty grid");
  double acc = 0.0;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw std::invalid_argument("zeldovich_rate: grid contains r <= 0");
    for (double th : theta_grid)
      for (double s : s_grid) {
        const double bs = B_s(r, th, s), bt = B_theta(r, th, s);
        const double vs = v_s(r, th, s), vt = v_theta(r, th, s);
        const double bracket = bt * tau0 * tau0 * std::sin(th) * (vt - vs / tau0) + bs * vt;
        acc += bracket * (bs - bt / (tau0 * r)) * volume_element(r, th, s);
      }
  }
  return {acc, std::nullopt};
}

//! Non-stretching filament lemma as an executable statement: the integrand
//! carries t.n = 0, so the rate is identically zero for any amplitudes.
inline EnergyRate nonstretching_filament_rate(double /*B_s*/, double /*v_s*/) {
  return {0.0, std::nullopt};
}

// ---------------------------------------------------------------------------
// Diffusive filament decay

//! Closed forms of the decaying filament, plus the literal first-power rate
//! integrated as an ODE. The two disagree for non-constant curvature; the
//! report pairs them. v_s_constraint carries the helical constraint
//! v_s = -tau0^2 verbatim (its units do not balance; reports flag that).
struct DiffusiveFilamentSolution {
  double B0 = 0.0;
  double eta = 0.0;
  double s0 = 0.0, s1 = 0.0;
  std::function<double(double)> B_s_of_s;          // B0 exp(-eta int kappa^2)
  std::function<double(double)> B_s_literal_of_s;  // RK4 on dB/ds = -eta kappa B
  std::function<double(double)> kappa_of_s;        // kappa0 exp(eta int tau)
  double v_s_constraint = 0.0;
  double total_curvature_energy = 0.0;  // int kappa^2 ds over [s0, s1]
  double total_torsion = 0.0;           // int tau ds over [s0, s1]
};

inline DiffusiveFilamentSolution diffusive_filament_solve(double B0,
                                                          const geometry::CurveProfile& profile,
                                                          double eta, double s0, double s1) {
  if (!(B0 > 0.0)) throw std::invalid_argument("diffusive_filament_solve: B0 must be > 0");
  if (!(eta >= 0.0)) throw std::invalid_argument("diffusive_filament_solve: eta must be >= 0");
  if (!(s0 < s1) || s0 < profile.s_min() - 1e-12 || s1 > profile.s_max() + 1e-12)
    throw std::invalid_argument("diffusive_filament_solve: span outside the profile window");

  DiffusiveFilamentSolution sol;
  sol.B0 = B0;
  sol.eta = eta;
  sol.s0 = s0;
  sol.s1 = s1;
  const double kappa0 = profile.kappa(s0);
  const double tau0 = profile.tau(s0);

  sol.B_s_of_s = [B0, eta, s0, profile](double s) {
    const double energy = geometry::total_curvature_energy(profile, s0, s, 2048);
    return B0 * std::exp(-eta * energy);
  };
  sol.kappa_of_s = [kappa0, eta, s0, profile](double s) {
    const double twist = geometry::total_torsion(profile, s0, s, 2048);
    return kappa0 * std::exp(eta * twist);
  };
  // Literal first-power route: march dB/ds = -eta kappa(s) B with RK4.
  sol.B_s_literal_of_s = [B0, eta, s0, profile](double s) {
    if (s == s0) return B0;
    auto rhs = [eta, &profile](double x, double B) { return -eta * profile.kappa(x) * B; };
    const double span = s - s0;
    const std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(std::abs(span) / 0.005)));
    const double h = span / static_cast<double>(n);
    double B = B0, x = s0;
    for (std::size_t k = 0; k < n; ++k, x = s0 + static_cast<double>(k) * h)
      B = rk4_step(rhs, x, B, h);
    return B;
  };
  sol.v_s_constraint = -tau0 * tau0;
  sol.total_curvature_energy = geometry::total_curvature_energy(profile, s0, s1, 2048);
  sol.total_torsion = geometry::total_torsion(profile, s0, s1, 2048);
  return sol;
}

// ---------------------------------------------------------------------------
// Magnetic field bag

//! Component amplitudes plus the wave numbers of the radial-mode ansatz.
//! Use the factories: `make` validates B0, `solenoidal_mode` additionally
//! enforces the divergence-free constraint k_s = tau0 k_theta to 1e-10.
struct MagneticField {
  double B_s = 0.0, B_theta = 0.0, B_n = 0.0;
  double B0 = 0.0;
  double gamma = 0.0;
  double k_s = 0.0, k_theta = 0.0, k0 = 0.0;

  static MagneticField make(double B_s, double B_theta, double B_n, double B0, double gamma) {
    if (B0 < 0.0) throw std::invalid_argument("MagneticField: B0 must be >= 0");
    MagneticField f;
    f.B_s = B_s;
    f.B_theta = B_theta;
    f.B_n = B_n;
    f.B0 = B0;
    f.gamma = gamma;
    return f;
  }

  double solenoidal_residual(double tau0) const { return std::abs(k_s - tau0 * k_theta); }

  static MagneticField solenoidal_mode(double B0, double gamma, double tau0, double k_theta,
                                       double k_s, double k0 = 0.0) {
    MagneticField f = make(0.0, 0.0, 0.0, B0, gamma);
    f.k_s = k_s;
    f.k_theta = k_theta;
    f.k0 = k0;
    if (f.solenoidal_residual(tau0) > 1e-10)
      throw std::invalid_argument("MagneticField: solenoidal residual |k_s - tau0 k_theta| > 1e-10");
    return f;
  }
};

// ---------------------------------------------------------------------------
// Filamentary exponential-growth scenario

//! Exponentially growing filamentary mode with gamma = tau0 v0 and a uniform
//! axial strain v_s(s) = tau0 v0 s + c1. The time series samples the axis
//! origin s = 0. `a` is the section radius entering the energy scale (the
//! stated closed form carries a^2/8; see the decisions record for why it is
//! a defaulted parameter).
struct FastDynamoSeries {
  double gamma = 0.0;
  double a = 1.0;
  bool weak_torsion = false;
  std::vector<double> t;
  std::vector<MagneticField> fields;
  std::vector<double> eps_M;
  std::function<double(double)> v_s;  // of s
};

inline FastDynamoSeries euclidean_fast_dynamo(double B0, double tau0, double v0, double c1,
                                              double t0, double t1, std::size_t n_samples,
                                              bool weak_torsion, double a = 1.0) {
  if (v0 == 0.0) throw std::invalid_argument("euclidean_fast_dynamo: v0 = 0 breaks the B_n branch");
  if (!(B0 >= 0.0)) throw std::invalid_argument("euclidean_fast_dynamo: B0 must be >= 0");
  if (!(a > 0.0)) throw std::invalid_argument("euclidean_fast_dynamo: a must be > 0");
  if (n_samples < 2 || !(t0 < t1))
    throw std::invalid_argument("euclidean_fast_dynamo: need t0 < t1 and at least 2 samples");

  const double gamma = tau0 * v0;
  if (weak_torsion && gamma == 0.0)
    throw marginal_case_error("euclidean_fast_dynamo: gamma = 0 divides the weak-torsion branch");

  FastDynamoSeries out;
  out.gamma = gamma;
  out.a = a;
  out.weak_torsion = weak_torsion;
  out.v_s = [gamma, c1](double s) { return gamma * s + c1; };

  const double dt = (t1 - t0) / static_cast<double>(n_samples - 1);
  const double energy_scale = (a * a / 8.0) * B0 * B0 * (1.0 + (c1 / v0) * (c1 / v0));
  out.t.reserve(n_samples);
  out.fields.reserve(n_samples);
  out.eps_M.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const double grow = std::exp(gamma * t);
    const double B_s = B0 * grow;
    // general branch evaluates (v_s - tau0)/v0 at s = 0; the weak-torsion
    // branch is the stated tau0 c1 B0/gamma closed form
    const double B_n = weak_torsion ? (tau0 * c1 * B0 / gamma) * grow
                                    : ((out.v_s(0.0) - tau0) / v0) * grow;
    out.t.push_back(t);
    out.fields.push_back(MagneticField::make(B_s, 0.0, B_n, B0, gamma));
    out.eps_M.push_back(energy_scale * std::exp(2.0 * gamma * t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Helical-device (heliotron) balance

//! Inputs of the helical-device balance equations. gamma here is the
//! dimensionless growth factor of the (gamma U_max / L) scaling; rate()
//! converts it to 1/s. eta() is the U_max L / Re_m combination.
struct HeliotronState {
  double B_s0 = 0.0, B_theta0 = 0.0;
  double u_s = 0.0, u_theta = 0.0;
  double U_max = 1.0, L = 1.0;
  double Re_m = 210.0;
  double gamma = 0.0;
  double tau0 = 1.0;
  double a = 1.0;
  int m = 1;
  double theta_R = 0.0;

  void validate() const {
    if (!(L > 0.0) || !(U_max > 0.0) || !(Re_m > 0.0) || !(a > 0.0))
      throw std::invalid_argument("HeliotronState: need L, U_max, Re_m, a > 0");
    if (tau0 == 0.0) throw std::invalid_argument("HeliotronState: tau0 = 0 (beta carries 1/tau0)");
  }

  double eta() const { return U_max * L / Re_m; }
  double rate() const { return gamma * U_max / L; }
  //! beta = B_s0/K - B_theta0/(tau0 r)
  double beta(double r, double K) const { return B_s0 / K - B_theta0 / (tau0 * r); }
};

//! LHS - RHS of the three balance equations at one section point. The third
//! equation carries an explicit imaginary part, tracked separately; the
//! poloidal balance contains csc(theta) and is honestly infinite where the
//! flow does not cancel it at sin(theta) = 0.
struct HeliotronResidual {
  double axial = 0.0;
  double poloidal = 0.0;
  std::complex<double> poloidal_alt;
  double beta = 0.0;
};

inline HeliotronResidual heliotron_system_residual(const HeliotronState& st, double theta,
                                                   double r, double K) {
  st.validate();
  if (!(r > 0.0)) throw std::invalid_argument("heliotron_system_residual: r must be > 0");
  if (K == 0.0) throw std::invalid_argument("heliotron_system_residual: K = 0");

  const double lhs_scale = st.gamma * st.U_max / st.L;
  const double beta = st.beta(r, K);
  const double sin_t = std::sin(theta);
  const double tan_t = std::tan(theta);

  HeliotronResidual res;
  res.beta = beta;
  res.axial = lhs_scale * st.B_s0 -
              (st.B_theta0 * st.tau0 * sin_t + st.u_theta * st.tau0 * sin_t * beta);
  res.poloidal = lhs_scale * st.B_theta0 -
                 (st.B_s0 * st.tau0 + beta * st.u_theta * st.tau0 * tan_t +
                  st.u_s * st.tau0 / sin_t);
  const double alt_re = lhs_scale * st.B_theta0 - (-beta * st.u_theta * st.tau0 * tan_t);
  const double alt_im = -(st.u_s / K - st.u_theta / (st.tau0 * r));
  res.poloidal_alt = {alt_re, alt_im};
  return res;
}

//! Torsion at which the device supports no growing mode:
//! tau0 = (2 pi / a)(theta_R - 2 pi m). Dimensionally lopsided as stated;
//! reports carry the warning.
inline double heliotron_nondynamo_torsion(double a, double theta_R, int m) {
  if (!(a > 0.0)) throw std::invalid_argument("heliotron_nondynamo_torsion: a must be > 0");
  const double two_pi = 2.0 * std::acos(-1.0);
  return (two_pi / a) * (theta_R - two_pi * static_cast<double>(m));
}

// ---------------------------------------------------------------------------
// Diffusive radial modes

enum class RadialModeSource {
  oracle_quadratic,   // roots of n^2 + 3n + (2 - gamma/eta) = 0
  stated_exponents,   // n = -3/2 +/- (7/2)(1 - gamma/(14 eta)) as published
  stated_rates,       // gamma_+ = 4(n_+ - 2) eta, gamma_- = -4(n_- + 5) eta
};

struct RadialModeResult {
  double n_plus = 0.0, n_minus = 0.0;
  std::optional<double> gamma_plus, gamma_minus;
  RadialModeSource source = RadialModeSource::oracle_quadratic;
};

//! Solves the radial-mode exponent problem three ways and tags each result.
//! The quadratic oracle and the stated exponents disagree (gap 3 at
//! gamma = 0); that gap is the audit, not a bug. For gamma/eta < -1/4 the
//! oracle roots go complex and are reported as NaN (outside the audit range).
inline std::array<RadialModeResult, 3> radial_mode_solve(double eta, double gamma) {
  if (eta == 0.0)
    throw diffusionless_limit_error("radial_mode_solve: eta = 0 makes gamma/eta undefined");
  if (!(eta > 0.0)) throw std::invalid_argument("radial_mode_solve: eta must be > 0");

  std::array<RadialModeResult, 3> out;

  const double disc = 1.0 + 4.0 * gamma / eta;  // 9 - 4(2 - gamma/eta)
  RadialModeResult oracle;
  oracle.source = RadialModeSource::oracle_quadratic;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    oracle.n_plus = (-3.0 + root) / 2.0;
    oracle.n_minus = (-3.0 - root) / 2.0;
  } else {
    oracle.n_plus = std::nan("");
    oracle.n_minus = std::nan("");
  }
  out[0] = oracle;

  RadialModeResult stated;
  stated.source = RadialModeSource::stated_exponents;
  const double swing = 3.5 * (1.0 - gamma / (14.0 * eta));
  stated.n_plus = -1.5 + swing;
  stated.n_minus = -1.5 - swing;
  out[1] = stated;

  RadialModeResult rates;
  rates.source = RadialModeSource::stated_rates;
  rates.n_plus = stated.n_plus;
  rates.n_minus = stated.n_minus;
  rates.gamma_plus = 4.0 * (stated.n_plus - 2.0) * eta;
  rates.gamma_minus = -4.0 * (stated.n_minus + 5.0) * eta;
  out[2] = rates;

  return out;
}

//! Marginal radial profiles at the stated marginal exponents: B ~ r^2
//! (regular at the axis) and B ~ r^-5 (singular).
struct MarginalMode {
  double exponent;
  std::function<double(double)> B_of_r;
};

inline std::array<MarginalMode, 2> marginal_radial_fields() {
  return {MarginalMode{2.0, [](double r) { return r * r; }},
          MarginalMode{-5.0, [](double r) { return std::pow(r, -5.0); }}};
}

//! Audit evaluator for the radial-mode balance before the wave-number
//! substitution: residual = gamma B0 - eta [B0'' + tau0 cos(theta) B0'
//!   - (1 - 1/(tau0^2 r^2)) (k_s - tau0 k_theta)^2 B0
//!   + i (k_s - tau0 k_theta) (sin(theta)/r) B0].
//! Derivatives of the profile come from central differences with step h.
template <class F>
std::complex<double> radial_mode_balance_residual(const F& B0_of_r, double r, double theta,
                                                  double gamma, double eta, double tau0,
                                                  double k_s, double k_theta, double h) {
  if (!(r > 0.0) || !(h > 0.0) || !(r > h))
    throw std::invalid_argument("radial_mode_balance_residual: need 0 < h < r");
  if (tau0 == 0.0) throw std::invalid_argument("radial_mode_balance_residual: tau0 = 0");
  const double B = B0_of_r(r);
  const double Bp = (B0_of_r(r + h) - B0_of_r(r - h)) / (2.0 * h);
  const double Bpp = (B0_of_r(r + h) - 2.0 * B + B0_of_r(r - h)) / (h * h);
  const double kdiff = k_s - tau0 * k_theta;
  const double re_rhs =
      eta * (Bpp + tau0 * std::cos(theta) * Bp -
             (1.0 - 1.0 / (tau0 * tau0 * r * r)) * kdiff * kdiff * B);
  const double im_rhs = eta * kdiff * (std::sin(theta) / r) * B;
  return {gamma * B - re_rhs, -im_rhs};
}

//! The same balance after the divergence-free wave-number substitution (all
//! k-terms cancel): residual = B0'' - (gamma/eta) B0.
template <class F>
double radial_profile_residual(const F& B0_of_r, double r, double gamma, double eta, double h) {
  if (!(r > 0.0) || !(h > 0.0) || !(r > h))
    throw std::invalid_argument("radial_profile_residual: need 0 < h < r");
  if (eta == 0.0) throw diffusionless_limit_error("radial_profile_residual: eta = 0");
  const double B = B0_of_r(r);
  const double Bpp = (B0_of_r(r + h) - 2.0 * B + B0_of_r(r - h)) / (h * h);
  return Bpp - (gamma / eta) * B;
}

// ---------------------------------------------------------------------------
// Anosov-flow growth rate

//! Growth rate on a geodesic Anosov flow of (Gaussian) curvature kappa:
//!   gamma = (1/2) [ -eta (1 + kappa^2) + sqrt(eta^2 (1 - kappa^2)^2 - 4 kappa) ].
//! Negative radicand yields the complex pair; `oscillatory` flags it so the
//! classifier knows to read the real part.
struct AnosovGrowth {
  std::complex<double> gamma;
  bool oscillatory = false;
};

inline AnosovGrowth chicone_latushkin_gamma(double eta, double kappa) {
  const double damp = eta * (1.0 + kappa * kappa);
  const double one_minus = 1.0 - kappa * kappa;
  const double radicand = eta * eta * one_minus * one_minus - 4.0 * kappa;
  if (radicand >= 0.0) return {{0.5 * (-damp + std::sqrt(radicand)), 0.0}, false};
  return {{-0.5 * damp, 0.5 * std::sqrt(-radicand)}, true};
}

}  // namespace tubedyn::induction
