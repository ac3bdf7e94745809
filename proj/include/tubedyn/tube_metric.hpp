#pragma once
//! \file tube_metric.hpp
//! \brief Metric of a twisted circular flux tube and its curvature audit.
//!
//! Coordinates are (r, theta, s): radial distance from the axis, poloidal
//! angle in the frame that co-rotates with the accumulated torsion
//! (theta = theta_R - integral of tau ds, which removes the cross terms),
//! and arclength along the axis. In these coordinates the line element is
//! diagonal,
//!     ds^2 = dr^2 + r^2 dtheta^2 + K^2 ds^2,   K = 1 - kappa r cos(theta).
//!
//! Three closed-form expressions for the mixed radial-axial curvature
//! component and two for the poloidal-axial one circulate in the derivation
//! this toolkit audits, alongside a thin-tube limit. They do not agree with
//! each other. This header evaluates every variant verbatim and provides an
//! independent finite-difference curvature oracle so the disagreements can
//! be measured instead of argued about. Nothing here adjudicates: the report
//! module pairs each variant with the oracle and prints the gaps.
//!
//! Oracle numerics: Christoffel symbols and their derivatives are assembled
//! from direct first/second central-difference stencils of the metric (the
//! derivative of the inverse metric uses d(g^-1) = -g^-1 dg g^-1). Nested
//! first differences would lose ~6 digits at the default step; the direct
//! stencils keep the roundoff floor near 1e-9 at h ~ 3e-4.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "tubedyn/geometry.hpp"

namespace tubedyn::tube_metric {

//! K(r, theta) = 1 - kappa r cos(theta). Equals 1 on the axis.
inline double metric_factor(double r, double theta, double kappa) {
  return 1.0 - kappa * r * std::cos(theta);
}

//! Default finite-difference step used by the curvature oracle.
inline double default_fd_step(double r) { return 1e-5 * std::max(r, 1.0); }

//! Tube position in the co-rotating poloidal angle.
//! from_untwisted() converts a lab angle theta_R by subtracting the twist
//! accumulated from the start of the axis window, which is what makes the
//! metric above diagonal.
struct TubeCoordinates {
  double r, theta, theta_R, s;

  TubeCoordinates(double r_, double theta_, double theta_R_, double s_)
      : r(r_), theta(theta_), theta_R(theta_R_), s(s_) {
    if (!(std::isfinite(r) && std::isfinite(theta) && std::isfinite(theta_R) && std::isfinite(s)))
      throw std::invalid_argument("TubeCoordinates: non-finite component");
    if (r < 0.0) throw std::invalid_argument("TubeCoordinates: r must be >= 0");
  }

  static TubeCoordinates from_untwisted(double r, double theta_R, double s,
                                        const geometry::CurveProfile& axis) {
    const double twist = geometry::total_torsion(axis, axis.s_min(), s);
    return TubeCoordinates(r, theta_R - twist, theta_R, s);
  }
};

//! Metric data for a tube of cross-section radius a around an axis of
//! constant curvature kappa. Valid while K > 0 across the section, i.e.
//! a < 1/|kappa|.
struct TubeMetric {
  double kappa;
  double a;

  TubeMetric(double kappa_, double a_) : kappa(kappa_), a(a_) {
    if (!(std::isfinite(kappa) && std::isfinite(a)) || a <= 0.0)
      throw std::invalid_argument("TubeMetric: need finite kappa and a > 0");
    if (kappa != 0.0 && a >= 1.0 / std::abs(kappa))
      throw std::invalid_argument("TubeMetric: K vanishes inside the section (a >= 1/|kappa|)");
  }

  double K(double r, double theta) const { return metric_factor(r, theta, kappa); }
  //! A(r, theta) = d(K^2)/dr = -2 kappa cos(theta) K.
  double A(double r, double theta) const {
    return -2.0 * kappa * std::cos(theta) * K(r, theta);
  }
  //! Diagonal of the metric: (1, r^2, K^2).
  std::array<double, 3> diag(double r, double theta) const {
    const double k = K(r, theta);
    return {1.0, r * r, k * k};
  }
};

enum class CurvatureSource {
  closed_form_1,
  closed_form_2,
  closed_form_3,
  thin_tube_limit,
  finite_difference,
};

//! One curvature reading: the mixed radial-axial component R_rsrs and, where
//! the variant states one, the poloidal-axial component R_{theta s theta s}.
struct CurvatureComponents {
  double R_rsrs;
  std::optional<double> R_thetas;
  CurvatureSource source;
};

//! The three closed-form variants, evaluated verbatim.
//!   1: R_rsrs = -(1/4K^2) (2 K^2 dA/dr - A^2),  R_thetas = -(r/2) A
//!   2: R_rsrs = -K^4 / (2 r^2),                 R_thetas = -K^2
//!   3: R_rsrs = -(1/2) r^2 kappa^4 cos^2(theta)
//! with A = d(K^2)/dr. Values are finite for 0 < r < 1/|kappa|; variant 2
//! carries 1/r^2, so r = 0 is rejected.
inline std::array<CurvatureComponents, 3> riemann_closed_forms(double r, double theta,
                                                               double kappa) {
  if (!(std::isfinite(r) && std::isfinite(theta) && std::isfinite(kappa)))
    throw std::invalid_argument("riemann_closed_forms: non-finite input");
  if (r <= 0.0)
    throw std::invalid_argument("riemann_closed_forms: r = 0 hits the 1/r^2 variant");
  const double c = std::cos(theta);
  const double K = metric_factor(r, theta, kappa);
  const double A = -2.0 * kappa * c * K;
  const double dA_dr = 2.0 * kappa * kappa * c * c;

  const double f1 = -(2.0 * K * K * dA_dr - A * A) / (4.0 * K * K);
  const double f1_th = -(r / 2.0) * A;
  const double f2 = -(K * K * K * K) / (2.0 * r * r);
  const double f2_th = -(K * K);
  const double f3 = -0.5 * r * r * kappa * kappa * kappa * kappa * c * c;

  return {CurvatureComponents{f1, f1_th, CurvatureSource::closed_form_1},
          CurvatureComponents{f2, f2_th, CurvatureSource::closed_form_2},
          CurvatureComponents{f3, std::nullopt, CurvatureSource::closed_form_3}};
}

//! Thin-tube limit of the radial-axial component: -1/r^2.
inline CurvatureComponents riemann_thin_tube(double r) {
  if (!(r > 0.0)) throw std::domain_error("riemann_thin_tube: singular at the tube axis");
  return {-1.0 / (r * r), std::nullopt, CurvatureSource::thin_tube_limit};
}

namespace detail {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 metric_at(double kappa, double r, double theta) {
  const double K = metric_factor(r, theta, kappa);
  Mat3 g{};
  g[0][0] = 1.0;
  g[1][1] = r * r;
  g[2][2] = K * K;
  return g;
}

inline Mat3 inverse(const Mat3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det == 0.0) throw std::domain_error("riemann oracle: metric not invertible");
  Mat3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

}  // namespace detail

//! Fully lowered curvature tensor R_{abcd}, indices 0 = r, 1 = theta, 2 = s.
struct RiemannTensor {
  std::array<double, 81> v{};
  double& at(int a, int b, int c, int d) { return v[static_cast<std::size_t>(((a * 3 + b) * 3 + c) * 3 + d)]; }
  double at(int a, int b, int c, int d) const {
    return v[static_cast<std::size_t>(((a * 3 + b) * 3 + c) * 3 + d)];
  }
};

//! Finite-difference curvature oracle: builds R_{abcd} at (r, theta) from the
//! metric alone. h is the differencing step in every coordinate; callers
//! trading truncation against roundoff pass their own (see file comment).
//! Requires r > h so the radial stencil stays inside the chart.
inline RiemannTensor riemann_tensor_fd(double kappa, double r, double theta, double h) {
  if (!(h > 0.0) || !(r > h))
    throw std::invalid_argument("riemann_tensor_fd: need 0 < h < r");

  using detail::Mat3;
  const std::array<double, 3> x0{r, theta, 0.0};
  auto g_at = [kappa](const std::array<double, 3>& x) {
    return detail::metric_at(kappa, x[0], x[1]);
  };

  const Mat3 g0 = g_at(x0);
  const Mat3 ginv = detail::inverse(g0);

  // First and second derivatives of the metric by central stencils.
  std::array<Mat3, 3> dg{};
  std::array<std::array<Mat3, 3>, 3> ddg{};
  for (int c = 0; c < 3; ++c) {
    auto xp = x0, xm = x0;
    xp[static_cast<std::size_t>(c)] += h;
    xm[static_cast<std::size_t>(c)] -= h;
    const Mat3 gp = g_at(xp), gm = g_at(xm);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        dg[static_cast<std::size_t>(c)][i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
        ddg[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)][i][j] =
            (gp[i][j] - 2.0 * g0[i][j] + gm[i][j]) / (h * h);
      }
  }
  for (int b = 0; b < 3; ++b)
    for (int c = b + 1; c < 3; ++c) {
      auto xpp = x0, xpm = x0, xmp = x0, xmm = x0;
      xpp[static_cast<std::size_t>(b)] += h;
      xpp[static_cast<std::size_t>(c)] += h;
      xpm[static_cast<std::size_t>(b)] += h;
      xpm[static_cast<std::size_t>(c)] -= h;
      xmp[static_cast<std::size_t>(b)] -= h;
      xmp[static_cast<std::size_t>(c)] += h;
      xmm[static_cast<std::size_t>(b)] -= h;
      xmm[static_cast<std::size_t>(c)] -= h;
      const Mat3 gpp = g_at(xpp), gpm = g_at(xpm), gmp = g_at(xmp), gmm = g_at(xmm);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double m = (gpp[i][j] - gpm[i][j] - gmp[i][j] + gmm[i][j]) / (4.0 * h * h);
          ddg[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)][i][j] = m;
          ddg[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)][i][j] = m;
        }
    }

  // d(g^-1)/dx^c = -g^-1 (dg/dx^c) g^-1
  std::array<Mat3, 3> dginv{};
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q)
            acc -= ginv[i][p] * dg[static_cast<std::size_t>(c)][p][q] * ginv[q][j];
        dginv[static_cast<std::size_t>(c)][i][j] = acc;
      }

  // Gamma^a_{bc} and d(Gamma^a_{bc})/dx^d, with the product rule split over
  // the inverse-metric factor and the bracket of metric derivatives.
  double Gamma[3][3][3];
  double dGamma[3][3][3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s0 = 0.0;
        for (int e = 0; e < 3; ++e) {
          const double bracket = dg[static_cast<std::size_t>(b)][e][c] +
                                 dg[static_cast<std::size_t>(c)][b][e] -
                                 dg[static_cast<std::size_t>(e)][b][c];
          s0 += ginv[a][e] * bracket;
        }
        Gamma[a][b][c] = 0.5 * s0;
        for (int d = 0; d < 3; ++d) {
          double sd = 0.0;
          for (int e = 0; e < 3; ++e) {
            const double bracket = dg[static_cast<std::size_t>(b)][e][c] +
                                   dg[static_cast<std::size_t>(c)][b][e] -
                                   dg[static_cast<std::size_t>(e)][b][c];
            const double dbracket = ddg[static_cast<std::size_t>(d)][static_cast<std::size_t>(b)][e][c] +
                                    ddg[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)][b][e] -
                                    ddg[static_cast<std::size_t>(d)][static_cast<std::size_t>(e)][b][c];
            sd += dginv[static_cast<std::size_t>(d)][a][e] * bracket + ginv[a][e] * dbracket;
          }
          dGamma[a][b][c][d] = 0.5 * sd;
        }
      }

  // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{ce} Gamma^e_{db}
  //           - Gamma^a_{de} Gamma^e_{cb}, then lower the first index.
  RiemannTensor R;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double up = dGamma[a][d][b][c] - dGamma[a][c][b][d];
          for (int e = 0; e < 3; ++e)
            up += Gamma[a][c][e] * Gamma[e][d][b] - Gamma[a][d][e] * Gamma[e][c][b];
          // stash the raised-index value, lower after the loop
          R.at(a, b, c, d) = up;
        }
  RiemannTensor lowered;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double acc = 0.0;
          for (int e = 0; e < 3; ++e) acc += g0[a][e] * R.at(e, b, c, d);
          lowered.at(a, b, c, d) = acc;
        }
  return lowered;
}

//! Oracle reading of the two audited components.
inline CurvatureComponents riemann_oracle(double kappa, double r, double theta, double h) {
  const RiemannTensor R = riemann_tensor_fd(kappa, r, theta, h);
  return {R.at(0, 2, 0, 2), R.at(1, 2, 1, 2), CurvatureSource::finite_difference};
}

inline CurvatureComponents riemann_oracle(double kappa, double r, double theta) {
  return riemann_oracle(kappa, r, theta, default_fd_step(r));
}

//! Rotation between the tube section basis (e_r, e_theta) and the frame
//! normal/binormal pair: e_r = cos(theta) n + sin(theta) b,
//! e_theta = -sin(theta) n + cos(theta) b.
struct BasisTransform {
  double er_n, er_b, etheta_n, etheta_b;

  //! (a_n, a_b) -> (a_r, a_theta)
  std::array<double, 2> to_tube(double a_n, double a_b) const {
    return {er_n * a_n + er_b * a_b, etheta_n * a_n + etheta_b * a_b};
  }
  //! (a_r, a_theta) -> (a_n, a_b); the rotation's inverse is its transpose.
  std::array<double, 2> to_frame(double a_r, double a_theta) const {
    return {er_n * a_r + etheta_n * a_theta, er_b * a_r + etheta_b * a_theta};
  }
};

inline BasisTransform basis_transform(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, s, -s, c};
}

}  // namespace tubedyn::tube_metric
