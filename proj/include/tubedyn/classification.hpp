#pragma once
//! \file classification.hpp
//! \brief Fast/slow/marginal/decaying labels for growth-rate curves.
//!
//! A dynamo is "fast" when the growth rate survives the vanishing-diffusivity
//! limit and "slow" when it dies with it. That limit statement becomes
//! testable here: fit the smallest-eta half of a sampled gamma(eta) curve
//! with a least-squares line, read the intercept as the eta -> 0 estimate,
//! and compare against an explicit tolerance. The intercept's standard error
//! rides along so callers can see how much the extrapolation is worth.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tubedyn::classification {

enum class DynamoLabel { fast, slow, marginal, decaying };

inline const char* to_string(DynamoLabel label) {
  switch (label) {
    case DynamoLabel::fast: return "fast";
    case DynamoLabel::slow: return "slow";
    case DynamoLabel::marginal: return "marginal";
    case DynamoLabel::decaying: return "decaying";
  }
  return "unknown";
}

//! Extrapolation evidence: the fitted intercept of gamma at eta = 0, a 95%
//! half width from the intercept's standard error (zero when the fit is an
//! exact two-point line), the fitted slope, and how many of the smallest-eta
//! samples entered the fit.
struct LimitEvidence {
  double limit = 0.0;
  double ci_halfwidth = 0.0;
  double slope = 0.0;
  std::size_t fit_count = 0;
};

struct DynamoClass {
  DynamoLabel label = DynamoLabel::decaying;
  LimitEvidence evidence;
  bool oscillatory = false;
};

//! A sampled gamma(eta) curve. Samples are (eta, gamma) pairs with eta
//! strictly decreasing toward zero, all positive, at least three of them.
//! `provenance` names the scenario that produced the curve. Complex-valued
//! curves enter through `from_complex`, which keeps the real parts and marks
//! the curve oscillatory when any imaginary part is nonzero.
class GrowthCurve {
 public:
  GrowthCurve(std::vector<std::pair<double, double>> samples, std::string provenance)
      : samples_(std::move(samples)), provenance_(std::move(provenance)) {
    if (samples_.size() < 3)
      throw std::invalid_argument("GrowthCurve: need at least 3 (eta, gamma) samples");
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& [eta, gamma] : samples_) {
      if (!std::isfinite(eta) || !std::isfinite(gamma))
        throw std::invalid_argument("GrowthCurve: non-finite sample");
      if (!(eta > 0.0)) throw std::invalid_argument("GrowthCurve: eta must be > 0");
      if (!(eta < prev))
        throw std::invalid_argument("GrowthCurve: eta must be strictly decreasing");
      prev = eta;
    }
  }

  static GrowthCurve from_complex(
      const std::vector<std::pair<double, std::complex<double>>>& samples,
      std::string provenance) {
    std::vector<std::pair<double, double>> real_parts;
    real_parts.reserve(samples.size());
    bool oscillatory = false;
    for (const auto& [eta, gamma] : samples) {
      if (gamma.imag() != 0.0) oscillatory = true;
      real_parts.emplace_back(eta, gamma.real());
    }
    GrowthCurve curve(std::move(real_parts), std::move(provenance));
    curve.oscillatory_ = oscillatory;
    return curve;
  }

  const std::vector<std::pair<double, double>>& samples() const { return samples_; }
  const std::string& provenance() const { return provenance_; }
  bool oscillatory() const { return oscillatory_; }

 private:
  std::vector<std::pair<double, double>> samples_;
  std::string provenance_;
  bool oscillatory_ = false;
};

//! Least-squares line through the smallest-eta half of the curve (the back
//! half of the sample list; majority half for odd counts). The intercept is
//! the eta -> 0 estimate. The 95% half width uses the normal approximation
//! 1.96 * stderr(intercept) with the usual unbiased residual variance; an
//! exact two-point fit has no residual degrees of freedom and reports zero.
inline LimitEvidence fit_limit(const GrowthCurve& curve) {
  const auto& all = curve.samples();
  const std::size_t n = all.size();
  const std::size_t m = (n + 1) / 2;
  const std::size_t first = n - m;

  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    x_mean += all[i].first;
    y_mean += all[i].second;
  }
  x_mean /= static_cast<double>(m);
  y_mean /= static_cast<double>(m);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    const double dx = all[i].first - x_mean;
    sxx += dx * dx;
    sxy += dx * (all[i].second - y_mean);
  }
  // eta values are strictly decreasing, hence distinct, hence sxx > 0
  const double slope = sxy / sxx;
  const double intercept = y_mean - slope * x_mean;

  double ci = 0.0;
  if (m > 2) {
    double sse = 0.0;
    for (std::size_t i = first; i < n; ++i) {
      const double e = all[i].second - (intercept + slope * all[i].first);
      sse += e * e;
    }
    const double var = (sse / static_cast<double>(m - 2)) *
                       (1.0 / static_cast<double>(m) + x_mean * x_mean / sxx);
    ci = 1.96 * std::sqrt(std::max(var, 0.0));
  }
  return {intercept, ci, slope, m};
}

//! Decision rule, checked in this order:
//!   limit >  tol                  -> fast
//!   limit < -tol                  -> decaying
//!   all |gamma| <= tol            -> marginal
//!   some gamma > tol              -> slow (grows at finite eta, dies in the limit)
//!   otherwise                     -> decaying (negative at finite eta, limit ~ 0)
//! The final bucket covers curves the first four rules leave unlabeled; they
//! lose field at every sampled diffusivity, so they land with the decayers.
inline DynamoClass classify(const GrowthCurve& curve, double tol = 1e-9) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be > 0");

  DynamoClass out;
  out.evidence = fit_limit(curve);
  out.oscillatory = curve.oscillatory();

  bool all_small = true, any_positive = false;
  for (const auto& [eta, gamma] : curve.samples()) {
    (void)eta;
    if (std::abs(gamma) > tol) all_small = false;
    if (gamma > tol) any_positive = true;
  }

  if (out.evidence.limit > tol)
    out.label = DynamoLabel::fast;
  else if (out.evidence.limit < -tol)
    out.label = DynamoLabel::decaying;
  else if (all_small)
    out.label = DynamoLabel::marginal;
  else if (any_positive)
    out.label = DynamoLabel::slow;
  else
    out.label = DynamoLabel::decaying;
  return out;
}

}  // namespace tubedyn::classification
