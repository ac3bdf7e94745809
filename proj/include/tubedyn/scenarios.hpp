#pragma once
//! \file scenarios.hpp
//! \brief Batch scenario engine: parameter sweeps, row tables, labels.
//!
//! Each scenario maps a resolved parameter set to one table row. Sweeps
//! produce one row per sweep value; rows compute independently (optionally
//! across threads) and always land in sweep order. A row that throws keeps
//! the run alive: its result cells are left empty and its status cell
//! records "error:<reason>".
//!
//! The dynamo_class column extrapolates each scenario's own growth-rate vs
//! diffusivity relation, holding the row's remaining inputs fixed: the
//! classifier sees an internal probe curve over eta in [1e-6, 1e-1] and
//! labels its vanishing-diffusivity limit. The curvature audit rows have no
//! growth rate and therefore no class column.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tubedyn/classification.hpp"
#include "tubedyn/config.hpp"
#include "tubedyn/emit.hpp"
#include "tubedyn/flows.hpp"
#include "tubedyn/geometry.hpp"
#include "tubedyn/induction.hpp"
#include "tubedyn/report.hpp"
#include "tubedyn/tube_metric.hpp"

namespace tubedyn::scenarios {

using Params = std::map<std::string, double>;

struct ScenarioResult {
  emit::Table table;
  std::size_t rows_failed = 0;
  int exit_code() const { return rows_failed == 0 ? 0 : 3; }
};

namespace detail {

//! Internal eta grid for the limit probe: 1e-1 down to 1e-6, log spaced,
//! strictly decreasing as the classifier requires.
inline const std::vector<double>& probe_etas() {
  static const std::vector<double> etas = [] {
    std::vector<double> v;
    for (int k = 0; k <= 10; ++k) v.push_back(std::pow(10.0, -1.0 - 0.5 * k));
    return v;
  }();
  return etas;
}

template <class F>
std::string classify_by_probe(const F& gamma_of_eta, const char* provenance, double tol) {
  std::vector<std::pair<double, double>> samples;
  for (double e : probe_etas()) samples.emplace_back(e, gamma_of_eta(e));
  const auto dc =
      classification::classify(classification::GrowthCurve(std::move(samples), provenance), tol);
  std::string label = classification::to_string(dc.label);
  if (dc.oscillatory) label += "+oscillatory";
  return label;
}

inline std::string classify_constant(double gamma, const char* provenance, double tol) {
  return classify_by_probe([gamma](double) { return gamma; }, provenance, tol);
}

inline double at(const Params& p, const char* key) { return p.at(key); }

// ---------------------------------------------------------------------------
// Per-scenario column lists (between the leading "row" and trailing "status")
// and row payloads.

inline std::vector<std::string> payload_columns(config::Scenario s) {
  using config::Scenario;
  switch (s) {
    case Scenario::diffusive_filament:
      return {"B0",           "eta",        "kappa0",       "kappa_wobble",
              "tau0",         "L",          "gamma",        "B_end_squared",
              "B_end_first_power", "route_gap_abs", "route_gap_rel", "curvature_energy",
              "total_torsion", "axial_flow_constraint", "sources", "dynamo_class"};
    case Scenario::euclidean_fast:
      return {"t",  "B_s", "B_n",          "eps_M",   "gamma",       "tau0",
              "v0", "c1",  "a",            "weak_torsion", "sources", "dynamo_class"};
    case Scenario::heliotron:
      return {"r",        "theta",   "K",     "B_s0",  "B_theta0", "u_s",
              "u_theta",  "tau0",    "gamma", "U_max", "L",        "Re_m",
              "a",        "m",       "theta_R", "eta", "rate",     "beta",
              "axial_residual", "poloidal_residual", "alt_residual_re", "alt_residual_im",
              "nondynamo_tau0", "sources", "dynamo_class"};
    case Scenario::radial_modes:
      return {"eta",          "gamma",          "oracle_n_plus",  "oracle_n_minus",
              "stated_n_plus", "stated_n_minus", "stated_rate_plus", "stated_rate_minus",
              "gap_plus",     "gap_minus",      "quadratic_residual", "sources",
              "dynamo_class"};
    case Scenario::chicone_latushkin:
      return {"eta", "kappa", "gamma_re", "gamma_im", "oscillatory", "sources", "dynamo_class"};
    case Scenario::curvature_report:
      return {"r",
              "theta",
              "kappa",
              "K",
              "axial_variant_1",
              "axial_variant_2",
              "axial_variant_3",
              "poloidal_variant_1",
              "poloidal_variant_2",
              "thin_tube",
              "oracle_axial",
              "oracle_poloidal",
              "gap_axial_1",
              "gap_axial_2",
              "gap_axial_3",
              "sources"};
    case Scenario::stretch_analysis:
      return {"kappa0", "tau0",          "r",          "theta",      "v_theta",
              "v_s_prime", "dv_theta_dr", "omega0",    "v0",         "a",
              "filament_rate", "tube_rate", "twist_exponent", "gamma", "omega_r",
              "omega_theta", "omega_s",   "sources",   "dynamo_class"};
  }
  throw std::logic_error("payload_columns: unreachable");
}

inline std::vector<emit::Cell> diffusive_filament_cells(const Params& p, double tol) {
  const double B0 = at(p, "B0"), eta = at(p, "eta"), kappa0 = at(p, "kappa0");
  const double wobble = at(p, "kappa_wobble"), tau0 = at(p, "tau0"), L = at(p, "L");
  if (!(L > 0.0)) throw std::invalid_argument("diffusive_filament: L must be > 0");
  auto profile = geometry::CurveProfile::from_functions(
      [kappa0, wobble](double s) { return kappa0 + wobble * std::sin(s); },
      [tau0](double) { return tau0; }, 0.0, L);
  const auto sol = induction::diffusive_filament_solve(B0, profile, eta, 0.0, L);
  const double b_sq = sol.B_s_of_s(L);
  const double b_lit = sol.B_s_literal_of_s(L);
  const double gap = std::abs(b_sq - b_lit);
  const double rel = gap == 0.0 ? 0.0 : gap / std::max({std::abs(b_sq), std::abs(b_lit), 1e-300});
  const double energy = sol.total_curvature_energy;
  const double gamma = -eta * energy / L;
  const std::string label = classify_by_probe(
      [energy, L](double e) { return -e * energy / L; }, "diffusive_filament", tol);
  return {B0,     eta,  kappa0, wobble, tau0,
          L,      gamma, b_sq,   b_lit,  gap,
          rel,    energy, sol.total_torsion, sol.v_s_constraint,
          std::string("squared_route|first_power_route"), label};
}

inline std::vector<emit::Cell> heliotron_cells(const Params& p, double tol) {
  induction::HeliotronState st;
  st.B_s0 = at(p, "B_s0");
  st.B_theta0 = at(p, "B_theta0");
  st.u_s = at(p, "u_s");
  st.u_theta = at(p, "u_theta");
  st.gamma = at(p, "gamma");
  st.tau0 = at(p, "tau0");
  st.U_max = at(p, "U_max");
  st.L = at(p, "L");
  st.Re_m = at(p, "Re_m");
  st.a = at(p, "a");
  st.m = static_cast<int>(at(p, "m"));
  st.theta_R = at(p, "theta_R");
  const double r = at(p, "r"), theta = at(p, "theta"), K = at(p, "K");
  const auto res = induction::heliotron_system_residual(st, theta, r, K);
  const double nondynamo = induction::heliotron_nondynamo_torsion(st.a, st.theta_R, st.m);
  const std::string label = classify_constant(st.rate(), "heliotron", tol);
  return {r,
          theta,
          K,
          st.B_s0,
          st.B_theta0,
          st.u_s,
          st.u_theta,
          st.tau0,
          st.gamma,
          st.U_max,
          st.L,
          st.Re_m,
          st.a,
          static_cast<double>(st.m),
          st.theta_R,
          st.eta(),
          st.rate(),
          res.beta,
          res.axial,
          res.poloidal,
          res.poloidal_alt.real(),
          res.poloidal_alt.imag(),
          nondynamo,
          std::string("balance_residuals"),
          label};
}

inline std::vector<emit::Cell> radial_modes_cells(const Params& p, double tol) {
  const double eta = at(p, "eta"), gamma = at(p, "gamma");
  const auto sets = induction::radial_mode_solve(eta, gamma);
  const double ratio = gamma / eta;
  auto quadratic = [ratio](double n) { return n * n + 3.0 * n + (2.0 - ratio); };
  const double residual = std::max(std::abs(quadratic(sets[0].n_plus)),
                                   std::abs(quadratic(sets[0].n_minus)));
  const double n_plus_stated = sets[1].n_plus;
  const std::string label = classify_by_probe(
      [n_plus_stated](double e) { return 4.0 * (n_plus_stated - 2.0) * e; }, "radial_modes",
      tol);
  return {eta,
          gamma,
          sets[0].n_plus,
          sets[0].n_minus,
          sets[1].n_plus,
          sets[1].n_minus,
          sets[2].gamma_plus.value_or(std::nan("")),
          sets[2].gamma_minus.value_or(std::nan("")),
          std::abs(sets[0].n_plus - sets[1].n_plus),
          std::abs(sets[0].n_minus - sets[1].n_minus),
          residual,
          std::string("oracle_quadratic|stated_exponents|stated_rates"),
          label};
}

inline std::vector<emit::Cell> chicone_cells(const Params& p, double tol) {
  const double eta = at(p, "eta"), kappa = at(p, "kappa");
  const auto g = induction::chicone_latushkin_gamma(eta, kappa);
  std::vector<std::pair<double, std::complex<double>>> samples;
  for (double e : probe_etas())
    samples.emplace_back(e, induction::chicone_latushkin_gamma(e, kappa).gamma);
  const auto dc = classification::classify(
      classification::GrowthCurve::from_complex(samples, "chicone_latushkin"), tol);
  std::string label = classification::to_string(dc.label);
  if (dc.oscillatory) label += "+oscillatory";
  return {eta,
          kappa,
          g.gamma.real(),
          g.gamma.imag(),
          g.oscillatory ? 1.0 : 0.0,
          std::string("growth_rate_closed_form"),
          label};
}

inline std::vector<emit::Cell> curvature_cells(const Params& p, double /*tol*/) {
  const double r = at(p, "r"), theta = at(p, "theta"), kappa = at(p, "kappa");
  const auto forms = tube_metric::riemann_closed_forms(r, theta, kappa);
  const auto thin = tube_metric::riemann_thin_tube(r);
  const double h = 3e-4 * std::max(r, 1.0);
  const auto oracle = tube_metric::riemann_oracle(kappa, r, theta, h);
  return {r,
          theta,
          kappa,
          tube_metric::metric_factor(r, theta, kappa),
          forms[0].R_rsrs,
          forms[1].R_rsrs,
          forms[2].R_rsrs,
          *forms[0].R_thetas,
          *forms[1].R_thetas,
          thin.R_rsrs,
          oracle.R_rsrs,
          *oracle.R_thetas,
          std::abs(forms[0].R_rsrs - oracle.R_rsrs),
          std::abs(forms[1].R_rsrs - oracle.R_rsrs),
          std::abs(forms[2].R_rsrs - oracle.R_rsrs),
          std::string("closed_forms|finite_difference")};
}

inline std::vector<emit::Cell> stretch_cells(const Params& p, double tol) {
  const double kappa0 = at(p, "kappa0"), tau0 = at(p, "tau0"), r = at(p, "r");
  const double theta = at(p, "theta"), v_theta = at(p, "v_theta");
  const double v_s_prime = at(p, "v_s_prime"), dv_theta_dr = at(p, "dv_theta_dr");
  const double omega0 = at(p, "omega0"), v0 = at(p, "v0"), a = at(p, "a");
  const double v_n = flows::v_n_from_poloidal(v_theta, theta);
  const double filament_rate = flows::stretch_rate_filament(kappa0, v_n, v_s_prime);
  const double tube_rate = flows::stretch_rate_tube(kappa0, v_theta, theta, v_s_prime);
  const double exponent = flows::tube_stretch_exponent(v_theta, v0, tau0, a);
  const double gamma = flows::binormal_flow_gamma(tau0, v0);
  const auto w = flows::vorticity_components(tau0, r, theta, v_theta, dv_theta_dr, omega0);
  const std::string label = classify_constant(gamma, "stretch_analysis", tol);
  return {kappa0,        tau0,      r,        theta,   v_theta, v_s_prime,
          dv_theta_dr,   omega0,    v0,       a,       filament_rate, tube_rate,
          exponent,      gamma,     w.omega_r, w.omega_theta, w.omega_s,
          std::string("flow_algebra"), label};
}

inline std::vector<emit::Cell> compute_cells(config::Scenario s, const Params& p, double tol) {
  using config::Scenario;
  switch (s) {
    case Scenario::diffusive_filament: return diffusive_filament_cells(p, tol);
    case Scenario::heliotron: return heliotron_cells(p, tol);
    case Scenario::radial_modes: return radial_modes_cells(p, tol);
    case Scenario::chicone_latushkin: return chicone_cells(p, tol);
    case Scenario::curvature_report: return curvature_cells(p, tol);
    case Scenario::stretch_analysis: return stretch_cells(p, tol);
    case Scenario::euclidean_fast: break;  // handled by the series path
  }
  throw std::logic_error("compute_cells: unreachable");
}

//! Resolved parameter sets, one per row, in output order.
inline std::vector<Params> plan_rows(const config::ScenarioConfig& cfg) {
  std::vector<Params> rows;
  if (cfg.sweep) {
    rows.reserve(cfg.sweep->count);
    for (std::size_t i = 0; i < cfg.sweep->count; ++i) {
      Params p = cfg.parameters;
      p[cfg.sweep->key] = cfg.sweep->value_at(i);
      rows.push_back(std::move(p));
    }
    return rows;
  }
  if (cfg.scenario == config::Scenario::curvature_report) {
    // default section grid over (r, theta); explicit r/theta only matter
    // when sweeping
    const double a = cfg.parameters.at("a");
    const auto nr = static_cast<std::size_t>(std::max(1.0, cfg.parameters.at("grid_r_count")));
    const auto nt =
        static_cast<std::size_t>(std::max(1.0, cfg.parameters.at("grid_theta_count")));
    const double two_pi = 2.0 * std::acos(-1.0);
    rows.reserve(nr * nt);
    for (std::size_t i = 0; i < nr; ++i) {
      const double frac =
          nr == 1 ? 0.5 : 0.1 + 0.8 * static_cast<double>(i) / static_cast<double>(nr - 1);
      for (std::size_t j = 0; j < nt; ++j) {
        Params p = cfg.parameters;
        p["r"] = frac * a;
        p["theta"] = two_pi * static_cast<double>(j) / static_cast<double>(nt);
        rows.push_back(std::move(p));
      }
    }
    return rows;
  }
  rows.push_back(cfg.parameters);
  return rows;
}

//! The growing-mode scenario emits its time series as the row set.
inline ScenarioResult run_fast_series(const config::ScenarioConfig& cfg, double tol) {
  ScenarioResult out;
  out.table.columns.push_back("row");
  for (auto& c : payload_columns(config::Scenario::euclidean_fast))
    out.table.columns.push_back(c);
  out.table.columns.push_back("status");

  const Params& p = cfg.parameters;
  double t0 = p.at("t0"), t1 = p.at("t1");
  auto n = static_cast<std::size_t>(p.at("n_samples"));
  if (cfg.sweep) {
    t0 = cfg.sweep->start;
    t1 = cfg.sweep->stop;
    n = cfg.sweep->count;
  }
  const bool weak = p.at("weak_torsion") != 0.0;
  try {
    const auto series = induction::euclidean_fast_dynamo(p.at("B0"), p.at("tau0"), p.at("v0"),
                                                         p.at("c1"), t0, t1, n, weak, p.at("a"));
    const std::string label =
        detail::classify_constant(series.gamma, "euclidean_fast", tol);
    const std::string sources = weak ? "weak_torsion_branch" : "general_branch";
    for (std::size_t i = 0; i < series.t.size(); ++i) {
      out.table.rows.push_back({static_cast<double>(i), series.t[i], series.fields[i].B_s,
                                series.fields[i].B_n, series.eps_M[i], series.gamma,
                                p.at("tau0"), p.at("v0"), p.at("c1"), p.at("a"),
                                weak ? 1.0 : 0.0, sources, label, std::string("ok")});
    }
  } catch (const std::exception& ex) {
    std::vector<emit::Cell> row{0.0};
    for (std::size_t c = 1; c + 1 < out.table.columns.size(); ++c)
      row.emplace_back(std::string());
    row.emplace_back(std::string("error:") + ex.what());
    out.table.rows.push_back(std::move(row));
    out.rows_failed = 1;
  }
  return out;
}

}  // namespace detail

//! Runs a scenario config to a result table. `jobs` threads compute sweep
//! rows in parallel (0 means use the hardware count); row order and cell
//! values do not depend on the thread count. `tol` feeds the classifier
//! behind the dynamo_class column.
inline ScenarioResult run_scenario(const config::ScenarioConfig& cfg, unsigned jobs = 1,
                                   double tol = 1e-9) {
  if (cfg.scenario == config::Scenario::euclidean_fast)
    return detail::run_fast_series(cfg, tol);

  ScenarioResult out;
  out.table.columns.push_back("row");
  for (auto& c : detail::payload_columns(cfg.scenario)) out.table.columns.push_back(c);
  out.table.columns.push_back("status");

  const auto plans = detail::plan_rows(cfg);
  const std::size_t n = plans.size();
  const std::size_t payload = out.table.columns.size() - 2;
  std::vector<std::vector<emit::Cell>> cells(n);
  std::vector<std::string> errors(n);

  auto compute_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        cells[i] = detail::compute_cells(cfg.scenario, plans[i], tol);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };

  unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n == 0 ? 1 : n));
  if (workers <= 1) {
    compute_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = std::min<std::size_t>(w * chunk, n);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, n);
      if (lo < hi) pool.emplace_back(compute_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<emit::Cell> row{static_cast<double>(i)};
    if (errors[i].empty()) {
      for (auto& c : cells[i]) row.push_back(std::move(c));
      row.emplace_back(std::string("ok"));
    } else {
      for (std::size_t c = 0; c < payload; ++c) row.emplace_back(std::string());
      row.emplace_back(std::string("error:") + errors[i]);
      ++out.rows_failed;
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

//! Builds the discrepancy report for a curvature_report or radial_modes
//! config, seeding the audit point from the config's parameters.
inline report::DiscrepancyReport run_report(const config::ScenarioConfig& cfg) {
  report::ReportInputs in;
  if (cfg.scenario == config::Scenario::curvature_report) {
    in.kappa = cfg.parameters.at("kappa");
    in.r = cfg.parameters.at("r");
    in.theta = cfg.parameters.at("theta");
  } else if (cfg.scenario == config::Scenario::radial_modes) {
    in.eta = cfg.parameters.at("eta");
    in.gamma = cfg.parameters.at("gamma");
  } else {
    throw config::config_error(
        "report needs a curvature_report or radial_modes config, got scenario '" +
        std::string(config::to_string(cfg.scenario)) + "'");
  }
  return report::build_report(in);
}

}  // namespace tubedyn::scenarios
