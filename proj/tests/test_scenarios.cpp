// Scenario engine: sweeps, row tables, error cells, label column, and the
// discrepancy report. Hand values used below:
//  * stretch row at tau0 0.5, v0 2, v_theta 1, a 0.1, kappa0 1, r 0.5,
//    theta pi/6: v_n = -sin(pi/6) = -0.5, filament and tube rates both 0.5,
//    twist exponent 1/(2*0.5*0.1) = 10, binormal gamma 1, omega_r =
//    -0.25*0.5*0.5*1 = -0.0625, omega_s = (cos(pi/6)/0.5)*0.5*1 = cos(pi/6).
//  * chicone at eta = 0: gamma = (1/2) sqrt(-4 kappa) for kappa <= 0.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <variant>

#include "tubedyn/scenarios.hpp"

using namespace tubedyn;
using namespace tubedyn::scenarios;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

std::size_t col(const emit::Table& t, const std::string& name) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == name) return c;
  throw std::runtime_error("no column " + name);
}

double num(const emit::Table& t, std::size_t row, const std::string& name) {
  return std::get<double>(t.rows.at(row).at(col(t, name)));
}

std::string str(const emit::Table& t, std::size_t row, const std::string& name) {
  return std::get<std::string>(t.rows.at(row).at(col(t, name)));
}

ScenarioResult run_text(const std::string& text, unsigned jobs = 1, double tol = 1e-9) {
  return run_scenario(config::parse_config(text), jobs, tol);
}

}  // namespace

TEST_CASE("radial sweep keeps the oracle-vs-stated gap in every row", "[scenarios]") {
  const auto res = run_text(
      "[radial_modes]\n"
      "eta = 1\n"
      "gamma = 0\n"
      "sweep_key = eta\n"
      "sweep_start = 1e-1\n"
      "sweep_stop = 1e-6\n"
      "sweep_count = 11\n"
      "sweep_scale = log\n");
  REQUIRE(res.exit_code() == 0);
  REQUIRE(res.table.rows.size() == 11);
  for (std::size_t i = 0; i < 11; ++i) {
    REQUIRE(num(res.table, i, "row") == static_cast<double>(i));
    REQUIRE(num(res.table, i, "oracle_n_plus") == -1.0);
    REQUIRE(num(res.table, i, "oracle_n_minus") == -2.0);
    REQUIRE(num(res.table, i, "stated_n_plus") == 2.0);
    REQUIRE(num(res.table, i, "stated_n_minus") == -5.0);
    REQUIRE(num(res.table, i, "gap_plus") == Approx(3.0));
    REQUIRE(num(res.table, i, "gap_minus") == Approx(3.0));
    REQUIRE(num(res.table, i, "quadratic_residual") <= 1e-12);
    REQUIRE(str(res.table, i, "status") == "ok");
    // stated plus exponent is exactly marginal at gamma = 0
    REQUIRE(str(res.table, i, "dynamo_class") == "marginal");
    REQUIRE(str(res.table, i, "sources") ==
            "oracle_quadratic|stated_exponents|stated_rates");
  }
}

TEST_CASE("ideal growth column on the curvature interval", "[scenarios]") {
  const auto res = run_text(
      "[chicone_latushkin]\n"
      "eta = 0\n"
      "kappa = 0\n"
      "sweep_key = kappa\n"
      "sweep_start = -2\n"
      "sweep_stop = 0\n"
      "sweep_count = 5\n");
  REQUIRE(res.exit_code() == 0);
  REQUIRE(res.table.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    const double kappa = num(res.table, i, "kappa");
    REQUIRE(num(res.table, i, "gamma_re") == Approx(0.5 * std::sqrt(-4.0 * kappa)).margin(1e-14));
    REQUIRE(num(res.table, i, "gamma_im") == 0.0);
    REQUIRE(num(res.table, i, "oscillatory") == 0.0);
    const std::string expected = kappa < 0.0 ? "fast" : "marginal";
    REQUIRE(str(res.table, i, "dynamo_class") == expected);
  }
  REQUIRE(num(res.table, 4, "gamma_re") == 0.0);  // kappa = 0 endpoint, exact
}

TEST_CASE("positive curvature probes decay with an oscillatory tag", "[scenarios]") {
  const auto res = run_text(
      "[chicone_latushkin]\n"
      "eta = 0.1\n"
      "kappa = 1\n");
  REQUIRE(res.table.rows.size() == 1);
  REQUIRE(num(res.table, 0, "oscillatory") == 1.0);
  REQUIRE(str(res.table, 0, "dynamo_class") == "decaying+oscillatory");
}

TEST_CASE("frozen filament row at zero diffusivity", "[scenarios]") {
  const auto res = run_text(
      "[diffusive_filament]\n"
      "eta = 0\n"
      "kappa0 = 1\n"
      "kappa_wobble = 0.1\n"
      "tau0 = 1\n"
      "L = 20\n"
      "B0 = 2\n");
  REQUIRE(res.exit_code() == 0);
  REQUIRE(res.table.rows.size() == 1);
  REQUIRE(num(res.table, 0, "B_end_squared") == 2.0);  // exactly B0
  REQUIRE(num(res.table, 0, "B_end_first_power") == 2.0);
  REQUIRE(num(res.table, 0, "gamma") == 0.0);
  REQUIRE(str(res.table, 0, "status") == "ok");
  // the scenario's own gamma(eta) relation decays for any finite eta
  REQUIRE(str(res.table, 0, "dynamo_class") == "decaying");
}

TEST_CASE("a failing sweep cell marks its row and the run continues", "[scenarios]") {
  const auto res = run_text(
      "[radial_modes]\n"
      "eta = 1\n"
      "sweep_key = eta\n"
      "sweep_start = 0\n"
      "sweep_stop = 0.1\n"
      "sweep_count = 3\n");
  REQUIRE(res.exit_code() == 3);
  REQUIRE(res.rows_failed == 1);
  REQUIRE(res.table.rows.size() == 3);
  REQUIRE_THAT(str(res.table, 0, "status"), ContainsSubstring("error:"));
  REQUIRE_THAT(str(res.table, 0, "status"), ContainsSubstring("eta"));
  // failed payload cells are empty text
  REQUIRE(std::get<std::string>(res.table.rows[0][col(res.table, "oracle_n_plus")]).empty());
  REQUIRE(str(res.table, 1, "status") == "ok");
  REQUIRE(str(res.table, 2, "status") == "ok");
  REQUIRE(num(res.table, 2, "eta") == Approx(0.1));
}

TEST_CASE("row values and bytes do not depend on the thread count", "[scenarios]") {
  const std::string cfg =
      "[radial_modes]\n"
      "eta = 1\n"
      "gamma = 0.3\n"
      "sweep_key = eta\n"
      "sweep_start = 1e-4\n"
      "sweep_stop = 1e-1\n"
      "sweep_count = 17\n"
      "sweep_scale = log\n";
  const auto once = run_text(cfg, 1);
  const auto parallel = run_text(cfg, 4);
  const auto again = run_text(cfg, 4);
  REQUIRE(emit::to_csv(once.table) == emit::to_csv(parallel.table));
  REQUIRE(emit::to_csv(parallel.table) == emit::to_csv(again.table));
  REQUIRE(emit::to_json(once.table) == emit::to_json(parallel.table));
}

TEST_CASE("curvature audit default grid", "[scenarios]") {
  const auto res = run_text("[curvature_report]\nkappa = 0.1\n", 2);
  REQUIRE(res.exit_code() == 0);
  REQUIRE(res.table.rows.size() == 40);  // 5 radii x 8 angles
  for (const auto& name : res.table.columns) REQUIRE(name != "dynamo_class");
  for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
    REQUIRE(str(res.table, i, "status") == "ok");
    // the first variant's terms cancel; it tracks the flat oracle
    REQUIRE(num(res.table, i, "gap_axial_1") <= 1e-7);
    // the second variant is a genuine disagreement everywhere on the grid
    REQUIRE(num(res.table, i, "gap_axial_2") > 1e-3);
    REQUIRE(num(res.table, i, "oracle_axial") == Approx(0.0).margin(1e-7));
  }
  REQUIRE(num(res.table, 0, "r") == Approx(0.1));
  REQUIRE(num(res.table, 39, "r") == Approx(0.9));
  REQUIRE(num(res.table, 39, "theta") == Approx(2.0 * std::acos(-1.0) * 7.0 / 8.0));
}

TEST_CASE("curvature audit sweeps a single axis", "[scenarios]") {
  const auto res = run_text(
      "[curvature_report]\n"
      "kappa = 0.2\n"
      "theta = 0.5\n"
      "sweep_key = r\n"
      "sweep_start = 0.2\n"
      "sweep_stop = 0.4\n"
      "sweep_count = 3\n");
  REQUIRE(res.table.rows.size() == 3);
  REQUIRE(num(res.table, 0, "r") == Approx(0.2));
  REQUIRE(num(res.table, 1, "r") == Approx(0.3));
  REQUIRE(num(res.table, 2, "r") == Approx(0.4));
  for (std::size_t i = 0; i < 3; ++i) REQUIRE(num(res.table, i, "theta") == 0.5);
}

TEST_CASE("stretch row, hand values", "[scenarios]") {
  const double pi = std::acos(-1.0);
  const auto res = run_text(
      "[stretch_analysis]\n"
      "tau0 = 0.5\n"
      "v0 = 2\n"
      "v_theta = 1\n"
      "a = 0.1\n"
      "kappa0 = 1\n"
      "r = 0.5\n"
      "theta = " +
      emit::format_double(pi / 6.0) + "\n");
  REQUIRE(res.exit_code() == 0);
  REQUIRE(num(res.table, 0, "filament_rate") == Approx(0.5).epsilon(1e-12));
  REQUIRE(num(res.table, 0, "tube_rate") == Approx(0.5).epsilon(1e-12));
  REQUIRE(num(res.table, 0, "twist_exponent") == Approx(10.0).epsilon(1e-12));
  REQUIRE(num(res.table, 0, "gamma") == Approx(1.0).epsilon(1e-14));
  REQUIRE(num(res.table, 0, "omega_r") == Approx(-0.0625).epsilon(1e-12));
  REQUIRE(num(res.table, 0, "omega_theta") == 0.0);
  REQUIRE(num(res.table, 0, "omega_s") == Approx(std::cos(pi / 6.0)).epsilon(1e-12));
  REQUIRE(str(res.table, 0, "dynamo_class") == "fast");
}

TEST_CASE("growing-mode series rows", "[scenarios]") {
  const auto res = run_text(
      "[euclidean_fast]\n"
      "tau0 = 0.005\n"
      "v0 = 2\n");
  REQUIRE(res.exit_code() == 0);
  REQUIRE(res.table.rows.size() == 33);  // default n_samples
  const double gamma = 0.005 * 2.0;
  for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
    REQUIRE(num(res.table, i, "gamma") == Approx(gamma).epsilon(1e-14));
    REQUIRE(str(res.table, i, "dynamo_class") == "fast");
    REQUIRE(str(res.table, i, "sources") == "general_branch");
  }
  // energy column obeys the exponential ratio law between neighboring rows
  const double dt = num(res.table, 1, "t") - num(res.table, 0, "t");
  const double law = std::exp(2.0 * gamma * dt);
  for (std::size_t i = 0; i + 1 < res.table.rows.size(); ++i)
    REQUIRE(num(res.table, i + 1, "eps_M") / num(res.table, i, "eps_M") ==
            Approx(law).epsilon(1e-10));
}

TEST_CASE("growing-mode series sweeps its time axis", "[scenarios]") {
  const auto res = run_text(
      "[euclidean_fast]\n"
      "tau0 = 0.005\n"
      "v0 = 2\n"
      "sweep_key = t\n"
      "sweep_start = 0\n"
      "sweep_stop = 100\n"
      "sweep_count = 101\n");
  REQUIRE(res.table.rows.size() == 101);
  REQUIRE(num(res.table, 0, "t") == 0.0);
  REQUIRE(num(res.table, 100, "t") == 100.0);
}

TEST_CASE("growing-mode marginal case fails the whole series honestly", "[scenarios]") {
  const auto res = run_text(
      "[euclidean_fast]\n"
      "tau0 = 0\n"
      "v0 = 2\n"
      "weak_torsion = 1\n");
  REQUIRE(res.exit_code() == 3);
  REQUIRE(res.table.rows.size() == 1);
  REQUIRE_THAT(str(res.table, 0, "status"), ContainsSubstring("error:"));
}

TEST_CASE("helical-device zero state row", "[scenarios]") {
  const auto res = run_text("[heliotron]\n");
  REQUIRE(res.exit_code() == 0);
  REQUIRE(res.table.rows.size() == 1);
  REQUIRE(num(res.table, 0, "axial_residual") == 0.0);
  REQUIRE(num(res.table, 0, "poloidal_residual") == 0.0);
  REQUIRE(num(res.table, 0, "beta") == 0.0);
  REQUIRE(num(res.table, 0, "eta") == Approx(1.0 / 210.0).epsilon(1e-14));
  REQUIRE(str(res.table, 0, "dynamo_class") == "marginal");
}

TEST_CASE("discrepancy report covers every audited formula exactly once", "[report]") {
  const auto rep = report::build_report();
  const std::vector<std::string> expected = {
      "curvature-axial-variant-1",  "curvature-axial-variant-2",
      "curvature-axial-variant-3",  "curvature-poloidal-variant-1",
      "curvature-poloidal-variant-2", "curvature-thin-tube-limit",
      "filament-decay-two-routes",  "radial-exponent-plus",
      "radial-exponent-minus",      "radial-quadratic-residual",
      "energy-rate-marginal-balance", "filament-flow-torsion-units",
      "device-torsion-tuning-units"};
  REQUIRE(rep.entries.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) REQUIRE(rep.entries[i].id == expected[i]);
  // ids are unique (exactly-once coverage)
  for (std::size_t i = 0; i < rep.entries.size(); ++i)
    for (std::size_t j = i + 1; j < rep.entries.size(); ++j)
      REQUIRE(rep.entries[i].id != rep.entries[j].id);
  REQUIRE(rep.metadata.size() == 1);
  REQUIRE(rep.metadata[0].first == "device-magnetic-reynolds-number");
  REQUIRE(rep.metadata[0].second == 210.0);
}

TEST_CASE("report verdicts at the default audit point", "[report]") {
  const auto rep = report::build_report();
  using report::Verdict;
  auto verdict = [&](const char* id) { return rep.find(id)->verdict; };
  REQUIRE(verdict("curvature-axial-variant-1") == Verdict::consistent);
  REQUIRE(verdict("curvature-axial-variant-2") == Verdict::inconsistent);
  REQUIRE(verdict("curvature-axial-variant-3") == Verdict::inconsistent);
  REQUIRE(verdict("curvature-poloidal-variant-1") == Verdict::inconsistent);
  REQUIRE(verdict("curvature-poloidal-variant-2") == Verdict::inconsistent);
  REQUIRE(verdict("curvature-thin-tube-limit") == Verdict::inconsistent);
  REQUIRE(verdict("filament-decay-two-routes") == Verdict::inconsistent);
  REQUIRE(verdict("radial-exponent-plus") == Verdict::inconsistent);
  REQUIRE(verdict("radial-exponent-minus") == Verdict::inconsistent);
  REQUIRE(verdict("radial-quadratic-residual") == Verdict::consistent);
  REQUIRE(verdict("energy-rate-marginal-balance") == Verdict::consistent);
  REQUIRE(verdict("filament-flow-torsion-units") == Verdict::dimensional_warning);
  REQUIRE(verdict("device-torsion-tuning-units") == Verdict::dimensional_warning);

  REQUIRE(rep.find("radial-exponent-plus")->abs_gap == Approx(3.0));
  REQUIRE(rep.find("radial-exponent-minus")->abs_gap == Approx(3.0));
  REQUIRE(rep.find("energy-rate-marginal-balance")->stated == 0.0);  // exact cancellation
  REQUIRE(rep.find("curvature-axial-variant-1")->abs_gap <= 1e-8);
  REQUIRE(rep.find("no-such-entry") == nullptr);
}

TEST_CASE("report parameterizes from the config", "[report]") {
  const auto radial = run_report(config::parse_config("[radial_modes]\neta = 0.2\ngamma = 0.28\n"));
  // stated exponents at gamma/eta = 1.4: swing 3.15, n+ = 1.65
  REQUIRE(radial.find("radial-exponent-plus")->stated == Approx(1.65).epsilon(1e-12));
  const auto curved = run_report(
      config::parse_config("[curvature_report]\nkappa = 0.3\nr = 0.25\ntheta = 0\n"));
  // second stated axial component -K^4/(2 r^2) at K = 1 - 0.3*0.25
  const double K = 1.0 - 0.3 * 0.25;
  REQUIRE(curved.find("curvature-axial-variant-2")->stated ==
          Approx(-std::pow(K, 4.0) / (2.0 * 0.25 * 0.25)).epsilon(1e-12));
  REQUIRE_THROWS_AS(run_report(config::parse_config("[heliotron]\n")),
                    config::config_error);
}

TEST_CASE("report table serializes entries plus metadata", "[report]") {
  const auto table = report::build_report().to_table();
  REQUIRE(table.columns.size() == 8);
  REQUIRE(table.rows.size() == 14);  // 13 entries + 1 metadata row
  const std::string csv = emit::to_csv(table);
  REQUIRE_THAT(csv, ContainsSubstring("dimensional_warning"));
  REQUIRE_THAT(csv, ContainsSubstring("device-magnetic-reynolds-number,210,"));
}
