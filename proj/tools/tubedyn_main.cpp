// Command-line front end. Two subcommands:
//   run <config>     execute a scenario (single row or sweep) and emit a table
//   report <config>  audit published curvature/mode formulas against oracles
// Exit codes: 0 success, 2 bad config, 3 run finished with failed rows.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tubedyn/scenarios.hpp"

namespace {

int write_table(const tubedyn::emit::Table& table, const std::string& output_path,
                const std::string& format) {
  const std::string text =
      format == "json" ? tubedyn::emit::to_json(table) : tubedyn::emit::to_csv(table);
  if (output_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "tubedyn: cannot open output file '" << output_path << "'\n";
    return 1;
  }
  out << text;
  if (!out.good()) {
    std::cerr << "tubedyn: failed while writing '" << output_path << "'\n";
    return 1;
  }
  return 0;
}

tubedyn::config::ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tubedyn::config::config_error("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return tubedyn::config::parse_config(text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted flux tube dynamo toolkit: scenario sweeps and formula audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tubedyn 0.1.0");

  std::string config_path;
  std::string output_path;
  std::string format = "csv";
  unsigned jobs = 1;
  double tolerance = 1e-9;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "scenario config file")->required();
    sub->add_option("--output", output_path, "write the table here instead of stdout");
    sub->add_option("--format", format, "table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--jobs", jobs, "worker threads for sweep rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tolerance", tolerance, "growth-rate classification tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  CLI::App* run_cmd = app.add_subcommand("run", "execute a scenario and emit a row table");
  CLI::App* report_cmd =
      app.add_subcommand("report", "emit the formula discrepancy report for a config");
  add_common(run_cmd);
  add_common(report_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load_config(config_path);
    // config-file `output` and `format` keys act as defaults; flags win
    CLI::App* active = run_cmd->parsed() ? run_cmd : report_cmd;
    if (active->count("--output") == 0 && !cfg.output.empty()) output_path = cfg.output;
    if (active->count("--format") == 0) format = tubedyn::config::to_string(cfg.format);
    if (run_cmd->parsed()) {
      const auto result = tubedyn::scenarios::run_scenario(cfg, jobs, tolerance);
      if (const int io = write_table(result.table, output_path, format); io != 0) return io;
      if (result.rows_failed > 0)
        std::cerr << "tubedyn: " << result.rows_failed << " of " << result.table.rows.size()
                  << " rows failed; see the status column\n";
      return result.exit_code();
    }
    const auto rep = tubedyn::scenarios::run_report(cfg);
    return write_table(rep.to_table(), output_path, format);
  } catch (const tubedyn::config::config_error& e) {
    std::cerr << "tubedyn: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tubedyn: " << e.what() << "\n";
    return 3;
  }
}
