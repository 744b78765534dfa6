// povindex: command-line front end for Sen / SST poverty index estimation,
// EL / JEL interval inference and the Monte Carlo table driver.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "povindex/errors.hpp"
#include "povindex/io.hpp"
#include "povindex/simulation.hpp"

namespace {

using namespace povindex;

int fail(const Error& e) {
  std::cerr << "povindex: error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
  return exit_code_for(e.code());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << contents;
}

struct EstimateArgs {
  std::string input;
  std::string column = "income";
  std::string delimiter = ",";
  double poverty_line = 0.0;
  std::string index = "both";
  std::string method = "ustat";
  std::string ci = "none";
  double alpha = 0.05;
  std::string format = "text";
  std::string output;
  bool no_timestamp = false;
};

struct SimulateArgs {
  std::string config;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double z = 0.0;
  unsigned threads = 0;
  std::string out_csv;
  std::string out_json;
  std::string grid = "all";
  std::string format = "text";
};

AnalysisConfig to_config(const EstimateArgs& a) {
  AnalysisConfig c;
  c.input = a.input;
  c.column = a.column;
  if (a.delimiter.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "delimiter must be a single character");
  }
  c.delimiter = a.delimiter == "\\t" ? '\t' : a.delimiter[0];
  c.poverty_line = a.poverty_line;
  c.alpha = a.alpha;
  c.timestamp = !a.no_timestamp;

  if (a.index == "both") {
    c.indices = {IndexKind::kSen, IndexKind::kSst};
  } else {
    c.indices = {parse_index_kind(a.index)};
  }
  if (a.method == "all") {
    c.methods = {EstimatorMethod::kUStat, EstimatorMethod::kPlugIn, EstimatorMethod::kDavidson};
  } else {
    c.methods = {parse_estimator_method(a.method)};
  }
  if (a.ci == "all") {
    c.intervals = {CiMethod::kEL, CiMethod::kJEL, CiMethod::kNormal};
  } else if (a.ci != "none") {
    c.intervals = {parse_ci_method(a.ci)};
  }
  if (a.format == "json") {
    c.format = OutputFormat::kJson;
  } else if (a.format == "csv") {
    c.format = OutputFormat::kCsv;
  } else {
    c.format = OutputFormat::kText;
  }
  return c;
}

int run_estimate(const EstimateArgs& a) {
  const AnalysisConfig config = to_config(a);
  const AnalysisReport report = cmd_estimate(config);
  std::string text;
  switch (config.format) {
    case OutputFormat::kJson: text = report_json(report); break;
    case OutputFormat::kCsv: text = report_csv(report); break;
    case OutputFormat::kText: text = report_text(report); break;
  }
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_file(a.output, text);
  }
  return 0;
}

int run_simulate(const SimulateArgs& a) {
  MonteCarloConfig config = load_simulation_config(a.config);
  if (a.reps > 0) config.reps = a.reps;
  if (a.seed_set) config.seed = a.seed;
  if (a.z > 0.0) config.z = a.z;
  if (a.threads > 0) config.threads = a.threads;
  if (a.grid == "estimators") {
    config.intervals.clear();
  } else if (a.grid == "intervals") {
    config.estimators.clear();
  }
  config.validate();

  std::vector<SimulationCellReport> reports;
  if (!config.estimators.empty()) reports = run_estimator_grid(config);
  if (!config.intervals.empty()) {
    auto ci = run_ci_grid(config);
    reports.insert(reports.end(), ci.begin(), ci.end());
  }
  if (!a.out_csv.empty()) write_file(a.out_csv, simulation_csv(reports));
  if (!a.out_json.empty()) write_file(a.out_json, simulation_json(config, reports));
  if (a.format == "csv") {
    std::cout << simulation_csv(reports);
  } else if (a.format == "json") {
    std::cout << simulation_json(config, reports);
  } else {
    std::cout << simulation_text(config, reports);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sen and SST poverty index estimation with EL/JEL confidence intervals"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate indices from an income CSV");
  estimate->add_option("-i,--input", est.input, "CSV file with a header row")->required();
  estimate->add_option("-c,--column", est.column, "Column name, or 1-based column number")
      ->capture_default_str();
  estimate->add_option("-d,--delimiter", est.delimiter, "Field delimiter (\\t for tab)")
      ->capture_default_str();
  estimate->add_option("-z,--poverty-line", est.poverty_line, "Poverty line (required)")
      ->required();
  estimate->add_option("--index", est.index, "sen | sst | both")
      ->check(CLI::IsMember({"sen", "sst", "both"}))
      ->capture_default_str();
  estimate->add_option("--method", est.method, "ustat | plugin | davidson | all")
      ->check(CLI::IsMember({"ustat", "plugin", "davidson", "all"}))
      ->capture_default_str();
  estimate->add_option("--ci", est.ci, "el | jel | normal | none | all")
      ->check(CLI::IsMember({"el", "jel", "normal", "none", "all"}))
      ->capture_default_str();
  estimate->add_option("--alpha", est.alpha, "1 - confidence level")->capture_default_str();
  estimate->add_option("--format", est.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  estimate->add_option("-o,--output", est.output, "Write the report here instead of stdout");
  estimate->add_flag("--no-timestamp", est.no_timestamp, "Omit generated_at from JSON");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo grid from a config file");
  simulate->add_option("config", sim.config, "Simulation config file")->required();
  simulate->add_option("--reps", sim.reps, "Override the number of replications");
  auto* seed_opt = simulate->add_option("--seed", sim.seed, "Override the RNG seed");
  simulate->add_option("--z", sim.z, "Override the poverty line");
  simulate->add_option("--threads", sim.threads, "Worker threads (default POVINDEX_THREADS)");
  simulate->add_option("--out-csv", sim.out_csv, "Write the cell reports as CSV");
  simulate->add_option("--out-json", sim.out_json, "Write the cell reports as JSON");
  simulate->add_option("--grid", sim.grid, "all | estimators | intervals")
      ->check(CLI::IsMember({"all", "estimators", "intervals"}))
      ->capture_default_str();
  simulate->add_option("--format", sim.format, "Stdout format: text | csv | json")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  try {
    if (*estimate) return run_estimate(est);
    sim.seed_set = seed_opt->count() > 0;
    return run_simulate(sim);
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "povindex: error: " << e.what() << "\n";
    return 1;
  }
}
