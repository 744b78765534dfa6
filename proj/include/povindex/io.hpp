#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "povindex/inference.hpp"

namespace povindex {

struct CsvIngest {
  IncomeSample sample;
  std::size_t rows_total = 0;
  std::size_t rows_parsed = 0;
  std::size_t rows_dropped_empty = 0;
};

// Reads one income column from a headered CSV. `column` is a header name, or a
// 1-based column number when no header matches. Blank cells are dropped and
// counted. Errors: kIoError, kMissingColumn, kMalformedNumber and
// kNegativeIncome (both list the offending line numbers), kTooFewObservations.
CsvIngest ingest_csv(const std::string& path, const std::string& column,
                     char delimiter = ',');
CsvIngest parse_csv(std::string_view text, const std::string& column, char delimiter = ',');

enum class OutputFormat { kJson, kCsv, kText };

struct AnalysisConfig {
  std::string input;
  std::string column = "income";
  char delimiter = ',';
  double poverty_line = 0.0;
  std::vector<IndexKind> indices{IndexKind::kSen, IndexKind::kSst};
  std::vector<EstimatorMethod> methods{EstimatorMethod::kUStat};
  std::vector<CiMethod> intervals;
  double alpha = 0.05;
  OutputFormat format = OutputFormat::kText;
  bool timestamp = true;

  void validate() const;
};

struct EstimateEntry {
  IndexKind index = IndexKind::kSen;
  EstimatorMethod method = EstimatorMethod::kUStat;
  double value = 0.0;
  bool no_poor = false;

  bool operator==(const EstimateEntry&) const = default;
};

struct IntervalEntry {
  IndexKind index = IndexKind::kSen;
  CiMethod method = CiMethod::kEL;
  EstimatorMethod center_method = EstimatorMethod::kPlugIn;
  double center = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  int evaluations = 0;
  int bracket_expansions = 0;
  bool infeasible_endpoints = false;
  bool truncated = false;

  bool operator==(const IntervalEntry&) const = default;
};

struct AnalysisReport {
  std::string input;
  std::string column;
  std::size_t rows_total = 0;
  std::size_t rows_parsed = 0;
  std::size_t rows_dropped_empty = 0;
  std::size_t n = 0;
  std::size_t q = 0;
  double poverty_line = 0.0;
  double alpha = 0.05;
  double headcount = 0.0;
  std::optional<double> income_gap_ratio;
  std::optional<double> gini_poor;
  std::vector<EstimateEntry> estimates;
  std::vector<IntervalEntry> intervals;
  std::optional<std::string> generated_at;

  bool operator==(const AnalysisReport&) const = default;
};

void to_json(nlohmann::json& j, const AnalysisReport& r);
void from_json(const nlohmann::json& j, AnalysisReport& r);

// Runs the selected estimators and intervals on an already-loaded sample.
AnalysisReport analyze(const IncomeSample& sample, const AnalysisConfig& config);
// Loads config.input and analyzes it.
AnalysisReport cmd_estimate(const AnalysisConfig& config);

std::string report_json(const AnalysisReport& report);
// index,method,n,q,estimate,ci_method,lower,upper,alpha,flags
std::string report_csv(const AnalysisReport& report);
// Six decimal places.
std::string report_text(const AnalysisReport& report);

}  // namespace povindex
