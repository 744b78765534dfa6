#include "povindex/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "povindex/errors.hpp"

namespace povindex {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one CSV record; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_record(std::string_view line, char delim) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string join_lines(const std::vector<std::size_t>& lines) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(lines.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += std::to_string(lines[i]);
  }
  if (lines.size() > shown) out += ", ... (" + std::to_string(lines.size()) + " total)";
  return out;
}

std::string fmt6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

std::string fmt_full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

CsvIngest parse_csv(std::string_view text, const std::string& column, char delimiter) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty() || trim(lines[0]).empty()) {
    throw Error(ErrorCode::kMissingColumn, "CSV input has no header row");
  }

  const std::vector<std::string> header = split_record(lines[0], delimiter);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == trim(column)) {
      col = i;
      break;
    }
  }
  if (col == header.size()) {
    std::size_t number = 0;
    const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), number);
    if (ec == std::errc() && ptr == column.data() + column.size() && number >= 1 &&
        number <= header.size()) {
      col = number - 1;
    } else {
      throw Error(ErrorCode::kMissingColumn, "column '" + column + "' not found in header");
    }
  }

  std::vector<double> values;
  std::vector<std::size_t> malformed;
  std::vector<std::size_t> negative;
  std::size_t total = 0;
  std::size_t dropped = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++total;
    const std::size_t line_no = i + 1;
    const std::vector<std::string> fields = split_record(lines[i], delimiter);
    const std::string_view cell = col < fields.size() ? trim(fields[col]) : std::string_view{};
    if (cell.empty()) {
      ++dropped;
      continue;
    }
    double v = 0.0;
    const char* begin = cell.data();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      malformed.push_back(line_no);
      continue;
    }
    if (v < 0.0) {
      negative.push_back(line_no);
      continue;
    }
    values.push_back(v);
  }
  if (!malformed.empty()) {
    throw Error(ErrorCode::kMalformedNumber,
                "unparseable income on line(s) " + join_lines(malformed));
  }
  if (!negative.empty()) {
    throw Error(ErrorCode::kNegativeIncome,
                "negative income on line(s) " + join_lines(negative));
  }
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewObservations,
                "need at least 2 incomes, parsed " + std::to_string(values.size()));
  }
  const std::size_t parsed = values.size();
  return CsvIngest{IncomeSample(std::move(values)), total, parsed, dropped};
}

CsvIngest ingest_csv(const std::string& path, const std::string& column, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), column, delimiter);
}

void AnalysisConfig::validate() const {
  if (!(poverty_line > 0.0) || !std::isfinite(poverty_line)) {
    throw Error(ErrorCode::kInvalidArgument, "poverty line must be given and > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  if (indices.empty()) throw Error(ErrorCode::kInvalidArgument, "no index selected");
}

AnalysisReport analyze(const IncomeSample& sample, const AnalysisConfig& config) {
  config.validate();
  const PovertyLine z(config.poverty_line);
  AnalysisReport report;
  report.input = config.input;
  report.column = config.column;
  report.n = sample.size();
  report.poverty_line = config.poverty_line;
  report.alpha = config.alpha;

  const PoorPartition part = poor_partition(sample, z);
  report.q = part.q;
  report.headcount = part.headcount;
  if (part.q >= 1) report.income_gap_ratio = income_gap_ratio(part, z);
  if (part.q >= 2 && part.mean_poor && *part.mean_poor > 0.0) {
    report.gini_poor = gini_among_poor(sample, z);
  }

  for (IndexKind kind : config.indices) {
    for (EstimatorMethod m : config.methods) {
      const IndexEstimate e = estimate(sample, z, kind, m);
      report.estimates.push_back({kind, m, e.value, e.no_poor});
    }
  }
  for (IndexKind kind : config.indices) {
    for (CiMethod m : config.intervals) {
      const ConfidenceInterval ci = confidence_interval(sample, z, kind, m, config.alpha);
      IntervalEntry entry;
      entry.index = kind;
      entry.method = m;
      entry.center_method = interval_center_method(m);
      entry.center = ci.center;
      entry.lower = ci.lower;
      entry.upper = ci.upper;
      entry.level = ci.level;
      entry.evaluations = ci.diagnostics.evaluations;
      entry.bracket_expansions = ci.diagnostics.bracket_expansions;
      entry.infeasible_endpoints = ci.diagnostics.infeasible_endpoints;
      entry.truncated = ci.diagnostics.truncated;
      report.intervals.push_back(entry);
    }
  }
  if (config.timestamp) report.generated_at = utc_timestamp();
  return report;
}

AnalysisReport cmd_estimate(const AnalysisConfig& config) {
  config.validate();
  CsvIngest data = ingest_csv(config.input, config.column, config.delimiter);
  AnalysisReport report = analyze(data.sample, config);
  report.rows_total = data.rows_total;
  report.rows_parsed = data.rows_parsed;
  report.rows_dropped_empty = data.rows_dropped_empty;
  return report;
}

void to_json(nlohmann::json& j, const AnalysisReport& r) {
  using nlohmann::json;
  json estimates = json::array();
  for (const auto& e : r.estimates) {
    estimates.push_back({{"index", index_kind_name(e.index)},
                         {"method", estimator_method_name(e.method)},
                         {"value", e.value},
                         {"no_poor", e.no_poor}});
  }
  json intervals = json::array();
  for (const auto& c : r.intervals) {
    intervals.push_back({{"index", index_kind_name(c.index)},
                         {"method", ci_method_name(c.method)},
                         {"center_method", estimator_method_name(c.center_method)},
                         {"center", c.center},
                         {"lower", c.lower},
                         {"upper", c.upper},
                         {"level", c.level},
                         {"diagnostics",
                          {{"evaluations", c.evaluations},
                           {"bracket_expansions", c.bracket_expansions},
                           {"infeasible_endpoints", c.infeasible_endpoints},
                           {"truncated", c.truncated}}}});
  }
  j = json{{"input", r.input},
           {"column", r.column},
           {"rows", {{"total", r.rows_total},
                     {"parsed", r.rows_parsed},
                     {"dropped_empty", r.rows_dropped_empty}}},
           {"n", r.n},
           {"q", r.q},
           {"poverty_line", r.poverty_line},
           {"alpha", r.alpha},
           {"headcount", r.headcount},
           {"income_gap_ratio", r.income_gap_ratio ? json(*r.income_gap_ratio) : json(nullptr)},
           {"gini_poor", r.gini_poor ? json(*r.gini_poor) : json(nullptr)},
           {"estimates", estimates},
           {"intervals", intervals}};
  if (r.generated_at) j["generated_at"] = *r.generated_at;
}

void from_json(const nlohmann::json& j, AnalysisReport& r) {
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  r = AnalysisReport{};
  r.input = j.at("input").get<std::string>();
  r.column = j.at("column").get<std::string>();
  r.rows_total = j.at("rows").at("total").get<std::size_t>();
  r.rows_parsed = j.at("rows").at("parsed").get<std::size_t>();
  r.rows_dropped_empty = j.at("rows").at("dropped_empty").get<std::size_t>();
  r.n = j.at("n").get<std::size_t>();
  r.q = j.at("q").get<std::size_t>();
  r.poverty_line = j.at("poverty_line").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.headcount = j.at("headcount").get<double>();
  r.income_gap_ratio = opt("income_gap_ratio");
  r.gini_poor = opt("gini_poor");
  for (const auto& e : j.at("estimates")) {
    r.estimates.push_back({parse_index_kind(e.at("index").get<std::string>()),
                           parse_estimator_method(e.at("method").get<std::string>()),
                           e.at("value").get<double>(), e.at("no_poor").get<bool>()});
  }
  for (const auto& c : j.at("intervals")) {
    IntervalEntry entry;
    entry.index = parse_index_kind(c.at("index").get<std::string>());
    entry.method = parse_ci_method(c.at("method").get<std::string>());
    entry.center_method = parse_estimator_method(c.at("center_method").get<std::string>());
    entry.center = c.at("center").get<double>();
    entry.lower = c.at("lower").get<double>();
    entry.upper = c.at("upper").get<double>();
    entry.level = c.at("level").get<double>();
    const auto& d = c.at("diagnostics");
    entry.evaluations = d.at("evaluations").get<int>();
    entry.bracket_expansions = d.at("bracket_expansions").get<int>();
    entry.infeasible_endpoints = d.at("infeasible_endpoints").get<bool>();
    entry.truncated = d.at("truncated").get<bool>();
    r.intervals.push_back(entry);
  }
  if (j.contains("generated_at")) r.generated_at = j.at("generated_at").get<std::string>();
}

std::string report_json(const AnalysisReport& report) {
  return nlohmann::json(report).dump(2) + "\n";
}

std::string report_csv(const AnalysisReport& report) {
  std::ostringstream os;
  os << "index,method,n,q,estimate,ci_method,lower,upper,alpha,flags\n";
  for (const auto& e : report.estimates) {
    os << index_kind_name(e.index) << ',' << estimator_method_name(e.method) << ','
       << report.n << ',' << report.q << ',' << fmt_full(e.value) << ",none,,,"
       << fmt_full(report.alpha) << ',' << (e.no_poor ? "no_poor" : "") << '\n';
  }
  for (const auto& c : report.intervals) {
    std::string flags;
    if (c.infeasible_endpoints) flags += "infeasible_endpoint";
    if (c.truncated) flags += flags.empty() ? "truncated" : ";truncated";
    os << index_kind_name(c.index) << ',' << estimator_method_name(c.center_method) << ','
       << report.n << ',' << report.q << ',' << fmt_full(c.center) << ','
       << ci_method_name(c.method) << ',' << fmt_full(c.lower) << ',' << fmt_full(c.upper)
       << ',' << fmt_full(report.alpha) << ',' << flags << '\n';
  }
  return os.str();
}

std::string report_text(const AnalysisReport& report) {
  std::ostringstream os;
  os << "input:          " << report.input << " [" << report.column << "]\n";
  os << "observations:   n = " << report.n << ", poor q = " << report.q
     << " (z = " << fmt6(report.poverty_line) << ")\n";
  os << "headcount:      " << fmt6(report.headcount) << "\n";
  os << "income gap:     "
     << (report.income_gap_ratio ? fmt6(*report.income_gap_ratio) : std::string("n/a")) << "\n";
  os << "gini (poor):    " << (report.gini_poor ? fmt6(*report.gini_poor) : std::string("n/a"))
     << "\n";
  if (!report.estimates.empty()) {
    os << "\nestimates\n";
    for (const auto& e : report.estimates) {
      os << "  " << std::left << std::setw(5) << index_kind_name(e.index) << std::setw(10)
         << estimator_method_name(e.method) << fmt6(e.value)
         << (e.no_poor ? "  (no poor observations)" : "") << "\n";
    }
  }
  if (!report.intervals.empty()) {
    os << "\nconfidence intervals (level " << fmt6(1.0 - report.alpha) << ")\n";
    for (const auto& c : report.intervals) {
      os << "  " << std::left << std::setw(5) << index_kind_name(c.index) << std::setw(8)
         << ci_method_name(c.method) << "[" << fmt6(c.lower) << ", " << fmt6(c.upper)
         << "]  around " << estimator_method_name(c.center_method) << " " << fmt6(c.center);
      if (c.infeasible_endpoints) os << "  (endpoint at feasibility edge)";
      if (c.truncated) os << "  (truncated)";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace povindex
