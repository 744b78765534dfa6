#include "povindex/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "povindex/errors.hpp"

namespace povindex {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

Philox4x32 stream_for(const MonteCarloConfig& config, std::size_t cell, std::size_t rep) {
  return Philox4x32(config.seed, static_cast<std::uint32_t>(cell),
                    static_cast<std::uint32_t>(rep));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto tok = trim(s.substr(0, comma));
    if (!tok.empty()) out.push_back(tok);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, std::string_view key) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    throw Error(ErrorCode::kConfigError, "line " + std::to_string(line) + ": bad value '" +
                                             std::string(tok) + "' for " + std::string(key));
  }
  return v;
}

std::pair<std::string_view, std::string_view> split_tag(std::string_view tok, std::size_t line) {
  const auto colon = tok.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kConfigError, "line " + std::to_string(line) +
                                             ": expected index:method, got '" +
                                             std::string(tok) + "'");
  }
  return {trim(tok.substr(0, colon)), trim(tok.substr(colon + 1))};
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("POVINDEX_THREADS")) {
    unsigned cap = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && cap > 0) return cap;
  }
  return hw;
}

void MonteCarloConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); };
  if (reps < 1) fail("reps must be >= 1");
  if (!(z > 0.0)) fail("z must be set and > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (n_grid.empty()) fail("n_grid must list at least one sample size");
  for (std::size_t n : n_grid) {
    if (n < 3) fail("sample sizes must be >= 3");
  }
  if (distributions.empty()) fail("at least one distribution is required");
  if (estimators.empty() && intervals.empty()) fail("no estimators or intervals selected");
}

MonteCarloConfig parse_simulation_config(std::string_view text) {
  MonteCarloConfig cfg;
  bool have_reps = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "name") {
        cfg.name = std::string(value);
      } else if (key == "reps") {
        cfg.reps = parse_number<std::size_t>(value, line_no, key);
        have_reps = true;
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, line_no, key);
      } else if (key == "z") {
        cfg.z = parse_number<double>(value, line_no, key);
      } else if (key == "alpha") {
        cfg.alpha = parse_number<double>(value, line_no, key);
      } else if (key == "n_grid") {
        for (auto tok : split_list(value)) {
          cfg.n_grid.push_back(parse_number<std::size_t>(tok, line_no, key));
        }
      } else if (key == "distribution") {
        cfg.distributions.push_back(DistributionSpec::parse(value));
      } else if (key == "estimators") {
        for (auto tok : split_list(value)) {
          const auto [idx, m] = split_tag(tok, line_no);
          cfg.estimators.emplace_back(parse_index_kind(idx), parse_estimator_method(m));
        }
      } else if (key == "intervals") {
        for (auto tok : split_list(value)) {
          const auto [idx, m] = split_tag(tok, line_no);
          cfg.intervals.emplace_back(parse_index_kind(idx), parse_ci_method(m));
        }
      } else {
        throw Error(ErrorCode::kConfigError, "unknown key '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      const std::string msg = e.what();
      throw Error(ErrorCode::kConfigError,
                  msg.rfind("line ", 0) == 0 ? msg : "line " + std::to_string(line_no) + ": " + msg);
    }
  }
  if (!have_reps) cfg.reps = 10000;
  cfg.validate();
  return cfg;
}

MonteCarloConfig load_simulation_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_simulation_config(buf.str());
}

std::vector<SimulationCellReport> run_estimator_grid(const MonteCarloConfig& config) {
  config.validate();
  const PovertyLine z(config.z);
  const unsigned threads = resolve_thread_count(config.threads);
  const std::size_t k = config.estimators.size();
  std::vector<SimulationCellReport> out;

  for (std::size_t d = 0; d < config.distributions.size(); ++d) {
    const DistributionSpec& dist = config.distributions[d];
    std::vector<double> truth(k);
    for (std::size_t e = 0; e < k; ++e) {
      truth[e] = true_index(dist, config.z, config.estimators[e].first);
    }
    for (std::size_t j = 0; j < config.n_grid.size(); ++j) {
      const std::size_t n = config.n_grid[j];
      const std::size_t cell = d * config.n_grid.size() + j;
      std::vector<double> values(config.reps * k);
      parallel_for(config.reps, threads, [&](std::size_t r) {
        Philox4x32 rng = stream_for(config, cell, r);
        const IncomeSample s = sample(dist, n, rng);
        for (std::size_t e = 0; e < k; ++e) {
          values[r * k + e] =
              estimate(s, z, config.estimators[e].first, config.estimators[e].second).value;
        }
      });
      for (std::size_t e = 0; e < k; ++e) {
        CompensatedSum sum;
        CompensatedSum sq_err;
        for (std::size_t r = 0; r < config.reps; ++r) {
          const double v = values[r * k + e];
          sum.add(v);
          sq_err.add((v - truth[e]) * (v - truth[e]));
        }
        const double reps = static_cast<double>(config.reps);
        const double mean = sum.value() / reps;
        CompensatedSum dev;
        for (std::size_t r = 0; r < config.reps; ++r) {
          const double v = values[r * k + e] - mean;
          dev.add(v * v);
        }
        SimulationCellReport rep;
        rep.dist = dist;
        rep.n = n;
        rep.index = config.estimators[e].first;
        rep.method = std::string(estimator_method_name(config.estimators[e].second));
        rep.true_value = truth[e];
        rep.mean_estimate = mean;
        rep.bias = mean - truth[e];
        rep.mse = sq_err.value() / reps;
        rep.reps_used = config.reps;
        rep.mc_se = config.reps > 1 ? std::sqrt(dev.value() / (reps - 1.0) / reps) : 0.0;
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

std::vector<SimulationCellReport> run_ci_grid(const MonteCarloConfig& config) {
  config.validate();
  const PovertyLine z(config.z);
  const unsigned threads = resolve_thread_count(config.threads);
  const std::size_t k = config.intervals.size();
  std::vector<SimulationCellReport> out;

  struct Outcome {
    bool ok = false;
    double lower = 0.0;
    double upper = 0.0;
  };

  for (std::size_t d = 0; d < config.distributions.size(); ++d) {
    const DistributionSpec& dist = config.distributions[d];
    std::vector<double> truth(k);
    for (std::size_t e = 0; e < k; ++e) {
      truth[e] = true_index(dist, config.z, config.intervals[e].first);
    }
    for (std::size_t j = 0; j < config.n_grid.size(); ++j) {
      const std::size_t n = config.n_grid[j];
      const std::size_t cell = d * config.n_grid.size() + j;
      std::vector<Outcome> outcomes(config.reps * k);
      parallel_for(config.reps, threads, [&](std::size_t r) {
        Philox4x32 rng = stream_for(config, cell, r);
        const IncomeSample s = sample(dist, n, rng);
        for (std::size_t e = 0; e < k; ++e) {
          try {
            const ConfidenceInterval ci = confidence_interval(
                s, z, config.intervals[e].first, config.intervals[e].second, config.alpha);
            outcomes[r * k + e] = {true, ci.lower, ci.upper};
          } catch (const Error&) {
            outcomes[r * k + e] = {};
          }
        }
      });
      for (std::size_t e = 0; e < k; ++e) {
        std::size_t used = 0;
        std::size_t covered = 0;
        CompensatedSum length;
        for (std::size_t r = 0; r < config.reps; ++r) {
          const Outcome& o = outcomes[r * k + e];
          if (!o.ok) continue;
          ++used;
          if (o.lower <= truth[e] && truth[e] <= o.upper) ++covered;
          length.add(o.upper - o.lower);
        }
        SimulationCellReport rep;
        rep.dist = dist;
        rep.n = n;
        rep.index = config.intervals[e].first;
        rep.method = std::string(ci_method_name(config.intervals[e].second));
        rep.is_interval = true;
        rep.true_value = truth[e];
        rep.reps_used = used;
        rep.failures = config.reps - used;
        if (used > 0) {
          const double cov = static_cast<double>(covered) / static_cast<double>(used);
          rep.coverage = cov;
          rep.avg_length = length.value() / static_cast<double>(used);
          rep.mc_se = std::sqrt(cov * (1.0 - cov) / static_cast<double>(used));
        }
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

std::string simulation_csv(const std::vector<SimulationCellReport>& reports) {
  std::ostringstream os;
  os << "dist,params,n,index,method,bias,mse,coverage,avg_length,failures,mc_se\n";
  for (const auto& r : reports) {
    os << r.dist.family_name() << ',' << r.dist.params() << ',' << r.n << ','
       << index_kind_name(r.index) << ',' << r.method << ',' << format_optional(r.bias) << ','
       << format_optional(r.mse) << ',' << format_optional(r.coverage) << ','
       << format_optional(r.avg_length) << ',' << r.failures << ',' << format_double(r.mc_se)
       << '\n';
  }
  return os.str();
}

std::string simulation_json(const MonteCarloConfig& config,
                            const std::vector<SimulationCellReport>& reports) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json cells = json::array();
  for (const auto& r : reports) {
    cells.push_back({{"dist", r.dist.family_name()},
                     {"params", r.dist.params()},
                     {"n", r.n},
                     {"index", index_kind_name(r.index)},
                     {"method", r.method},
                     {"kind", r.is_interval ? "interval" : "estimator"},
                     {"true_value", r.true_value},
                     {"mean_estimate", opt(r.mean_estimate)},
                     {"bias", opt(r.bias)},
                     {"mse", opt(r.mse)},
                     {"coverage", opt(r.coverage)},
                     {"avg_length", opt(r.avg_length)},
                     {"reps_used", r.reps_used},
                     {"failures", r.failures},
                     {"mc_se", r.mc_se}});
  }
  json dists = json::array();
  for (const auto& d : config.distributions) dists.push_back(d.label());
  json doc = {{"name", config.name},
              {"reps", config.reps},
              {"seed", config.seed},
              {"z", config.z},
              {"alpha", config.alpha},
              {"n_grid", config.n_grid},
              {"distributions", dists},
              {"cells", cells}};
  return doc.dump(2) + "\n";
}

std::string simulation_text(const MonteCarloConfig& config,
                            const std::vector<SimulationCellReport>& reports) {
  // Group key: family, index, estimator/interval. Keeps first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const SimulationCellReport*>> groups;
  for (const auto& r : reports) {
    const std::string key = std::string(index_kind_name(r.index)) + "|" + r.dist.family_name() +
                            "|" + (r.is_interval ? "interval" : "estimator");
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::ostringstream os;
  os << std::fixed;
  os << "# " << (config.name.empty() ? "simulation" : config.name) << ": reps=" << config.reps
     << " seed=" << config.seed << " z=" << std::setprecision(6) << config.z
     << " alpha=" << config.alpha << "\n";
  for (const auto& key : order) {
    const auto& rows = groups[key];
    const auto* first = rows.front();
    const std::string index = first->index == IndexKind::kSen ? "Sen" : "SST";
    os << "\nTable: " << index << " index, " << first->dist.family_name() << ", "
       << (first->is_interval ? "confidence intervals" : "estimators") << "\n";
    if (first->is_interval) {
      os << std::left << std::setw(22) << "dist" << std::setw(6) << "n" << std::setw(9)
         << "method" << std::right << std::setw(10) << "CP" << std::setw(10) << "AL"
         << std::setw(10) << "mc_se" << std::setw(10) << "failures" << "\n";
      for (const auto* r : rows) {
        os << std::left << std::setw(22) << r->dist.label() << std::setw(6) << r->n
           << std::setw(9) << r->method << std::right << std::setprecision(4) << std::setw(10)
           << r->coverage.value_or(NAN) << std::setw(10) << r->avg_length.value_or(NAN)
           << std::setw(10) << r->mc_se << std::setw(10) << r->failures << "\n";
      }
    } else {
      os << std::left << std::setw(22) << "dist" << std::setw(6) << "n" << std::setw(10)
         << "method" << std::right << std::setw(14) << "bias(x1e-2)" << std::setw(14)
         << "mse(x1e-2)" << std::setw(12) << "mc_se" << "\n";
      for (const auto* r : rows) {
        os << std::left << std::setw(22) << r->dist.label() << std::setw(6) << r->n
           << std::setw(10) << r->method << std::right << std::setprecision(4)
           << std::setw(14) << r->bias.value_or(NAN) * 100.0 << std::setw(14)
           << r->mse.value_or(NAN) * 100.0 << std::setprecision(6) << std::setw(12) << r->mc_se
           << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace povindex
