#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "povindex/errors.hpp"
#include "povindex/io.hpp"
#include "povindex/simulation.hpp"

namespace py = pybind11;
using namespace povindex;

namespace {

IncomeSample to_sample(const std::vector<double>& incomes) { return IncomeSample(incomes); }

py::dict interval_dict(const ConfidenceInterval& ci) {
  py::dict d;
  d["lower"] = ci.lower;
  d["upper"] = ci.upper;
  d["level"] = ci.level;
  d["method"] = std::string(ci_method_name(ci.method));
  d["center"] = ci.center;
  d["evaluations"] = ci.diagnostics.evaluations;
  d["infeasible_endpoints"] = ci.diagnostics.infeasible_endpoints;
  d["truncated"] = ci.diagnostics.truncated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sen / SST poverty indices: U-statistic estimators, EL and JEL intervals";

  static py::exception<Error> exc(m, "PovindexError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      PyErr_SetObject(err.ptr(),
                      py::make_tuple(e.what(), std::string(error_code_name(e.code()))).ptr());
    }
  });

  m.def("estimate",
        [](const std::vector<double>& incomes, double z, const std::string& index,
           const std::string& method) {
          const IndexEstimate e = estimate(to_sample(incomes), PovertyLine(z),
                                           parse_index_kind(index), parse_estimator_method(method));
          py::dict d;
          d["value"] = e.value;
          d["n"] = e.n;
          d["q"] = e.q;
          d["no_poor"] = e.no_poor;
          return d;
        },
        py::arg("incomes"), py::arg("z"), py::arg("index") = "sen", py::arg("method") = "ustat",
        "Point estimate of the Sen or SST index.");

  m.def("ustat_components",
        [](const std::vector<double>& incomes, double z) {
          const UStatComponents c = sen_ustat_components(to_sample(incomes), PovertyLine(z));
          return py::make_tuple(c.u1, c.u2);
        },
        py::arg("incomes"), py::arg("z"), "(U1, U2) pair averages of the Sen kernels.");

  m.def("el_log_ratio",
        [](const std::vector<double>& incomes, double z, const std::string& index,
           double candidate) {
          return el_log_ratio(to_sample(incomes), PovertyLine(z), parse_index_kind(index),
                              candidate);
        },
        py::arg("incomes"), py::arg("z"), py::arg("index"), py::arg("candidate"));

  m.def("jel_log_ratio",
        [](const std::vector<double>& incomes, double z, const std::string& index,
           double candidate) {
          return jel_log_ratio(to_sample(incomes), PovertyLine(z), parse_index_kind(index),
                               candidate);
        },
        py::arg("incomes"), py::arg("z"), py::arg("index"), py::arg("candidate"));

  m.def("confidence_interval",
        [](const std::vector<double>& incomes, double z, const std::string& index,
           const std::string& method, double alpha) {
          return interval_dict(confidence_interval(to_sample(incomes), PovertyLine(z),
                                                   parse_index_kind(index),
                                                   parse_ci_method(method), alpha));
        },
        py::arg("incomes"), py::arg("z"), py::arg("index") = "sen", py::arg("method") = "jel",
        py::arg("alpha") = 0.05);

  m.def("sen_pseudovalues",
        [](const std::vector<double>& incomes, double z, double sen) {
          return sen_jel_pseudovalues(to_sample(incomes), PovertyLine(z), sen).values;
        },
        py::arg("incomes"), py::arg("z"), py::arg("sen"));

  m.def("sst_pseudovalues",
        [](const std::vector<double>& incomes, double z) {
          return sst_jel_pseudovalues(to_sample(incomes), PovertyLine(z)).values;
        },
        py::arg("incomes"), py::arg("z"));

  m.def("true_index",
        [](const std::string& dist, double z, const std::string& index) {
          return true_index(DistributionSpec::parse(dist), z, parse_index_kind(index));
        },
        py::arg("distribution"), py::arg("z"), py::arg("index"),
        "Population index by quadrature, e.g. true_index('exponential(2)', 1.41, 'sst').");

  m.def("draw",
        [](const std::string& dist, std::size_t n, std::uint64_t seed, std::uint32_t stream) {
          Philox4x32 rng(seed, 0, stream);
          const IncomeSample s = sample(DistributionSpec::parse(dist), n, rng);
          return std::vector<double>(s.values().begin(), s.values().end());
        },
        py::arg("distribution"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0,
        "Sorted inverse-CDF sample from a Philox stream.");

  m.def("analyze_json",
        [](const std::vector<double>& incomes, double z, const std::vector<std::string>& ci,
           double alpha) {
          AnalysisConfig cfg;
          cfg.input = "<python>";
          cfg.poverty_line = z;
          cfg.alpha = alpha;
          cfg.methods = {EstimatorMethod::kUStat, EstimatorMethod::kPlugIn,
                         EstimatorMethod::kDavidson};
          for (const auto& c : ci) cfg.intervals.push_back(parse_ci_method(c));
          cfg.timestamp = false;
          return report_json(analyze(to_sample(incomes), cfg));
        },
        py::arg("incomes"), py::arg("z"), py::arg("ci") = std::vector<std::string>{},
        py::arg("alpha") = 0.05, "Full analysis report as a JSON string.");

  m.def("simulate_csv",
        [](const std::string& config_text, std::size_t reps) {
          MonteCarloConfig cfg = parse_simulation_config(config_text);
          if (reps > 0) cfg.reps = reps;
          std::vector<SimulationCellReport> out;
          {
            py::gil_scoped_release release;
            if (!cfg.estimators.empty()) out = run_estimator_grid(cfg);
            if (!cfg.intervals.empty()) {
              auto ci = run_ci_grid(cfg);
              out.insert(out.end(), ci.begin(), ci.end());
            }
          }
          return simulation_csv(out);
        },
        py::arg("config_text"), py::arg("reps") = 0,
        "Run a simulation config and return the cell reports as CSV.");
}
