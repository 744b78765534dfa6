#include "povindex/el.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "povindex/errors.hpp"
#include "povindex/normal.hpp"

namespace povindex {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kPoleMargin = 1e-10;
constexpr double kDualTolerance = 1e-13;  // on the scaled mean dual

struct ScaledRoot {
  double lambda = 0.0;  // in scaled units
  double scale = 1.0;
  bool converged = false;
  int iterations = 0;
};

// Root of sum g/(1 + lambda g) for g scaled into [-1, 1].
ScaledRoot find_root(std::span<const double> raw, double gmin, double gmax) {
  ScaledRoot out;
  out.scale = std::max(std::abs(gmin), std::abs(gmax));
  const double inv = 1.0 / out.scale;
  const double m = static_cast<double>(raw.size());

  double lo = -1.0 / (gmax * inv) * (1.0 - kPoleMargin);
  double hi = -1.0 / (gmin * inv) * (1.0 - kPoleMargin);
  double lambda = 0.0;

  for (int it = 1; it <= kMaxIterations; ++it) {
    out.iterations = it;
    double dual = 0.0;
    double slope = 0.0;
    for (double v : raw) {
      const double g = v * inv;
      const double d = 1.0 / (1.0 + lambda * g);
      dual += g * d;
      slope += g * g * d * d;
    }
    if (std::abs(dual / m) <= kDualTolerance) {
      out.converged = true;
      break;
    }
    if (dual > 0.0) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    double next = lambda + dual / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == lambda || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(1.0, std::abs(lambda))) {
      lambda = next;
      break;
    }
    lambda = next;
    if (it == kMaxIterations) {
      throw Error(ErrorCode::kNonConvergence,
                  "Lagrange multiplier iteration did not converge");
    }
  }
  out.lambda = lambda;
  return out;
}

double log_ratio_at(std::span<const double> raw, double scaled_lambda, double inv_scale) {
  double sum = 0.0;
  for (double v : raw) sum += std::log1p(scaled_lambda * v * inv_scale);
  return 2.0 * sum;
}

}  // namespace

EstimatingValues::EstimatingValues(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "estimating set needs at least 2 values");
  }
  const auto [mn, mx] = std::minmax_element(values_.begin(), values_.end());
  min_ = *mn;
  max_ = *mx;
}

ELSolution solve_lambda(const EstimatingValues& values) {
  if (!values.feasible()) {
    throw Error(ErrorCode::kInfeasible, "zero is not interior to the estimating-value hull");
  }
  const ScaledRoot root = find_root(values.values(), values.min(), values.max());
  const double inv = 1.0 / root.scale;
  ELSolution sol;
  sol.lambda = root.lambda * inv;
  sol.converged = root.converged;
  sol.iterations = root.iterations;
  sol.log_ratio = std::max(0.0, log_ratio_at(values.values(), root.lambda, inv));
  const double m = static_cast<double>(values.size());
  sol.weights.reserve(values.size());
  for (double v : values.values()) {
    sol.weights.push_back(1.0 / (m * (1.0 + root.lambda * v * inv)));
  }
  return sol;
}

double el_statistic(const EstimatingValues& values) {
  if (!values.feasible()) return std::numeric_limits<double>::infinity();
  const ScaledRoot root = find_root(values.values(), values.min(), values.max());
  return std::max(0.0, log_ratio_at(values.values(), root.lambda, 1.0 / root.scale));
}

AffineEstimatingFunction::AffineEstimatingFunction(std::vector<double> offset,
                                                   std::vector<double> slope)
    : offset_(std::move(offset)), slope_(std::move(slope)) {
  if (offset_.size() != slope_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "offset and slope sizes differ");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  bool fixed_negative = false;
  bool fixed_positive = false;
  double rmin = kInf;
  double rmax = -kInf;
  for (std::size_t i = 0; i < offset_.size(); ++i) {
    if (slope_[i] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "estimating slopes must be nonnegative");
    }
    if (slope_[i] == 0.0) {
      fixed_negative = fixed_negative || offset_[i] < 0.0;
      fixed_positive = fixed_positive || offset_[i] > 0.0;
    } else {
      const double r = offset_[i] / slope_[i];
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  }
  t_lower_ = fixed_negative ? -kInf : rmin;
  t_upper_ = fixed_positive ? kInf : rmax;
}

EstimatingValues AffineEstimatingFunction::at(double t) const {
  std::vector<double> g(offset_.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = offset_[i] - t * slope_[i];
  return EstimatingValues(std::move(g));
}

namespace {

void require_two_poor(std::size_t q) {
  if (q < 2) {
    throw Error(ErrorCode::kNoPoorObservations,
                "empirical likelihood needs at least 2 observations at or below the "
                "poverty line, found " + std::to_string(q));
  }
}

AffineEstimatingFunction sen_el_function(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  const std::size_t q = sample.count_at_or_below(zv);
  require_two_poor(q);
  const double nd = static_cast<double>(n);
  const double fz = static_cast<double>(q) / nd;
  std::vector<double> offset(n, 0.0);
  std::vector<double> slope(n, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    const double fx = static_cast<double>(sample.count_at_or_below(sample[i])) / nd;
    offset[i] = 2.0 * (zv - sample[i]) * (fz - fx);
    slope[i] = zv;
  }
  return {std::move(offset), std::move(slope)};
}

AffineEstimatingFunction sst_el_function(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  const std::size_t q = sample.count_at_or_below(zv);
  require_two_poor(q);
  const double nd = static_cast<double>(n);
  std::vector<double> offset(n, 0.0);
  std::vector<double> slope(n, zv);
  for (std::size_t i = 0; i < q; ++i) {
    const double fx = static_cast<double>(sample.count_at_or_below(sample[i])) / nd;
    offset[i] = 2.0 * (zv - sample[i]) * (1.0 - fx);
  }
  return {std::move(offset), std::move(slope)};
}

AffineEstimatingFunction el_function(const IncomeSample& sample, PovertyLine z,
                                     IndexKind kind) {
  return kind == IndexKind::kSen ? sen_el_function(sample, z) : sst_el_function(sample, z);
}

}  // namespace

EstimatingValues sen_el_values(const IncomeSample& sample, PovertyLine z, double sen) {
  return sen_el_function(sample, z).at(sen);
}

EstimatingValues sst_el_values(const IncomeSample& sample, PovertyLine z, double sst) {
  return sst_el_function(sample, z).at(sst);
}

double el_log_ratio(const IncomeSample& sample, PovertyLine z, IndexKind kind,
                    double candidate) {
  return el_function(sample, z, kind).log_ratio(candidate);
}

ConfidenceInterval el_confidence_interval(const IncomeSample& sample, PovertyLine z,
                                          IndexKind kind, double alpha) {
  validate_alpha(alpha);
  const AffineEstimatingFunction fn = el_function(sample, z, kind);
  if (!(fn.feasible_lower() < fn.feasible_upper())) {
    throw Error(ErrorCode::kDegenerateInterval,
                "estimating values admit no feasible index value (identical poor incomes?)");
  }
  const double center = kind == IndexKind::kSen ? sen_plugin(sample, z).value
                                                : sst_plugin(sample, z).value;
  const double critical = chi_square1_quantile(1.0 - alpha);
  ConfidenceInterval ci = invert_log_ratio(
      [&fn](double t) { return fn.log_ratio(t); }, center, critical);
  ci.method = CiMethod::kEL;
  ci.level = 1.0 - alpha;
  return ci;
}

}  // namespace povindex
