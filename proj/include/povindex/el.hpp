#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "povindex/estimators.hpp"
#include "povindex/interval.hpp"

namespace povindex {

// One estimating-function value per observation (or pseudo-value). The
// empirical likelihood ratio is finite only when 0 lies strictly inside
// [min, max].
class EstimatingValues {
 public:
  explicit EstimatingValues(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  bool feasible() const noexcept { return min_ < 0.0 && 0.0 < max_; }

 private:
  std::vector<double> values_;
  double min_ = 0.0;
  double max_ = 0.0;
};

struct ELSolution {
  double lambda = 0.0;
  double log_ratio = 0.0;  // 2 sum log(1 + lambda g_i)
  std::vector<double> weights;
  bool converged = false;
  int iterations = 0;
};

// Solves (1/m) sum g_i / (1 + lambda g_i) = 0 on the interval where every
// 1 + lambda g_i > 0. Safeguarded Newton with a bisection fallback.
// Throws kInfeasible when 0 is not interior to the hull of the values and
// kNonConvergence if the iteration cap is hit.
ELSolution solve_lambda(const EstimatingValues& values);

// Log ratio only; returns +inf when infeasible. Skips the weight vector.
double el_statistic(const EstimatingValues& values);

// Estimating values affine in the hypothesised parameter t:
// g_i(t) = offset_i - t * slope_i. Every EL and JEL statistic here has this
// shape, so CI inversion can re-evaluate without touching the sample.
class AffineEstimatingFunction {
 public:
  AffineEstimatingFunction(std::vector<double> offset, std::vector<double> slope);

  EstimatingValues at(double t) const;
  double log_ratio(double t) const { return el_statistic(at(t)); }
  // Open range of t for which 0 is interior to the hull of g(t); empty when
  // lower >= upper.
  double feasible_lower() const noexcept { return t_lower_; }
  double feasible_upper() const noexcept { return t_upper_; }

 private:
  std::vector<double> offset_;
  std::vector<double> slope_;
  double t_lower_ = 0.0;
  double t_upper_ = 0.0;
};

// K(X_i, S) = (2(z - X_i)(F_n(z) - F_n(X_i)) - zS) I(X_i <= z).
// Requires q >= 2.
EstimatingValues sen_el_values(const IncomeSample& sample, PovertyLine z, double sen);

// M(X_i, S_h) = 2(z - X_i)(1 - F_n(X_i)) I(X_i <= z) - z S_h.
// Requires q >= 2.
EstimatingValues sst_el_values(const IncomeSample& sample, PovertyLine z, double sst);

// -2 log EL ratio at a candidate index value; +inf outside the feasible range.
double el_log_ratio(const IncomeSample& sample, PovertyLine z, IndexKind kind,
                    double candidate);

// {S : -2 log L(S) <= chi2_1(1 - alpha)}, inverted around the plug-in
// estimate. Throws kNoPoorObservations (q < 2) and kDegenerateInterval.
ConfidenceInterval el_confidence_interval(const IncomeSample& sample, PovertyLine z,
                                          IndexKind kind, double alpha);

}  // namespace povindex
