#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace povindex {

// Poverty line z > 0, in the same units as the incomes.
class PovertyLine {
 public:
  explicit PovertyLine(double z);
  double value() const noexcept { return z_; }

 private:
  double z_;
};

// Nonnegative incomes stored in ascending order, n >= 2. The input order is
// not retained.
class IncomeSample {
 public:
  explicit IncomeSample(std::vector<double> values);
  IncomeSample(std::span<const double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  // #{i : X_i <= x}
  std::size_t count_at_or_below(double x) const noexcept;
  // #{i : X_i < x}
  std::size_t count_below(double x) const noexcept;
  // Sum of the first k order statistics.
  double prefix_sum(std::size_t k) const noexcept { return prefix_[k]; }

 private:
  std::vector<double> values_;
  std::vector<double> prefix_;  // prefix_[k] = X(1) + ... + X(k)
};

struct PoorPartition {
  std::size_t q = 0;
  std::size_t n = 0;
  double headcount = 0.0;
  std::optional<double> mean_poor;  // defined iff q >= 1
};

// Right-continuous empirical CDF, #{X_i <= x} / n.
double empirical_cdf(const IncomeSample& sample, double x) noexcept;

// "Poor" is inclusive: X <= z.
PoorPartition poor_partition(const IncomeSample& sample, PovertyLine z) noexcept;

// I = 1 - mean_poor / z. Throws kNoPoorObservations when q = 0.
double income_gap_ratio(const PoorPartition& partition, PovertyLine z);

// Mean-absolute-difference Gini over the poor subsample,
// sum_i sum_j |x_i - x_j| / (2 q^2 mean_poor).
double gini_among_poor(const IncomeSample& sample, PovertyLine z);

// S = H I + q/(q+1) (1 - I) G_p, the literal component combination. Only used
// as a diagnostic; the estimators never call it.
double sen_from_components(const PoorPartition& partition, double gap_ratio,
                           double gini_poor);

}  // namespace povindex
