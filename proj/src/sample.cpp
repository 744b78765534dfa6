#include "povindex/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "povindex/errors.hpp"

namespace povindex {

PovertyLine::PovertyLine(double z) : z_(z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::kInvalidArgument,
                "poverty line must be a finite value > 0");
  }
}

IncomeSample::IncomeSample(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::kTooFewObservations,
                "an income sample needs at least 2 observations, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kMalformedNumber,
                  "non-finite income at position " + std::to_string(i));
    }
    if (values_[i] < 0.0) {
      throw Error(ErrorCode::kNegativeIncome,
                  "negative income at position " + std::to_string(i));
    }
  }
  std::sort(values_.begin(), values_.end());
  prefix_.resize(values_.size() + 1);
  prefix_[0] = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    prefix_[i + 1] = prefix_[i] + values_[i];
  }
}

IncomeSample::IncomeSample(std::span<const double> values)
    : IncomeSample(std::vector<double>(values.begin(), values.end())) {}

std::size_t IncomeSample::count_at_or_below(double x) const noexcept {
  return static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
}

std::size_t IncomeSample::count_below(double x) const noexcept {
  return static_cast<std::size_t>(
      std::lower_bound(values_.begin(), values_.end(), x) - values_.begin());
}

double empirical_cdf(const IncomeSample& sample, double x) noexcept {
  return static_cast<double>(sample.count_at_or_below(x)) /
         static_cast<double>(sample.size());
}

PoorPartition poor_partition(const IncomeSample& sample, PovertyLine z) noexcept {
  PoorPartition p;
  p.n = sample.size();
  p.q = sample.count_at_or_below(z.value());
  p.headcount = static_cast<double>(p.q) / static_cast<double>(p.n);
  if (p.q >= 1) {
    p.mean_poor = sample.prefix_sum(p.q) / static_cast<double>(p.q);
  }
  return p;
}

double income_gap_ratio(const PoorPartition& partition, PovertyLine z) {
  if (partition.q == 0 || !partition.mean_poor) {
    throw Error(ErrorCode::kNoPoorObservations,
                "income gap ratio needs at least one poor observation");
  }
  return 1.0 - *partition.mean_poor / z.value();
}

double gini_among_poor(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q == 0) {
    throw Error(ErrorCode::kNoPoorObservations,
                "Gini among the poor needs poor observations");
  }
  const double total = sample.prefix_sum(q);
  if (q == 1 || total <= 0.0) {
    throw Error(ErrorCode::kDegenerateSubsample,
                "Gini among the poor needs q >= 2 and a positive poor mean");
  }
  // For sorted x, sum_{i,j} |x_i - x_j| = 2 sum_i (2i - q - 1) x_(i).
  double weighted = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - static_cast<double>(q) - 1.0) *
                sample[i];
  }
  const double qd = static_cast<double>(q);
  const double mean = total / qd;
  return (2.0 * weighted) / (2.0 * qd * qd * mean);
}

double sen_from_components(const PoorPartition& partition, double gap_ratio,
                           double gini_poor) {
  if (partition.q == 0) {
    throw Error(ErrorCode::kNoPoorObservations,
                "Sen components need at least one poor observation");
  }
  const double q = static_cast<double>(partition.q);
  return partition.headcount * gap_ratio +
         q / (q + 1.0) * (1.0 - gap_ratio) * gini_poor;
}

}  // namespace povindex
