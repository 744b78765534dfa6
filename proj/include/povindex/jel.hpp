#pragma once

#include <cstddef>
#include <vector>

#include "povindex/el.hpp"

namespace povindex {

// Jackknife pseudo-values n T_n - (n - 1) T_{n-1,k} of a degree-2 U-statistic
// T, together with the leave-one-out statistics they came from.
struct PseudoValues {
  std::vector<double> values;
  std::vector<double> leave_one_out;
  double full_statistic = 0.0;
  double mean = 0.0;
  std::size_t n = 0;
};

// Pseudo-values of S_n(S) = pair average of 2 psi_1 - z S psi_2. Their mean is
// 2 U1 - z S U2. Row sums come from ranks and prefix sums, so the whole set
// costs O(n log n). Requires n >= 3.
PseudoValues sen_jel_pseudovalues(const IncomeSample& sample, PovertyLine z, double sen);

// Pseudo-values of the SST U-statistic; their mean is the estimate itself.
PseudoValues sst_jel_pseudovalues(const IncomeSample& sample, PovertyLine z);

// JEL log ratio at a candidate. Sen uses the pseudo-values of the estimating
// kernel evaluated at the candidate; SST centres Q_k at the candidate.
// +inf when the candidate leaves the pseudo-value hull.
double jel_log_ratio(const IncomeSample& sample, PovertyLine z, IndexKind kind,
                     double candidate);

// {S : J(S) <= chi2_1(1 - alpha)} around the U-statistic estimate.
// Throws kNoPoorObservations (q < 2), kTooFewObservations (n < 3) and
// kDegenerateInterval.
ConfidenceInterval jel_confidence_interval(const IncomeSample& sample, PovertyLine z,
                                           IndexKind kind, double alpha);

}  // namespace povindex
