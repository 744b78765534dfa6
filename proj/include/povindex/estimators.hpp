#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "povindex/sample.hpp"

namespace povindex {

enum class IndexKind { kSen, kSst };
enum class EstimatorMethod { kPlugIn, kDavidson, kUStat };

std::string_view index_kind_name(IndexKind kind) noexcept;          // "sen" / "sst"
std::string_view estimator_method_name(EstimatorMethod m) noexcept;  // "plugin" / ...
IndexKind parse_index_kind(std::string_view text);
EstimatorMethod parse_estimator_method(std::string_view text);

struct IndexEstimate {
  IndexKind index_kind = IndexKind::kSen;
  EstimatorMethod method = EstimatorMethod::kUStat;
  double value = 0.0;
  std::size_t n = 0;
  std::size_t q = 0;
  double z = 0.0;
  // Set when q = 0 and the value is the conventional 0.
  bool no_poor = false;
};

// Averages of psi_1 and psi_2 over all unordered pairs.
struct UStatComponents {
  double u1 = 0.0;
  double u2 = 0.0;
  std::size_t pair_count = 0;
};

struct AsymptoticVariance {
  double sigma_sq = 0.0;
  // Sen: projection variance of U1, of U2, and their covariance.
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
  double sigma12 = 0.0;
  // True when the Sen plug-in combination came out negative and was clamped.
  bool clamped = false;
};

// Sen index ------------------------------------------------------------------

// (2/(nqz)) sum_{i<=q} (z - X(i)) (q - i)
IndexEstimate sen_plugin(const IncomeSample& sample, PovertyLine z);
// (2/(nqz)) sum_{i<=q} (z - X(i)) (q - i + 1/2)
IndexEstimate sen_davidson(const IncomeSample& sample, PovertyLine z);

// Exact pair enumeration of psi_1, psi_2. O(n^2); kept as the oracle path.
UStatComponents sen_ustat_kernel(const IncomeSample& sample, PovertyLine z);
// Same averages from ranks and prefix sums, O(n log n), exact under ties.
UStatComponents sen_ustat_components(const IncomeSample& sample, PovertyLine z);

// (2/z) U1/U2. Uses the order-statistic closed form when the poor values are
// distinct and the rank form otherwise; both equal the kernel average.
IndexEstimate sen_ustat(const IncomeSample& sample, PovertyLine z);
// Order-statistic closed form (1/((n-1)qz)) sum (z(q-1) - 2(q-i)X(i)).
// Only equal to the kernel average when the poor values are distinct.
double sen_ustat_order_statistic(const IncomeSample& sample, PovertyLine z);

// SST index ------------------------------------------------------------------

// (2/(z n^2)) sum_{i<=q} (n - i)(z - X(i))
IndexEstimate sst_plugin(const IncomeSample& sample, PovertyLine z);
// (2/(z n^2)) sum_{i<=q} (n - i + 0.5)(z - X(i))
IndexEstimate sst_davidson(const IncomeSample& sample, PovertyLine z);
// (2/(n(n-1)z)) sum_{i<=q} (n - i)(z - X(i)); the unbiased U-statistic.
IndexEstimate sst_ustat(const IncomeSample& sample, PovertyLine z);

// psi_3(a, b) = I(min <= z) (1 - min/z)
double sst_kernel(double a, double b, double z) noexcept;
// Pair average of psi_3. O(n^2) oracle.
double sst_ustat_kernel(const IncomeSample& sample, PovertyLine z);

IndexEstimate estimate(const IncomeSample& sample, PovertyLine z, IndexKind kind,
                       EstimatorMethod method);

// Variance estimators ----------------------------------------------------------

// Plug-in sigma^2 of sqrt(n)(S_hat - S) for the Sen U-statistic.
// Throws kNoPoorObservations when q = 0.
AsymptoticVariance sen_asymptotic_variance(const IncomeSample& sample, PovertyLine z);

// 4 Var(g2(X)) with g2 the first-order projection of psi_3 under F_n.
AsymptoticVariance sst_asymptotic_variance(const IncomeSample& sample, PovertyLine z);

// Per-observation projection values used by the variance estimators; exposed
// for tests. sen_projection_h1(x) = E psi_1(x, X) and sst_projection_g2(x) =
// E psi_3(x, X), both under F_n and uncentred.
std::vector<double> sen_projection_h1(const IncomeSample& sample, PovertyLine z);
std::vector<double> sst_projection_g2(const IncomeSample& sample, PovertyLine z);

}  // namespace povindex
