#include "povindex/jel.hpp"

#include <string>

#include "povindex/errors.hpp"
#include "povindex/normal.hpp"

namespace povindex {
namespace {

void require_three(const IncomeSample& sample) {
  if (sample.size() < 3) {
    throw Error(ErrorCode::kTooFewObservations,
                "jackknife pseudo-values need n >= 3");
  }
}

double pairs(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

// Pseudo-values from the full pair total and per-observation row sums:
// T_{n-1,k} = (total - row_k) / C(n-1, 2).
PseudoValues from_row_sums(double total, const std::vector<double>& rows) {
  const std::size_t n = rows.size();
  const double nd = static_cast<double>(n);
  PseudoValues pv;
  pv.n = n;
  pv.full_statistic = total / pairs(n);
  pv.values.resize(n);
  pv.leave_one_out.resize(n);
  const double reduced = pairs(n - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    pv.leave_one_out[k] = (total - rows[k]) / reduced;
    pv.values[k] = nd * pv.full_statistic - (nd - 1.0) * pv.leave_one_out[k];
    sum += pv.values[k];
  }
  pv.mean = sum / nd;
  return pv;
}

// Pseudo-values of U1, the pair average of psi_1.
PseudoValues sen_gap_pseudovalues(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  const std::size_t q = sample.count_at_or_below(zv);
  std::vector<double> rows(n, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    const double x = sample[k];
    // Partners strictly above x and still poor: x is the smaller element.
    const double above = static_cast<double>(q - sample.count_at_or_below(x));
    // Partners strictly below x: they are the smaller element.
    const std::size_t lt = sample.count_below(x);
    const double below = zv * static_cast<double>(lt) - sample.prefix_sum(lt);
    const double own = (zv - x) * above;
    rows[k] = 0.5 * (own + below);
    total += 0.5 * own;
  }
  return from_row_sums(total, rows);
}

AffineEstimatingFunction sen_jel_function(const IncomeSample& sample, PovertyLine z) {
  const PseudoValues gap = sen_gap_pseudovalues(sample, z);
  const std::size_t n = sample.size();
  const std::size_t q = sample.count_at_or_below(z.value());
  std::vector<double> offset(n);
  std::vector<double> slope(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    offset[k] = 2.0 * gap.values[k];
    // The U2 pseudo-values are exactly the indicators I(X_k <= z).
    if (k < q) slope[k] = z.value();
  }
  return {std::move(offset), std::move(slope)};
}

AffineEstimatingFunction sst_jel_function(const IncomeSample& sample, PovertyLine z) {
  PseudoValues pv = sst_jel_pseudovalues(sample, z);
  return {std::move(pv.values), std::vector<double>(sample.size(), 1.0)};
}

AffineEstimatingFunction jel_function(const IncomeSample& sample, PovertyLine z,
                                      IndexKind kind) {
  require_three(sample);
  return kind == IndexKind::kSen ? sen_jel_function(sample, z) : sst_jel_function(sample, z);
}

}  // namespace

PseudoValues sen_jel_pseudovalues(const IncomeSample& sample, PovertyLine z, double sen) {
  require_three(sample);
  const PseudoValues gap = sen_gap_pseudovalues(sample, z);
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const std::size_t q = sample.count_at_or_below(z.value());
  const double zs = z.value() * sen;
  const double u2 = static_cast<double>(q) / nd;

  PseudoValues pv;
  pv.n = n;
  pv.full_statistic = 2.0 * gap.full_statistic - zs * u2;
  pv.values.resize(n);
  pv.leave_one_out.resize(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double indicator = k < q ? 1.0 : 0.0;
    const double u2_loo = (static_cast<double>(q) - indicator) / (nd - 1.0);
    pv.leave_one_out[k] = 2.0 * gap.leave_one_out[k] - zs * u2_loo;
    pv.values[k] = 2.0 * gap.values[k] - zs * indicator;
    sum += pv.values[k];
  }
  pv.mean = sum / nd;
  return pv;
}

PseudoValues sst_jel_pseudovalues(const IncomeSample& sample, PovertyLine z) {
  require_three(sample);
  const double zv = z.value();
  const std::size_t n = sample.size();
  std::vector<double> rows(n);
  double total = 0.0;
  double before = 0.0;  // sum of psi_3 weights of earlier order statistics
  for (std::size_t r = 0; r < n; ++r) {
    const double x = sample[r];
    const double f = x <= zv ? 1.0 - x / zv : 0.0;
    // Against earlier order statistics the partner is the minimum; against
    // later ones X(r) is. Ties give the same value either way.
    rows[r] = before + static_cast<double>(n - 1 - r) * f;
    total += static_cast<double>(n - 1 - r) * f;
    before += f;
  }
  return from_row_sums(total, rows);
}

double jel_log_ratio(const IncomeSample& sample, PovertyLine z, IndexKind kind,
                     double candidate) {
  return jel_function(sample, z, kind).log_ratio(candidate);
}

ConfidenceInterval jel_confidence_interval(const IncomeSample& sample, PovertyLine z,
                                           IndexKind kind, double alpha) {
  validate_alpha(alpha);
  require_three(sample);
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q < 2) {
    throw Error(ErrorCode::kNoPoorObservations,
                "jackknife empirical likelihood needs at least 2 observations at or "
                "below the poverty line, found " + std::to_string(q));
  }
  const AffineEstimatingFunction fn = jel_function(sample, z, kind);
  if (!(fn.feasible_lower() < fn.feasible_upper())) {
    throw Error(ErrorCode::kDegenerateInterval,
                "pseudo-values admit no feasible index value (identical poor incomes?)");
  }
  const double center = kind == IndexKind::kSen ? sen_ustat(sample, z).value
                                                : sst_ustat(sample, z).value;
  const double critical = chi_square1_quantile(1.0 - alpha);
  ConfidenceInterval ci = invert_log_ratio(
      [&fn](double t) { return fn.log_ratio(t); }, center, critical);
  ci.method = CiMethod::kJEL;
  ci.level = 1.0 - alpha;
  return ci;
}

}  // namespace povindex
