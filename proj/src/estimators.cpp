#include "povindex/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "povindex/errors.hpp"

namespace povindex {
namespace {

bool poor_values_distinct(const IncomeSample& sample, std::size_t q) {
  for (std::size_t i = 1; i < q; ++i) {
    if (sample[i] == sample[i - 1]) return false;
  }
  return true;
}

IndexEstimate make_estimate(IndexKind kind, EstimatorMethod method, double value,
                            const IncomeSample& sample, std::size_t q, PovertyLine z) {
  IndexEstimate e;
  e.index_kind = kind;
  e.method = method;
  e.value = value;
  e.n = sample.size();
  e.q = q;
  e.z = z.value();
  e.no_poor = (q == 0);
  return e;
}

// sum_{i<=q} (z - X(i)) (offset - i) with 1-based i.
double weighted_gap_sum(const IncomeSample& sample, std::size_t q, double z,
                        double offset) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    sum += (z - sample[i]) * (offset - static_cast<double>(i + 1));
  }
  return sum;
}

double population_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size());
}

}  // namespace

std::string_view index_kind_name(IndexKind kind) noexcept {
  return kind == IndexKind::kSen ? "sen" : "sst";
}

std::string_view estimator_method_name(EstimatorMethod m) noexcept {
  switch (m) {
    case EstimatorMethod::kPlugIn: return "plugin";
    case EstimatorMethod::kDavidson: return "davidson";
    case EstimatorMethod::kUStat: return "ustat";
  }
  return "unknown";
}

IndexKind parse_index_kind(std::string_view text) {
  if (text == "sen") return IndexKind::kSen;
  if (text == "sst") return IndexKind::kSst;
  throw Error(ErrorCode::kInvalidArgument, "unknown index '" + std::string(text) + "'");
}

EstimatorMethod parse_estimator_method(std::string_view text) {
  if (text == "plugin") return EstimatorMethod::kPlugIn;
  if (text == "davidson") return EstimatorMethod::kDavidson;
  if (text == "ustat") return EstimatorMethod::kUStat;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown estimator '" + std::string(text) + "'");
}

IndexEstimate sen_plugin(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q == 0) return make_estimate(IndexKind::kSen, EstimatorMethod::kPlugIn, 0.0, sample, 0, z);
  const double n = static_cast<double>(sample.size());
  const double qd = static_cast<double>(q);
  const double sum = weighted_gap_sum(sample, q, z.value(), qd);
  return make_estimate(IndexKind::kSen, EstimatorMethod::kPlugIn,
                       2.0 * sum / (n * qd * z.value()), sample, q, z);
}

IndexEstimate sen_davidson(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q == 0) return make_estimate(IndexKind::kSen, EstimatorMethod::kDavidson, 0.0, sample, 0, z);
  const double n = static_cast<double>(sample.size());
  const double qd = static_cast<double>(q);
  const double sum = weighted_gap_sum(sample, q, z.value(), qd + 0.5);
  return make_estimate(IndexKind::kSen, EstimatorMethod::kDavidson,
                       2.0 * sum / (n * qd * z.value()), sample, q, z);
}

UStatComponents sen_ustat_kernel(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = sample[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double b = sample[j];
      double psi1 = 0.0;
      if (a < b && b <= zv) psi1 += zv - a;
      if (b < a && a <= zv) psi1 += zv - b;
      s1 += 0.5 * psi1;
      s2 += 0.5 * ((a <= zv ? 1.0 : 0.0) + (b <= zv ? 1.0 : 0.0));
    }
  }
  UStatComponents c;
  c.pair_count = n * (n - 1) / 2;
  c.u1 = s1 / static_cast<double>(c.pair_count);
  c.u2 = s2 / static_cast<double>(c.pair_count);
  return c;
}

UStatComponents sen_ustat_components(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  const std::size_t q = sample.count_at_or_below(zv);
  // Each pair contributes (z - smaller)/2 when smaller < larger <= z; the
  // number of partners strictly above X_i and still poor is q - #{X <= X_i}.
  double s1 = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t le = sample.count_at_or_below(sample[i]);
    s1 += (zv - sample[i]) * static_cast<double>(q - le);
  }
  UStatComponents c;
  c.pair_count = n * (n - 1) / 2;
  c.u1 = 0.5 * s1 / static_cast<double>(c.pair_count);
  c.u2 = static_cast<double>(q) / static_cast<double>(n);
  return c;
}

double sen_ustat_order_statistic(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q == 0) return 0.0;
  const double zv = z.value();
  const double n = static_cast<double>(sample.size());
  const double qd = static_cast<double>(q);
  double sum = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    sum += zv * (qd - 1.0) - 2.0 * (qd - static_cast<double>(i + 1)) * sample[i];
  }
  return sum / ((n - 1.0) * qd * zv);
}

IndexEstimate sen_ustat(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q == 0) return make_estimate(IndexKind::kSen, EstimatorMethod::kUStat, 0.0, sample, 0, z);
  double value = 0.0;
  if (poor_values_distinct(sample, q)) {
    value = sen_ustat_order_statistic(sample, z);
  } else {
    const UStatComponents c = sen_ustat_components(sample, z);
    value = 2.0 / z.value() * c.u1 / c.u2;
  }
  return make_estimate(IndexKind::kSen, EstimatorMethod::kUStat, value, sample, q, z);
}

IndexEstimate sst_plugin(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  const double n = static_cast<double>(sample.size());
  const double sum = weighted_gap_sum(sample, q, z.value(), n);
  return make_estimate(IndexKind::kSst, EstimatorMethod::kPlugIn,
                       2.0 * sum / (z.value() * n * n), sample, q, z);
}

IndexEstimate sst_davidson(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  const double n = static_cast<double>(sample.size());
  const double sum = weighted_gap_sum(sample, q, z.value(), n + 0.5);
  return make_estimate(IndexKind::kSst, EstimatorMethod::kDavidson,
                       2.0 * sum / (z.value() * n * n), sample, q, z);
}

IndexEstimate sst_ustat(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  const double n = static_cast<double>(sample.size());
  const double sum = weighted_gap_sum(sample, q, z.value(), n);
  return make_estimate(IndexKind::kSst, EstimatorMethod::kUStat,
                       2.0 * sum / (n * (n - 1.0) * z.value()), sample, q, z);
}

double sst_kernel(double a, double b, double z) noexcept {
  const double m = std::min(a, b);
  return m <= z ? 1.0 - m / z : 0.0;
}

double sst_ustat_kernel(const IncomeSample& sample, PovertyLine z) {
  const std::size_t n = sample.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += sst_kernel(sample[i], sample[j], z.value());
    }
  }
  return sum / static_cast<double>(n * (n - 1) / 2);
}

IndexEstimate estimate(const IncomeSample& sample, PovertyLine z, IndexKind kind,
                       EstimatorMethod method) {
  if (kind == IndexKind::kSen) {
    switch (method) {
      case EstimatorMethod::kPlugIn: return sen_plugin(sample, z);
      case EstimatorMethod::kDavidson: return sen_davidson(sample, z);
      case EstimatorMethod::kUStat: return sen_ustat(sample, z);
    }
  }
  switch (method) {
    case EstimatorMethod::kPlugIn: return sst_plugin(sample, z);
    case EstimatorMethod::kDavidson: return sst_davidson(sample, z);
    case EstimatorMethod::kUStat: return sst_ustat(sample, z);
  }
  return {};
}

std::vector<double> sen_projection_h1(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const std::size_t q = sample.count_at_or_below(zv);
  std::vector<double> h(n, 0.0);  // psi_1(x, .) vanishes for x > z
  for (std::size_t i = 0; i < q; ++i) {
    const double x = sample[i];
    // (z - x) #{x < Xj <= z} + sum_{Xj < x} (z - Xj)
    const std::size_t below = sample.count_below(x);
    const std::size_t le = sample.count_at_or_below(x);
    const double lower_tail = zv * static_cast<double>(below) - sample.prefix_sum(below);
    h[i] = 0.5 * ((zv - x) * static_cast<double>(q - le) + lower_tail) / nd;
  }
  return h;
}

std::vector<double> sst_projection_g2(const IncomeSample& sample, PovertyLine z) {
  const double zv = z.value();
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const std::size_t q = sample.count_at_or_below(zv);
  const double above = static_cast<double>(q) / nd - sample.prefix_sum(q) / (nd * zv);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample[i];
    if (x > zv) {
      g[i] = above;
    } else {
      const std::size_t le = sample.count_at_or_below(x);
      const double fx = static_cast<double>(le) / nd;
      g[i] = 1.0 - (x * (1.0 - fx) + sample.prefix_sum(le) / nd) / zv;
    }
  }
  return g;
}

AsymptoticVariance sen_asymptotic_variance(const IncomeSample& sample, PovertyLine z) {
  const std::size_t q = sample.count_at_or_below(z.value());
  if (q == 0) {
    throw Error(ErrorCode::kNoPoorObservations,
                "Sen variance needs at least one poor observation");
  }
  const double zv = z.value();
  const std::size_t n = sample.size();
  const double nd = static_cast<double>(n);
  const double f = static_cast<double>(q) / nd;
  const double delta1 = sen_ustat_components(sample, z).u1;

  const std::vector<double> h = sen_projection_h1(sample, z);
  double h_mean = 0.0;
  double h_poor = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    h_mean += h[i];
    if (i < q) h_poor += h[i];
  }
  h_mean /= nd;
  h_poor /= nd;

  AsymptoticVariance v;
  v.sigma1_sq = population_variance(h);
  v.sigma2_sq = 0.25 * f * (1.0 - f);
  // Cov(h1, h2) with h2 = I(X <= z)/2.
  v.sigma12 = 0.5 * (h_poor - h_mean * f);
  // sqrt(n)(U - theta) has covariance 4 Sigma; delta method on (2/z) U1/U2.
  const double s = 16.0 / (zv * zv) *
                   (v.sigma1_sq / (f * f) + delta1 * delta1 * v.sigma2_sq / (f * f * f * f) -
                    2.0 * delta1 * v.sigma12 / (f * f * f));
  if (s < 0.0) {
    v.clamped = true;
    v.sigma_sq = 0.0;
  } else {
    v.sigma_sq = s;
  }
  return v;
}

AsymptoticVariance sst_asymptotic_variance(const IncomeSample& sample, PovertyLine z) {
  AsymptoticVariance v;
  v.sigma2_sq = population_variance(sst_projection_g2(sample, z));
  v.sigma_sq = 4.0 * v.sigma2_sq;
  return v;
}

}  // namespace povindex
