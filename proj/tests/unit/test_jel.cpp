#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "povindex/errors.hpp"
#include "povindex/inference.hpp"
#include "povindex/jel.hpp"
#include "povindex/normal.hpp"

using namespace povindex;

namespace {

const std::vector<double> kThree{0.5, 1.0, 2.0};
const double kZ = 1.41;

// Pair average of 2 psi_1 - z S psi_2, straight from the definition.
double sen_kernel_stat(const std::vector<double>& x, double z, double s) {
  const oracle::Pair p = oracle::sen_pairs(x, z);
  return 2.0 * p.u1 - z * s * p.u2;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no povindex::Error thrown";
  return ErrorCode::kIoError;
}

}  // namespace

TEST(SenPseudoValues, Examples) {
  const PseudoValues pv = sen_jel_pseudovalues(IncomeSample(kThree), PovertyLine(kZ), 0.0);
  ASSERT_EQ(pv.values.size(), 3u);
  EXPECT_NEAR(pv.full_statistic, 2.0 * 0.91 / 6.0, 1e-15);
  EXPECT_NEAR(pv.mean, 0.303333, 5e-7);
  // Hand enumeration: only the pair (0.5, 1.0) contributes (2 psi_1 = 0.91),
  // so it survives only when 2.0 is deleted.
  EXPECT_NEAR(pv.leave_one_out[0], 0.0, 1e-15);
  EXPECT_NEAR(pv.leave_one_out[1], 0.0, 1e-15);
  EXPECT_NEAR(pv.leave_one_out[2], 0.91, 1e-15);
  EXPECT_NEAR(pv.values[0], 0.91, 1e-15);
  EXPECT_NEAR(pv.values[1], 0.91, 1e-15);
  EXPECT_NEAR(pv.values[2], -0.91, 1e-15);

  const double sen = sen_ustat(IncomeSample(kThree), PovertyLine(kZ)).value;
  EXPECT_NEAR(sen_jel_pseudovalues(IncomeSample(kThree), PovertyLine(kZ), sen).mean, 0.0, 1e-12);

  const PseudoValues above =
      sen_jel_pseudovalues(IncomeSample({2.0, 3.0, 4.0, 5.0}), PovertyLine(kZ), 0.0);
  for (double v : above.values) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(SstPseudoValues, Examples) {
  const PseudoValues pv = sst_jel_pseudovalues(IncomeSample(kThree), PovertyLine(kZ));
  EXPECT_NEAR(pv.mean, 0.527187, 5e-7);
  EXPECT_NEAR(pv.mean, sst_ustat(IncomeSample(kThree), PovertyLine(kZ)).value, 1e-12);
  // leave-one-out pairs: {1,2} -> 1 - 1/1.41, {0.5,2} and {0.5,1} -> 1 - 0.5/1.41
  EXPECT_NEAR(pv.leave_one_out[0], 1.0 - 1.0 / 1.41, 1e-15);
  EXPECT_NEAR(pv.leave_one_out[1], 1.0 - 0.5 / 1.41, 1e-15);
  EXPECT_NEAR(pv.leave_one_out[2], 1.0 - 0.5 / 1.41, 1e-15);

  const PseudoValues zeros = sst_jel_pseudovalues(IncomeSample({0.0, 0.0, 0.0, 0.0}), PovertyLine(kZ));
  for (double v : zeros.values) EXPECT_NEAR(v, 1.0, 1e-15);
  for (double v : zeros.leave_one_out) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(PseudoValues, NeedThreeObservations) {
  EXPECT_EQ(code_of([] { sst_jel_pseudovalues(IncomeSample({0.5, 1.0}), PovertyLine(kZ)); }),
            ErrorCode::kTooFewObservations);
  EXPECT_EQ(code_of([] { sen_jel_pseudovalues(IncomeSample({0.5, 1.0}), PovertyLine(kZ), 0.1); }),
            ErrorCode::kTooFewObservations);
}

TEST(PseudoValues, MeanRecoveryIdentity) {
  oracle::SampleFactory f(41);
  for (int rep = 0; rep < 1000; ++rep) {
    auto x = f.draw(f.size_between(3, 60), rep);
    if (rep % 5 == 0) {
      for (double& v : x) v = std::round(v * 4.0) / 4.0;
    }
    const IncomeSample s(x);
    const double cand = 0.1 + 0.8 * static_cast<double>(rep % 9) / 8.0;
    const PseudoValues sen = sen_jel_pseudovalues(s, PovertyLine(kZ), cand);
    const UStatComponents c = sen_ustat_components(s, PovertyLine(kZ));
    EXPECT_NEAR(sen.mean, 2.0 * c.u1 - kZ * cand * c.u2, 1e-12);
    EXPECT_NEAR(sen.mean, sen_kernel_stat(x, kZ, cand), 1e-12);
    const PseudoValues sst = sst_jel_pseudovalues(s, PovertyLine(kZ));
    EXPECT_NEAR(sst.mean, sst_ustat(s, PovertyLine(kZ)).value, 1e-12);
  }
}

TEST(PseudoValues, LeaveOneOutMatchesRecomputation) {
  oracle::SampleFactory f(42);
  for (int rep = 0; rep < 300; ++rep) {
    auto x = oracle::sorted(f.draw(f.size_between(3, 25), rep));
    if (rep % 4 == 0) {
      for (double& v : x) v = std::round(v * 3.0) / 3.0;
    }
    const IncomeSample s(x);
    const double cand = 0.4;
    const PseudoValues sen = sen_jel_pseudovalues(s, PovertyLine(kZ), cand);
    const PseudoValues sst = sst_jel_pseudovalues(s, PovertyLine(kZ));
    const double nd = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto y = oracle::drop(x, k);
      const double sen_loo = sen_kernel_stat(y, kZ, cand);
      const double sst_loo = oracle::sst_pairs(y, kZ);
      EXPECT_NEAR(sen.leave_one_out[k], sen_loo, 1e-12);
      EXPECT_NEAR(sst.leave_one_out[k], sst_loo, 1e-12);
      EXPECT_NEAR(sen.values[k], nd * sen_kernel_stat(x, kZ, cand) - (nd - 1.0) * sen_loo, 1e-11);
      EXPECT_NEAR(sst.values[k], nd * oracle::sst_pairs(x, kZ) - (nd - 1.0) * sst_loo, 1e-11);
    }
  }
}

TEST(JelLogRatio, ZeroAtUStatisticAndInfeasibleFarAway) {
  oracle::SampleFactory f(43);
  for (int rep = 0; rep < 200; ++rep) {
    const IncomeSample s(f.draw(f.size_between(4, 80), rep));
    if (poor_partition(s, PovertyLine(kZ)).q < 2) continue;
    const double sen = sen_ustat(s, PovertyLine(kZ)).value;
    const double sst = sst_ustat(s, PovertyLine(kZ)).value;
    EXPECT_NEAR(jel_log_ratio(s, PovertyLine(kZ), IndexKind::kSen, sen), 0.0, 1e-10);
    EXPECT_NEAR(jel_log_ratio(s, PovertyLine(kZ), IndexKind::kSst, sst), 0.0, 1e-10);
    EXPECT_TRUE(std::isinf(jel_log_ratio(s, PovertyLine(kZ), IndexKind::kSst, 50.0)));
  }
  const IncomeSample tiny({1.40, 1.405, 1.409, 3.0});
  EXPECT_TRUE(std::isinf(jel_log_ratio(tiny, PovertyLine(kZ), IndexKind::kSen, 1.0)));
}

TEST(JelConfidenceInterval, ContainsEstimateAndHitsCriticalValue) {
  oracle::SampleFactory f(44);
  const double crit = chi_square1_quantile(0.95);
  int interior = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const IncomeSample s(f.draw(f.size_between(10, 150), rep));
    if (poor_partition(s, PovertyLine(kZ)).q < 2) continue;
    for (IndexKind k : {IndexKind::kSen, IndexKind::kSst}) {
      const ConfidenceInterval ci = jel_confidence_interval(s, PovertyLine(kZ), k, 0.05);
      const double u = estimate(s, PovertyLine(kZ), k, EstimatorMethod::kUStat).value;
      EXPECT_EQ(ci.method, CiMethod::kJEL);
      EXPECT_DOUBLE_EQ(ci.center, u);
      EXPECT_TRUE(ci.contains(u));
      EXPECT_GE(ci.lower, 0.0);
      EXPECT_LE(ci.upper, 1.0);
      if (!ci.diagnostics.infeasible_endpoints && !ci.diagnostics.truncated) {
        ++interior;
        EXPECT_NEAR(jel_log_ratio(s, PovertyLine(kZ), k, ci.lower), crit, 1e-4);
        EXPECT_NEAR(jel_log_ratio(s, PovertyLine(kZ), k, ci.upper), crit, 1e-4);
      }
    }
  }
  EXPECT_GT(interior, 40);
}

TEST(JelConfidenceInterval, DegenerateInputs) {
  EXPECT_EQ(code_of([] {
              jel_confidence_interval(IncomeSample({2.0, 3.0, 4.0}), PovertyLine(kZ),
                                      IndexKind::kSen, 0.05);
            }),
            ErrorCode::kNoPoorObservations);
  EXPECT_EQ(code_of([] {
              jel_confidence_interval(IncomeSample({0.8, 0.8, 0.8, 2.5, 3.0}), PovertyLine(kZ),
                                      IndexKind::kSen, 0.05);
            }),
            ErrorCode::kDegenerateInterval);
  EXPECT_EQ(code_of([] {
              jel_confidence_interval(IncomeSample({0.8, 0.8, 0.8, 0.8}), PovertyLine(kZ),
                                      IndexKind::kSst, 0.05);
            }),
            ErrorCode::kDegenerateInterval);
  EXPECT_EQ(code_of([] {
              jel_confidence_interval(IncomeSample({0.5, 0.9}), PovertyLine(kZ),
                                      IndexKind::kSst, 0.05);
            }),
            ErrorCode::kTooFewObservations);
}

TEST(JelConfidenceInterval, AgreesWithElForLargeSamplesInLocation) {
  // Diagnostic only: both intervals cover the bulk of the sampling spread, so
  // they overlap.
  oracle::SampleFactory f(45);
  for (int rep = 0; rep < 5; ++rep) {
    const IncomeSample s(f.draw(500, 0));
    for (IndexKind k : {IndexKind::kSen, IndexKind::kSst}) {
      const ConfidenceInterval el = confidence_interval(s, PovertyLine(kZ), k, CiMethod::kEL, 0.05);
      const ConfidenceInterval jel = confidence_interval(s, PovertyLine(kZ), k, CiMethod::kJEL, 0.05);
      EXPECT_LT(std::max(el.lower, jel.lower), std::min(el.upper, jel.upper));
    }
  }
}
