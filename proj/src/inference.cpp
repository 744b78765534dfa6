#include "povindex/inference.hpp"

#include "povindex/errors.hpp"

namespace povindex {

EstimatorMethod interval_center_method(CiMethod method) noexcept {
  switch (method) {
    case CiMethod::kEL: return EstimatorMethod::kPlugIn;
    case CiMethod::kJEL: return EstimatorMethod::kUStat;
    case CiMethod::kNormal: return EstimatorMethod::kDavidson;
  }
  return EstimatorMethod::kUStat;
}

ConfidenceInterval confidence_interval(const IncomeSample& sample, PovertyLine z,
                                       IndexKind kind, CiMethod method, double alpha) {
  switch (method) {
    case CiMethod::kEL:
      return el_confidence_interval(sample, z, kind, alpha);
    case CiMethod::kJEL:
      return jel_confidence_interval(sample, z, kind, alpha);
    case CiMethod::kNormal:
      break;
  }
  if (poor_partition(sample, z).q == 0) {
    throw Error(ErrorCode::kNoPoorObservations,
                "no incomes at or below the poverty line; interval undefined");
  }
  if (kind == IndexKind::kSen) {
    return normal_ci(sen_davidson(sample, z), sen_asymptotic_variance(sample, z), alpha);
  }
  return normal_ci(sst_davidson(sample, z), sst_asymptotic_variance(sample, z), alpha);
}

}  // namespace povindex
