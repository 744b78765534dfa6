#pragma once

#include "povindex/el.hpp"
#include "povindex/interval.hpp"
#include "povindex/jel.hpp"

namespace povindex {

// Dispatch over interval methods. EL is centred at the plug-in estimate, JEL at
// the U-statistic, and the normal interval at the Davidson estimate with the
// plug-in asymptotic variance.
ConfidenceInterval confidence_interval(const IncomeSample& sample, PovertyLine z,
                                       IndexKind kind, CiMethod method, double alpha);

// Estimator an interval method is centred on.
EstimatorMethod interval_center_method(CiMethod method) noexcept;

}  // namespace povindex
