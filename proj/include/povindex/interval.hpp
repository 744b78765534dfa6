#pragma once

#include <functional>
#include <string_view>

#include "povindex/estimators.hpp"

namespace povindex {

enum class CiMethod { kEL, kJEL, kNormal };

std::string_view ci_method_name(CiMethod m) noexcept;  // "el" / "jel" / "normal"
CiMethod parse_ci_method(std::string_view text);

struct IntervalDiagnostics {
  int evaluations = 0;         // log-ratio evaluations
  int bracket_expansions = 0;
  int bisection_steps = 0;
  // An endpoint sits where the ratio jumps to +inf (edge of the feasible set)
  // rather than at a chi-square crossing.
  bool infeasible_endpoints = false;
  // An endpoint was truncated at 0 or 1.
  bool truncated = false;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  CiMethod method = CiMethod::kEL;
  double center = 0.0;  // point estimate the interval was inverted around
  IntervalDiagnostics diagnostics;

  bool contains(double value) const noexcept { return lower <= value && value <= upper; }
  double length() const noexcept { return upper - lower; }
};

// estimate +- z_{alpha/2} sqrt(sigma^2 / n), truncated to [0, 1].
ConfidenceInterval normal_ci(const IndexEstimate& estimate,
                             const AsymptoticVariance& variance, double alpha);

// Inverts {s : log_ratio(s) <= critical} around `center`, where
// log_ratio(center) is (near) zero. Outward bracket expansion with step
// max(0.25 center, 0.01), doubling, then bisection to `tolerance` in s.
// The search is confined to [0, 1]; infinite ratios count as rejections.
struct InversionOptions {
  double tolerance = 1e-7;
  int max_expansions = 60;
};

ConfidenceInterval invert_log_ratio(const std::function<double(double)>& log_ratio,
                                    double center, double critical,
                                    InversionOptions options = {});

void validate_alpha(double alpha);

}  // namespace povindex
