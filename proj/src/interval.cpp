#include "povindex/interval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "povindex/errors.hpp"
#include "povindex/normal.hpp"

namespace povindex {

std::string_view ci_method_name(CiMethod m) noexcept {
  switch (m) {
    case CiMethod::kEL: return "el";
    case CiMethod::kJEL: return "jel";
    case CiMethod::kNormal: return "normal";
  }
  return "unknown";
}

CiMethod parse_ci_method(std::string_view text) {
  if (text == "el") return CiMethod::kEL;
  if (text == "jel") return CiMethod::kJEL;
  if (text == "normal") return CiMethod::kNormal;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown interval method '" + std::string(text) + "'");
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
}

ConfidenceInterval normal_ci(const IndexEstimate& estimate,
                             const AsymptoticVariance& variance, double alpha) {
  validate_alpha(alpha);
  const double half = normal_quantile(1.0 - alpha / 2.0) *
                      std::sqrt(std::max(variance.sigma_sq, 0.0) /
                                static_cast<double>(estimate.n));
  ConfidenceInterval ci;
  ci.method = CiMethod::kNormal;
  ci.level = 1.0 - alpha;
  ci.center = estimate.value;
  ci.lower = std::max(estimate.value - half, 0.0);
  ci.upper = std::min(estimate.value + half, 1.0);
  ci.diagnostics.truncated = (estimate.value - half < 0.0) || (estimate.value + half > 1.0);
  return ci;
}

namespace {

struct Endpoint {
  double value = 0.0;
  bool at_feasibility_edge = false;
  bool truncated = false;
};

// Walk from `center` in direction `dir` (+1/-1) until the ratio exceeds the
// critical value, then bisect. `inside` always holds an accepted point.
Endpoint find_endpoint(const std::function<double(double)>& log_ratio, double center,
                       double critical, int dir, const InversionOptions& opt,
                       IntervalDiagnostics& diag) {
  const double bound = dir > 0 ? 1.0 : 0.0;
  double step = std::max(0.25 * std::abs(center), 0.01);
  double inside = center;
  double outside = center;
  double outside_ratio = 0.0;
  bool bracketed = false;
  for (int k = 0; k < opt.max_expansions; ++k) {
    double candidate = center + dir * step;
    if ((dir > 0 && candidate >= bound) || (dir < 0 && candidate <= bound)) {
      candidate = bound;
    }
    const double r = log_ratio(candidate);
    ++diag.evaluations;
    ++diag.bracket_expansions;
    if (!(r <= critical)) {
      outside = candidate;
      outside_ratio = r;
      bracketed = true;
      break;
    }
    inside = candidate;
    if (candidate == bound) {
      return {bound, false, true};
    }
    step *= 2.0;
  }
  if (!bracketed) {
    return {inside, false, false};
  }

  double inside_ratio = 0.0;
  bool outside_infinite = std::isinf(outside_ratio);
  for (int it = 0; it < 200; ++it) {
    if (std::abs(outside - inside) <= opt.tolerance) break;
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    const double r = log_ratio(mid);
    ++diag.evaluations;
    ++diag.bisection_steps;
    if (r <= critical) {
      inside = mid;
      inside_ratio = r;
    } else {
      outside = mid;
      outside_infinite = std::isinf(r);
    }
  }
  // A finite crossing leaves the inner ratio close to the critical value; a
  // jump straight to +inf marks the edge of the feasible region.
  const bool edge = outside_infinite && inside_ratio < critical - 1e-3;
  return {inside, edge, false};
}

}  // namespace

ConfidenceInterval invert_log_ratio(const std::function<double(double)>& log_ratio,
                                    double center, double critical,
                                    InversionOptions options) {
  ConfidenceInterval ci;
  ci.center = center;
  const Endpoint lo = find_endpoint(log_ratio, center, critical, -1, options, ci.diagnostics);
  const Endpoint hi = find_endpoint(log_ratio, center, critical, +1, options, ci.diagnostics);
  ci.lower = std::clamp(lo.value, 0.0, 1.0);
  ci.upper = std::clamp(hi.value, 0.0, 1.0);
  ci.diagnostics.infeasible_endpoints = lo.at_feasibility_edge || hi.at_feasibility_edge;
  ci.diagnostics.truncated = lo.truncated || hi.truncated;
  return ci;
}

}  // namespace povindex
