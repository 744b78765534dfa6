#include "povindex/distributions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "povindex/errors.hpp"
#include "povindex/normal.hpp"

namespace povindex {
namespace {

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

DistributionSpec DistributionSpec::exponential(double rate) {
  DistributionSpec d{Family::kExponential, rate, 0.0};
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::pareto(double scale, double shape) {
  DistributionSpec d{Family::kPareto, scale, shape};
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::lognormal(double mu, double sigma) {
  DistributionSpec d{Family::kLogNormal, mu, sigma};
  d.validate();
  return d;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw Error(ErrorCode::kConfigError,
                "distribution must look like family(params): '" + std::string(text) + "'");
  }
  std::string name(trim(text.substr(0, open)));
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::string_view inner = text.substr(open + 1, close - open - 1);
  std::vector<double> params;
  while (!inner.empty()) {
    const auto comma = inner.find(',');
    const std::string_view tok = trim(inner.substr(0, comma));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "bad distribution parameter '" + std::string(tok) + "'");
    }
    params.push_back(v);
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  try {
    if (name == "exponential" && params.size() == 1) return exponential(params[0]);
    if (name == "pareto" && params.size() == 2) return pareto(params[0], params[1]);
    if (name == "lognormal" && params.size() == 2) return lognormal(params[0], params[1]);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  throw Error(ErrorCode::kConfigError, "unknown distribution '" + std::string(text) +
                                           "' (expected exponential(rate), pareto(k,alpha) "
                                           "or lognormal(mu,sigma))");
}

std::string DistributionSpec::family_name() const {
  switch (family) {
    case Family::kExponential: return "exponential";
    case Family::kPareto: return "pareto";
    case Family::kLogNormal: return "lognormal";
  }
  return "unknown";
}

std::string DistributionSpec::params() const {
  if (family == Family::kExponential) return format_param(p1);
  return format_param(p1) + ";" + format_param(p2);
}

std::string DistributionSpec::label() const {
  if (family == Family::kExponential) return family_name() + "(" + format_param(p1) + ")";
  return family_name() + "(" + format_param(p1) + "," + format_param(p2) + ")";
}

void DistributionSpec::validate() const {
  const bool ok = [&] {
    switch (family) {
      case Family::kExponential: return p1 > 0.0 && std::isfinite(p1);
      case Family::kPareto: return p1 > 0.0 && p2 > 0.0 && std::isfinite(p1) && std::isfinite(p2);
      case Family::kLogNormal: return std::isfinite(p1) && p2 > 0.0 && std::isfinite(p2);
    }
    return false;
  }();
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid parameters for " + label());
}

double DistributionSpec::support_min() const {
  return family == Family::kPareto ? p1 : 0.0;
}

double DistributionSpec::cdf(double x) const {
  switch (family) {
    case Family::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p1 * x);
    case Family::kPareto:
      return x <= p1 ? 0.0 : 1.0 - std::pow(p1 / x, p2);
    case Family::kLogNormal:
      return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - p1) / p2);
  }
  return 0.0;
}

double DistributionSpec::density(double x) const {
  switch (family) {
    case Family::kExponential:
      return x < 0.0 ? 0.0 : p1 * std::exp(-p1 * x);
    case Family::kPareto:
      return x < p1 ? 0.0 : p2 * std::pow(p1, p2) / std::pow(x, p2 + 1.0);
    case Family::kLogNormal: {
      if (x <= 0.0) return 0.0;
      const double t = (std::log(x) - p1) / p2;
      return std::exp(-0.5 * t * t) / (x * p2 * std::sqrt(2.0 * std::numbers::pi));
    }
  }
  return 0.0;
}

double DistributionSpec::quantile(double u) const {
  switch (family) {
    case Family::kExponential:
      return -std::log1p(-u) / p1;
    case Family::kPareto:
      return p1 * std::pow(1.0 - u, -1.0 / p2);
    case Family::kLogNormal:
      return std::exp(p1 + p2 * normal_quantile(u));
  }
  return 0.0;
}

IncomeSample sample(const DistributionSpec& dist, std::size_t n, Philox4x32& rng) {
  std::vector<double> values(n);
  for (auto& v : values) v = dist.quantile(rng.next_open_unit());
  return IncomeSample(std::move(values));
}

double true_index(const DistributionSpec& dist, double z, IndexKind kind) {
  dist.validate();
  PovertyLine line(z);
  const double fz = dist.cdf(z);
  if (kind == IndexKind::kSen && fz <= 1e-12) {
    throw Error(ErrorCode::kZeroPoorMass,
                "Sen index undefined: no probability mass at or below the poverty line");
  }
  const double a = dist.support_min();
  if (a >= z) return 0.0;
  // Beyond this the integrand carries no mass at double precision; without
  // the cap a huge z hides the support from the quadrature nodes.
  const double b = std::min(z, dist.quantile(1.0 - 1e-15));

  using Integrator = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 25;
  constexpr double kRelTol = 1e-13;
  if (kind == IndexKind::kSen) {
    auto f = [&](double x) { return (z - x) * (fz - dist.cdf(x)) * dist.density(x); };
    const double integral = Integrator::integrate(f, a, b, kMaxDepth, kRelTol);
    return 2.0 * integral / (z * fz);
  }
  auto f = [&](double x) { return (z - x) * (1.0 - dist.cdf(x)) * dist.density(x); };
  const double integral = Integrator::integrate(f, a, b, kMaxDepth, kRelTol);
  return 2.0 * integral / z;
}

}  // namespace povindex
