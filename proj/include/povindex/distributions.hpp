#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "povindex/estimators.hpp"
#include "povindex/philox.hpp"
#include "povindex/sample.hpp"

namespace povindex {

enum class Family { kExponential, kPareto, kLogNormal };

// Exponential(rate), Pareto(scale k, shape alpha) with survival (k/x)^alpha
// on x >= k, LogNormal(mu, sigma).
struct DistributionSpec {
  Family family = Family::kExponential;
  double p1 = 1.0;  // rate | scale k | mu
  double p2 = 0.0;  // unused | shape alpha | sigma

  static DistributionSpec exponential(double rate);
  static DistributionSpec pareto(double scale, double shape);
  static DistributionSpec lognormal(double mu, double sigma);

  // "exponential(2)", "pareto(1,2)", "lognormal(0,1)"
  static DistributionSpec parse(std::string_view text);
  std::string label() const;       // same syntax as parse()
  std::string family_name() const;
  std::string params() const;      // "2", "1;2"

  void validate() const;
  double cdf(double x) const;
  double density(double x) const;
  double quantile(double u) const;
  // Lower end of the support.
  double support_min() const;

  bool operator==(const DistributionSpec&) const = default;
};

// Inverse-CDF draw of n incomes.
IncomeSample sample(const DistributionSpec& dist, std::size_t n, Philox4x32& rng);

// Population index by adaptive quadrature of the defining integral on [0, z]
// (absolute tolerance 1e-10). Sen throws kZeroPoorMass when F(z) <= 1e-12.
double true_index(const DistributionSpec& dist, double z, IndexKind kind);

}  // namespace povindex
