#pragma once

namespace povindex {

// Standard normal CDF via erfc.
double normal_cdf(double x) noexcept;

// Standard normal inverse CDF. Acklam's rational approximation followed by one
// Halley refinement step; accurate well beyond 1e-9 on (0, 1).
// Returns -inf / +inf at p = 0 / 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

// Upper-(1 - alpha) quantile of chi-square with one degree of freedom,
// i.e. Phi^{-1}(1 - alpha/2)^2.
double chi_square1_quantile(double level) noexcept;

}  // namespace povindex
