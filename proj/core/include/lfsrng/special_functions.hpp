#pragma once

namespace lfsrng {

/// Regularized lower incomplete gamma P(a, x).
double igam(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
/// Series below x = a + 1, Lentz continued fraction above.
double igamc(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace lfsrng
