#pragma once

namespace i3kit {

/// Standard normal CDF via erfc; absolute error well below 1e-10.
double normal_cdf(double z);

/// Inverse standard normal CDF for p in (0,1). Rational approximation
/// followed by one Newton refinement against normal_cdf; absolute error
/// below 1.5e-8 across the domain.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a,x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x).
double regularized_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a,b), a,b > 0, x in [0,1].
double regularized_incomplete_beta(double a, double b, double x);

/// Upper tail of the chi-square distribution: P(X >= x) with df >= 1.
double chi_square_sf(double x, int df);

/// Two-sided Student-t p-value for a statistic t with df >= 1.
double t_two_sided_p(double t, int df);

}  // namespace i3kit
