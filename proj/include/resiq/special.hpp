#pragma once

namespace resiq {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly in the regime where P would cancel.
double gamma_q(double a, double x);

/// Standard normal CDF.
double std_normal_cdf(double z);

/// Standard normal survival function 1 - Phi(z), accurate in the far tail.
double std_normal_sf(double z);

} // namespace resiq
