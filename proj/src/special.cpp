#include "resiq/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "resiq/error.hpp"

namespace resiq {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-16;
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

// Lower incomplete gamma by series, valid for x < a + 1.
double gamma_p_series(double a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a + 1.
double gamma_q_cf(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

} // namespace

double gamma_p(double a, double x)
{
    if (!(a > 0.0)) throw std::invalid_argument("gamma_p: shape must be positive");
    if (x < 0.0) throw std::domain_error("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x)
{
    if (!(a > 0.0)) throw std::invalid_argument("gamma_q: shape must be positive");
    if (x < 0.0) throw std::domain_error("gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double std_normal_cdf(double z)
{
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

double std_normal_sf(double z)
{
    return 0.5 * std::erfc(z * M_SQRT1_2);
}

} // namespace resiq
