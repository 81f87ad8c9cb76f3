#include "resiq/lifetime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "resiq/error.hpp"
#include "resiq/numeric.hpp"
#include "resiq/special.hpp"

namespace resiq {

namespace {

constexpr double kReliabilityFloor = 1e-300;

void require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

void require_time(double t)
{
    if (!(t >= 0.0)) throw std::domain_error("time must be non-negative");
}

} // namespace

LifetimeDistribution::LifetimeDistribution(Family family) : family_(std::move(family))
{
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                require_positive(f.rate, "exponential rate");
            } else if constexpr (std::is_same_v<T, Weibull>) {
                require_positive(f.shape, "weibull shape");
                require_positive(f.scale, "weibull scale");
            } else if constexpr (std::is_same_v<T, Gamma>) {
                require_positive(f.shape, "gamma shape");
                require_positive(f.rate, "gamma rate");
            } else {
                if (!std::isfinite(f.log_mean)) {
                    throw std::invalid_argument("lognormal log-mean must be finite");
                }
                require_positive(f.log_sd, "lognormal log-sd");
            }
        },
        family_);
}

LifetimeDistribution LifetimeDistribution::exponential(double rate)
{
    return LifetimeDistribution(Exponential{rate});
}

LifetimeDistribution LifetimeDistribution::weibull(double shape, double scale)
{
    return LifetimeDistribution(Weibull{shape, scale});
}

LifetimeDistribution LifetimeDistribution::gamma(double shape, double rate)
{
    return LifetimeDistribution(Gamma{shape, rate});
}

LifetimeDistribution LifetimeDistribution::lognormal(double log_mean, double log_sd)
{
    return LifetimeDistribution(Lognormal{log_mean, log_sd});
}

std::string LifetimeDistribution::family_name() const
{
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) return "exponential";
            if constexpr (std::is_same_v<T, Weibull>) return "weibull";
            if constexpr (std::is_same_v<T, Gamma>) return "gamma";
            return "lognormal";
        },
        family_);
}

double LifetimeDistribution::reliability(double t) const
{
    require_time(t);
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return std::exp(-f.rate * t);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return std::exp(-std::pow(t / f.scale, f.shape));
            } else if constexpr (std::is_same_v<T, Gamma>) {
                return gamma_q(f.shape, f.rate * t);
            } else {
                if (t == 0.0) return 1.0;
                return std_normal_sf((std::log(t) - f.log_mean) / f.log_sd);
            }
        },
        family_);
}

double LifetimeDistribution::cdf(double t) const
{
    return 1.0 - reliability(t);
}

double LifetimeDistribution::pdf(double t) const
{
    require_time(t);
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return f.rate * std::exp(-f.rate * t);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                if (t == 0.0) {
                    if (f.shape > 1.0) return 0.0;
                    if (f.shape == 1.0) return 1.0 / f.scale;
                    return std::numeric_limits<double>::infinity();
                }
                const double z = t / f.scale;
                return (f.shape / f.scale) * std::pow(z, f.shape - 1.0) *
                       std::exp(-std::pow(z, f.shape));
            } else if constexpr (std::is_same_v<T, Gamma>) {
                if (t == 0.0) {
                    if (f.shape > 1.0) return 0.0;
                    if (f.shape == 1.0) return f.rate;
                    return std::numeric_limits<double>::infinity();
                }
                const double x = f.rate * t;
                return f.rate *
                       std::exp((f.shape - 1.0) * std::log(x) - x - std::lgamma(f.shape));
            } else {
                if (t == 0.0) return 0.0;
                const double z = (std::log(t) - f.log_mean) / f.log_sd;
                return std::exp(-0.5 * z * z) / (t * f.log_sd * std::sqrt(2.0 * M_PI));
            }
        },
        family_);
}

double LifetimeDistribution::hazard(double t) const
{
    const double r = reliability(t);
    if (r < kReliabilityFloor) {
        throw SingularityError("hazard undefined: reliability underflowed at t = " +
                               std::to_string(t));
    }
    return pdf(t) / r;
}

double LifetimeDistribution::quantile(double p) const
{
    if (!(p >= 0.0) || p >= 1.0) {
        throw std::domain_error("quantile: probability must lie in [0, 1)");
    }
    if (p == 0.0) return 0.0;
    return std::visit(
        [this, p](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-p) / f.rate;
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return f.scale * std::pow(-std::log1p(-p), 1.0 / f.shape);
            } else {
                // Bracketed root find on the CDF; [0, hi] always brackets
                // once cdf(hi) >= p.
                double hi = mean();
                for (int i = 0; i < 200 && cdf(hi) < p; ++i) {
                    hi *= 2.0;
                }
                return find_root([this, p](double t) { return cdf(t) - p; }, 0.0, hi, 1e-12,
                                 1e-300);
            }
        },
        family_);
}

double LifetimeDistribution::mean() const
{
    return std::visit(
        [](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return 1.0 / f.rate;
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return f.scale * std::tgamma(1.0 + 1.0 / f.shape);
            } else if constexpr (std::is_same_v<T, Gamma>) {
                return f.shape / f.rate;
            } else {
                return std::exp(f.log_mean + 0.5 * f.log_sd * f.log_sd);
            }
        },
        family_);
}

double LifetimeDistribution::sample(RandomStream& rng) const
{
    return quantile(rng.next_uniform());
}

namespace {

double segment_hazard(const HazardLaw& law, double local_t)
{
    return std::visit(
        [local_t](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, ConstantHazard>) {
                return l.rate;
            } else {
                return l.c * std::pow(local_t, l.exponent);
            }
        },
        law);
}

// Closed-form integral of the segment law over [0, local_t].
double segment_integral(const HazardLaw& law, double local_t)
{
    return std::visit(
        [local_t](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, ConstantHazard>) {
                return l.rate * local_t;
            } else {
                return l.c * std::pow(local_t, l.exponent + 1.0) / (l.exponent + 1.0);
            }
        },
        law);
}

void validate_law(const HazardLaw& law)
{
    std::visit(
        [](const auto& l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, ConstantHazard>) {
                require_positive(l.rate, "constant hazard rate");
            } else {
                require_positive(l.c, "power hazard coefficient");
                if (!std::isfinite(l.exponent) || l.exponent <= -1.0) {
                    // exponent <= -1 makes the integrated hazard diverge at the
                    // segment start.
                    throw ModelError("power hazard exponent must exceed -1");
                }
            }
        },
        law);
}

} // namespace

BathtubProfile::BathtubProfile(std::vector<BathtubSegment> segments)
    : segments_(std::move(segments))
{
    if (segments_.empty()) throw std::invalid_argument("bathtub profile needs >= 1 segment");
    if (segments_.front().start != 0.0) {
        throw std::invalid_argument("first bathtub segment must start at t = 0");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        validate_law(segments_[i].law);
        if (i > 0 && !(segments_[i].start > segments_[i - 1].start)) {
            throw std::invalid_argument("bathtub segment starts must be strictly increasing");
        }
    }
    boundary_hazard_.resize(segments_.size(), 0.0);
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        const double span = segments_[i].start - segments_[i - 1].start;
        boundary_hazard_[i] = boundary_hazard_[i - 1] + segment_integral(segments_[i - 1].law, span);
    }
}

double BathtubProfile::hazard(double t) const
{
    require_time(t);
    std::size_t i = segments_.size() - 1;
    while (i > 0 && t < segments_[i].start) --i;
    return segment_hazard(segments_[i].law, t - segments_[i].start);
}

double BathtubProfile::cumulative_hazard(double t) const
{
    require_time(t);
    std::size_t i = segments_.size() - 1;
    while (i > 0 && t < segments_[i].start) --i;
    return boundary_hazard_[i] + segment_integral(segments_[i].law, t - segments_[i].start);
}

double BathtubProfile::reliability(double t) const
{
    return std::exp(-cumulative_hazard(t));
}

} // namespace resiq
