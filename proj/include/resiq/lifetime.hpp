#pragma once

#include <string>
#include <variant>
#include <vector>

#include "resiq/rng.hpp"

namespace resiq {

struct Exponential {
    double rate; // failures per time unit
};

struct Weibull {
    double shape;
    double scale; // time units
};

struct Gamma {
    double shape;
    double rate; // 1 / time units
};

struct Lognormal {
    double log_mean;
    double log_sd;
};

/// Parametric time-to-failure law over [0, inf). Parameters are validated
/// at construction; instances are immutable and safe to share across
/// threads.
///
/// reliability() is the primitive for each family and cdf() is defined as
/// its literal complement, so cdf(t) + reliability(t) == 1 holds exactly
/// in floating point.
class LifetimeDistribution {
  public:
    using Family = std::variant<Exponential, Weibull, Gamma, Lognormal>;

    explicit LifetimeDistribution(Family family);

    static LifetimeDistribution exponential(double rate);
    static LifetimeDistribution weibull(double shape, double scale);
    static LifetimeDistribution gamma(double shape, double rate);
    static LifetimeDistribution lognormal(double log_mean, double log_sd);

    const Family& family() const { return family_; }
    std::string family_name() const;

    /// R(t) = Pr(ttf > t). Throws std::domain_error for t < 0.
    double reliability(double t) const;

    /// F(t) = 1 - R(t), computed as the complement.
    double cdf(double t) const;

    /// Density; may be +inf at t = 0 for shape < 1 (Weibull, Gamma).
    double pdf(double t) const;

    /// pdf / reliability; throws SingularityError once reliability has
    /// underflowed (below 1e-300).
    double hazard(double t) const;

    /// Inverse CDF for p in [0, 1). Closed form for Exponential and
    /// Weibull; bracketed root find on the CDF for Gamma and Lognormal,
    /// converged to 1e-12 relative.
    double quantile(double p) const;

    /// Analytic mean (all four families have one).
    double mean() const;

    /// One inverse-transform draw.
    double sample(RandomStream& rng) const;

  private:
    Family family_;
};

struct ConstantHazard {
    double rate; // > 0
};

/// c * u^exponent over segment-local time u. exponent in (-1, 0) gives a
/// burn-in (decreasing) law with integrable singularity at the segment
/// start; exponent > 0 gives a wear-out law.
struct PowerHazard {
    double c;
    double exponent;
};

using HazardLaw = std::variant<ConstantHazard, PowerHazard>;

struct BathtubSegment {
    double start;
    HazardLaw law;
};

/// Piecewise hazard profile. The hazard itself may jump at segment
/// boundaries; the integrated hazard H(t) is continuous by construction
/// (each segment integrates from its own start).
class BathtubProfile {
  public:
    explicit BathtubProfile(std::vector<BathtubSegment> segments);

    const std::vector<BathtubSegment>& segments() const { return segments_; }

    /// Instantaneous hazard; for a segment with negative exponent this
    /// diverges at the segment start itself.
    double hazard(double t) const;

    /// H(t): piecewise closed-form integral, continuous in t.
    double cumulative_hazard(double t) const;

    /// R(t) = exp(-H(t)).
    double reliability(double t) const;

  private:
    std::vector<BathtubSegment> segments_;
    std::vector<double> boundary_hazard_; // H at each segment start
};

} // namespace resiq
