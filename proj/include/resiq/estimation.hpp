#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resiq/pointproc.hpp"

namespace resiq {

enum class Truncation { Time, Failure };

std::string to_string(Truncation truncation);

/// An observed failure log: strictly increasing positive failure times and
/// the observation end. Time-truncated data was watched until T regardless
/// of failures; failure-truncated data ends at the last failure.
class ObservedEvents {
  public:
    ObservedEvents(std::vector<double> failure_times, double observation_end,
                   Truncation truncation);

    const std::vector<double>& failure_times() const { return failure_times_; }
    double observation_end() const { return observation_end_; }
    Truncation truncation() const { return truncation_; }
    std::size_t size() const { return failure_times_.size(); }

    /// Inter-arrival gaps, the first measured from t = 0. Any wait beyond
    /// the final failure is ignored by the renewal-style fits.
    std::vector<double> gaps() const;

  private:
    std::vector<double> failure_times_;
    double observation_end_;
    Truncation truncation_;
};

enum class DistFamily { Exponential, Weibull, Gamma, Lognormal };

std::string to_string(DistFamily family);

struct FitDiagnostics {
    int iterations = 0;
    double bracket_width = 0.0;
    std::vector<std::string> notes;
};

struct FitResult {
    PointProcessModel model;
    std::map<std::string, double> parameters; // named, in model terms
    double log_likelihood = 0.0;
    std::size_t n_parameters = 0;
    double aic = 0.0; // 2k - 2 log L
    FitDiagnostics diagnostics;
};

/// Closed-form Poisson-process MLE: rate = n / T.
FitResult fit_hpp(const ObservedEvents& obs);

/// Power-law NHPP (reliability growth) MLE. Time-truncated:
/// beta = n / sum ln(T/t_i), lambda = n / T^beta. Failure-truncated data
/// uses the conditional (n-1)-numerator convention, recorded in the
/// diagnostics. A 90% confidence interval on beta drives a trend note
/// (improving / deteriorating / none).
FitResult fit_crow_amsaa(const ObservedEvents& obs);

/// Renewal-process fit: maximum likelihood on iid inter-arrival gaps.
/// Exponential and Lognormal are closed form; Weibull and Gamma maximize
/// the profile likelihood over the shape.
FitResult fit_renewal(const ObservedEvents& obs, DistFamily family);

struct GrpFitOptions {
    double q_min = 0.0;
    double q_max = 2.0;
    std::optional<double> fixed_q;
    KijimaVariant variant = KijimaVariant::TypeI;
};

/// GRP fit: maximizes the conditional likelihood
///   sum_i [ ln f(v_{i-1} + x_i) - ln R(v_{i-1}) ]
/// over the family parameters and q, with v the Kijima recursion. q is
/// searched on [q_min, q_max] by grid-then-refine. An exponential family
/// makes the likelihood flat in q; the fit then reduces to the renewal
/// fit with a q-unidentifiable diagnostic.
FitResult fit_grp(const ObservedEvents& obs, DistFamily family, const GrpFitOptions& options = {});

/// Conditional GRP log-likelihood of the observed gaps for given
/// parameters; -inf where the parameters cannot produce the data.
double grp_log_likelihood(const std::vector<double>& gaps, const LifetimeDistribution& ttf,
                          double q, KijimaVariant variant);

struct CandidateSpec {
    enum class Kind { Hpp, CrowAmsaa, Renewal, Grp };

    Kind kind = Kind::Hpp;
    DistFamily family = DistFamily::Exponential; // Renewal / Grp
    KijimaVariant variant = KijimaVariant::TypeI; // Grp

    std::string name() const;
    static CandidateSpec parse(const std::string& name);
};

struct RankedFit {
    CandidateSpec candidate;
    std::optional<FitResult> fit; // empty when the candidate failed
    std::string error;
};

/// Fits every candidate and ranks by ascending AIC, ties broken toward
/// fewer parameters. Per-candidate failures are recorded, not fatal.
std::vector<RankedFit> model_select(const ObservedEvents& obs,
                                    const std::vector<CandidateSpec>& candidates);

} // namespace resiq
