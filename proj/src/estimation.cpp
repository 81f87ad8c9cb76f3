#include "resiq/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "resiq/error.hpp"
#include "resiq/numeric.hpp"

namespace resiq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kShapeCapLog = 13.815510557964274; // ln 1e6
constexpr double kShapeFloorLog = -9.210340371976182; // ln 1e-4

double chi2_quantile(double p, double dof)
{
    return LifetimeDistribution::gamma(0.5 * dof, 0.5).quantile(p);
}

double log_sum_exp(const std::vector<double>& values)
{
    const double m = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(m)) return m;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - m);
    return m + std::log(sum);
}

void require_min_events(const ObservedEvents& obs, std::size_t required, const char* what)
{
    if (obs.size() < required) {
        throw InsufficientDataError(std::string(what) + " needs at least " +
                                        std::to_string(required) + " failures, got " +
                                        std::to_string(obs.size()),
                                    obs.size(), required);
    }
}

double finish_aic(FitResult& result)
{
    result.aic = 2.0 * static_cast<double>(result.n_parameters) - 2.0 * result.log_likelihood;
    return result.aic;
}

// iid log-likelihood of gaps; also the GRP conditional likelihood at q = 0.
double iid_log_likelihood(const std::vector<double>& gaps, const LifetimeDistribution& dist)
{
    double ll = 0.0;
    for (double x : gaps) {
        const double density = dist.pdf(x);
        if (!(density > 0.0) || !std::isfinite(density)) return kNegInf;
        ll += std::log(density);
    }
    return ll;
}

double crow_log_likelihood(const std::vector<double>& times, double end, double lambda,
                           double beta)
{
    const double n = static_cast<double>(times.size());
    double sum_log = 0.0;
    for (double t : times) sum_log += std::log(t);
    return n * (std::log(lambda) + std::log(beta)) + (beta - 1.0) * sum_log -
           lambda * std::pow(end, beta);
}

struct ProfileFit {
    double shape = 0.0;
    double scale_like = 0.0; // scale (Weibull) or rate (Gamma)
    int iterations = 0;
    double bracket_width = 0.0;
    bool hit_cap = false;
};

// Maximize a shape-profiled log-likelihood over ln(shape) with an
// expanding bracket; hitting the upper cap signals near-deterministic data.
ProfileFit maximize_profile(const std::function<double(double)>& profile_ll)
{
    double lo = std::log(0.05);
    double hi = std::log(20.0);
    auto objective = [&](double u) { return profile_ll(std::exp(u)); };

    ProfileFit fit;
    for (int expansion = 0; expansion < 20; ++expansion) {
        const ScalarMaxResult best = maximize_scalar(objective, lo, hi, 1e-9, 300);
        fit.iterations += best.iterations;
        fit.bracket_width = best.bracket_width;
        const double margin = 1e-3 * (hi - lo);
        if (best.x <= lo + margin && lo > kShapeFloorLog) {
            lo = std::max(lo - 2.0, kShapeFloorLog);
            continue;
        }
        if (best.x >= hi - margin && hi < kShapeCapLog) {
            hi = std::min(hi + 2.0, kShapeCapLog);
            continue;
        }
        fit.shape = std::exp(best.x);
        fit.hit_cap = best.x >= kShapeCapLog - margin;
        return fit;
    }
    fit.shape = std::exp(kShapeCapLog);
    fit.hit_cap = true;
    return fit;
}

} // namespace

std::string to_string(Truncation truncation)
{
    return truncation == Truncation::Time ? "time" : "failure";
}

std::string to_string(DistFamily family)
{
    switch (family) {
        case DistFamily::Exponential: return "exponential";
        case DistFamily::Weibull: return "weibull";
        case DistFamily::Gamma: return "gamma";
        case DistFamily::Lognormal: return "lognormal";
    }
    return "unknown";
}

ObservedEvents::ObservedEvents(std::vector<double> failure_times, double observation_end,
                               Truncation truncation)
    : failure_times_(std::move(failure_times)),
      observation_end_(observation_end),
      truncation_(truncation)
{
    double prev = 0.0;
    for (double t : failure_times_) {
        if (!(t > prev)) {
            throw DataError("failure times must be strictly increasing and positive");
        }
        prev = t;
    }
    if (!(observation_end_ > 0.0) || !std::isfinite(observation_end_)) {
        throw DataError("observation end must be positive and finite");
    }
    if (!failure_times_.empty() && failure_times_.back() > observation_end_) {
        throw DataError("observation end precedes the last failure");
    }
}

std::vector<double> ObservedEvents::gaps() const
{
    std::vector<double> result;
    result.reserve(failure_times_.size());
    double prev = 0.0;
    for (double t : failure_times_) {
        result.push_back(t - prev);
        prev = t;
    }
    return result;
}

FitResult fit_hpp(const ObservedEvents& obs)
{
    require_min_events(obs, 1, "HPP fit");
    const double n = static_cast<double>(obs.size());
    const double rate = n / obs.observation_end();

    FitResult result{PointProcessModel::hpp(rate), {{"rate", rate}}, 0.0, 1, 0.0, {}};
    result.log_likelihood = n * std::log(rate) - rate * obs.observation_end();
    result.diagnostics.notes.push_back("closed-form MLE rate = n / T");
    finish_aic(result);
    return result;
}

FitResult fit_crow_amsaa(const ObservedEvents& obs)
{
    require_min_events(obs, 3, "Crow-AMSAA fit");
    const auto& times = obs.failure_times();
    const std::size_t n = times.size();
    const double end = obs.truncation() == Truncation::Time ? obs.observation_end()
                                                            : times.back();

    double beta = 0.0;
    FitDiagnostics diagnostics;
    if (obs.truncation() == Truncation::Time) {
        double sum = 0.0;
        for (double t : times) {
            if (t == end) {
                throw DataError(
                    "failure time equals the observation end; the log is "
                    "failure-truncated, set the truncation accordingly");
            }
            sum += std::log(end / t);
        }
        beta = static_cast<double>(n) / sum;
        diagnostics.notes.push_back("time-truncated MLE (n-numerator)");
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            sum += std::log(end / times[i]);
        }
        if (sum <= 0.0) {
            throw DataError("degenerate failure-truncated log: all failures at the end time");
        }
        beta = static_cast<double>(n - 1) / sum;
        diagnostics.notes.push_back("failure-truncated conditional MLE (n-1 numerator)");
    }
    const double lambda = static_cast<double>(n) / std::pow(end, beta);

    // 90% confidence interval on beta drives the trend classification.
    const double dof =
        2.0 * static_cast<double>(obs.truncation() == Truncation::Time ? n : n - 1);
    const double lower = beta * chi2_quantile(0.05, dof) / dof;
    const double upper = beta * chi2_quantile(0.95, dof) / dof;
    if (lower > 1.0) {
        diagnostics.notes.push_back("trend: deteriorating (beta 90% CI above 1)");
    } else if (upper < 1.0) {
        diagnostics.notes.push_back("trend: improving (beta 90% CI below 1)");
    } else {
        diagnostics.notes.push_back("trend: none (beta 90% CI contains 1; HPP-compatible)");
    }

    FitResult result{PointProcessModel::nhpp(PowerLawRocof{lambda, beta}),
                     {{"lambda", lambda}, {"beta", beta}},
                     crow_log_likelihood(times, end, lambda, beta),
                     2,
                     0.0,
                     std::move(diagnostics)};
    finish_aic(result);
    return result;
}

FitResult fit_renewal(const ObservedEvents& obs, DistFamily family)
{
    require_min_events(obs, 3, "renewal fit");
    const std::vector<double> gaps = obs.gaps();
    const double n = static_cast<double>(gaps.size());
    const double sum = std::accumulate(gaps.begin(), gaps.end(), 0.0);
    double sum_log = 0.0;
    for (double x : gaps) sum_log += std::log(x);

    FitResult result{PointProcessModel::hpp(1.0), {}, 0.0, 0, 0.0, {}};
    if (obs.truncation() == Truncation::Time) {
        result.diagnostics.notes.push_back(
            "censored wait after the last failure is ignored by the gap likelihood");
    }

    switch (family) {
        case DistFamily::Exponential: {
            const double rate = n / sum;
            LifetimeDistribution dist = LifetimeDistribution::exponential(rate);
            result.model = PointProcessModel::renewal(dist);
            result.parameters = {{"rate", rate}};
            result.n_parameters = 1;
            result.log_likelihood = iid_log_likelihood(gaps, dist);
            result.diagnostics.notes.push_back("closed-form MLE rate = n / sum(gaps)");
            break;
        }
        case DistFamily::Weibull: {
            auto profile = [&](double shape) {
                std::vector<double> scaled(gaps.size());
                for (std::size_t i = 0; i < gaps.size(); ++i) {
                    scaled[i] = shape * std::log(gaps[i]);
                }
                const double log_scale = (log_sum_exp(scaled) - std::log(n)) / shape;
                return n * std::log(shape) + (shape - 1.0) * sum_log -
                       n * shape * log_scale - n;
            };
            const ProfileFit fit = maximize_profile(profile);
            std::vector<double> scaled(gaps.size());
            for (std::size_t i = 0; i < gaps.size(); ++i) {
                scaled[i] = fit.shape * std::log(gaps[i]);
            }
            const double scale = std::exp((log_sum_exp(scaled) - std::log(n)) / fit.shape);
            LifetimeDistribution dist = LifetimeDistribution::weibull(fit.shape, scale);
            result.model = PointProcessModel::renewal(dist);
            result.parameters = {{"shape", fit.shape}, {"scale", scale}};
            result.n_parameters = 2;
            result.log_likelihood = iid_log_likelihood(gaps, dist);
            result.diagnostics.iterations = fit.iterations;
            result.diagnostics.bracket_width = fit.bracket_width;
            if (fit.hit_cap) {
                result.diagnostics.notes.push_back(
                    "near_deterministic_data: shape estimate diverged to the search cap; "
                    "gaps have (almost) zero variance");
            }
            break;
        }
        case DistFamily::Gamma: {
            const double mean = sum / n;
            auto profile = [&](double shape) {
                const double rate = shape / mean;
                return n * shape * std::log(rate) - n * std::lgamma(shape) +
                       (shape - 1.0) * sum_log - rate * sum;
            };
            const ProfileFit fit = maximize_profile(profile);
            const double rate = fit.shape / mean;
            LifetimeDistribution dist = LifetimeDistribution::gamma(fit.shape, rate);
            result.model = PointProcessModel::renewal(dist);
            result.parameters = {{"shape", fit.shape}, {"rate", rate}};
            result.n_parameters = 2;
            result.log_likelihood = iid_log_likelihood(gaps, dist);
            result.diagnostics.iterations = fit.iterations;
            result.diagnostics.bracket_width = fit.bracket_width;
            if (fit.hit_cap) {
                result.diagnostics.notes.push_back(
                    "near_deterministic_data: shape estimate diverged to the search cap; "
                    "gaps have (almost) zero variance");
            }
            break;
        }
        case DistFamily::Lognormal: {
            const double mu = sum_log / n;
            double ss = 0.0;
            for (double x : gaps) {
                const double d = std::log(x) - mu;
                ss += d * d;
            }
            const double sigma = std::sqrt(ss / n);
            if (!(sigma > 1e-12)) {
                throw DataError(
                    "near_deterministic_data: log-gaps have zero variance, the lognormal "
                    "MLE degenerates");
            }
            LifetimeDistribution dist = LifetimeDistribution::lognormal(mu, sigma);
            result.model = PointProcessModel::renewal(dist);
            result.parameters = {{"log_mean", mu}, {"log_sd", sigma}};
            result.n_parameters = 2;
            result.log_likelihood = iid_log_likelihood(gaps, dist);
            result.diagnostics.notes.push_back("closed-form lognormal MLE");
            break;
        }
    }
    finish_aic(result);
    return result;
}

double grp_log_likelihood(const std::vector<double>& gaps, const LifetimeDistribution& ttf,
                          double q, KijimaVariant variant)
{
    double ll = 0.0;
    double age = 0.0;
    for (double x : gaps) {
        if (!(x > 0.0)) throw std::domain_error("gaps must be positive");
        const double survival = ttf.reliability(age);
        if (!(survival > 0.0)) return kNegInf;
        const double density = ttf.pdf(age + x);
        if (!(density > 0.0) || !std::isfinite(density)) return kNegInf;
        ll += std::log(density) - std::log(survival);
        const double next =
            variant == KijimaVariant::TypeI ? age + q * x : q * (age + x);
        age = std::max(next, 0.0);
    }
    return ll;
}

namespace {

LifetimeDistribution make_distribution(DistFamily family, const std::vector<double>& params)
{
    switch (family) {
        case DistFamily::Exponential:
            return LifetimeDistribution::exponential(std::exp(params[0]));
        case DistFamily::Weibull:
            return LifetimeDistribution::weibull(std::exp(params[0]), std::exp(params[1]));
        case DistFamily::Gamma:
            return LifetimeDistribution::gamma(std::exp(params[0]), std::exp(params[1]));
        case DistFamily::Lognormal:
            return LifetimeDistribution::lognormal(params[0], std::exp(params[1]));
    }
    throw std::logic_error("unreachable");
}

std::vector<double> renewal_start_point(const FitResult& renewal, DistFamily family)
{
    switch (family) {
        case DistFamily::Exponential:
            return {std::log(renewal.parameters.at("rate"))};
        case DistFamily::Weibull:
            return {std::log(renewal.parameters.at("shape")),
                    std::log(renewal.parameters.at("scale"))};
        case DistFamily::Gamma:
            return {std::log(renewal.parameters.at("shape")),
                    std::log(renewal.parameters.at("rate"))};
        case DistFamily::Lognormal:
            return {renewal.parameters.at("log_mean"),
                    std::log(renewal.parameters.at("log_sd"))};
    }
    throw std::logic_error("unreachable");
}

std::map<std::string, double> named_parameters(DistFamily family,
                                               const LifetimeDistribution& dist)
{
    std::map<std::string, double> out;
    switch (family) {
        case DistFamily::Exponential:
            out["rate"] = std::get<Exponential>(dist.family()).rate;
            break;
        case DistFamily::Weibull:
            out["shape"] = std::get<Weibull>(dist.family()).shape;
            out["scale"] = std::get<Weibull>(dist.family()).scale;
            break;
        case DistFamily::Gamma:
            out["shape"] = std::get<Gamma>(dist.family()).shape;
            out["rate"] = std::get<Gamma>(dist.family()).rate;
            break;
        case DistFamily::Lognormal:
            out["log_mean"] = std::get<Lognormal>(dist.family()).log_mean;
            out["log_sd"] = std::get<Lognormal>(dist.family()).log_sd;
            break;
    }
    return out;
}

} // namespace

FitResult fit_grp(const ObservedEvents& obs, DistFamily family, const GrpFitOptions& options)
{
    require_min_events(obs, 5, "GRP fit");
    if (!(options.q_min <= options.q_max)) {
        throw std::invalid_argument("GRP fit: q_min must not exceed q_max");
    }
    const std::vector<double> gaps = obs.gaps();
    const double n = static_cast<double>(gaps.size());

    if (family == DistFamily::Exponential) {
        // Memoryless ttf: the conditional likelihood does not depend on q.
        const double sum = std::accumulate(gaps.begin(), gaps.end(), 0.0);
        const double rate = n / sum;
        LifetimeDistribution dist = LifetimeDistribution::exponential(rate);
        const double q_hat = options.fixed_q.value_or(0.0);
        FitResult result{PointProcessModel::grp(dist, q_hat, options.variant),
                         {{"rate", rate}, {"q", q_hat}},
                         grp_log_likelihood(gaps, dist, q_hat, options.variant),
                         2,
                         0.0,
                         {}};
        result.diagnostics.notes.push_back(
            "q_unidentifiable: likelihood is flat in q under an exponential ttf; "
            "the fit reduces to the renewal process");
        finish_aic(result);
        return result;
    }

    const FitResult renewal = fit_renewal(obs, family);
    const std::vector<double> start = renewal_start_point(renewal, family);

    FitDiagnostics diagnostics;
    auto inner = [&](double q) {
        SimplexResult best = maximize_simplex(
            [&](const std::vector<double>& p) {
                return grp_log_likelihood(gaps, make_distribution(family, p), q,
                                          options.variant);
            },
            start, 0.3, 1e-9, 2500);
        diagnostics.iterations += best.iterations;
        return best;
    };

    double q_hat = 0.0;
    SimplexResult best_inner;
    if (options.fixed_q) {
        q_hat = *options.fixed_q;
        best_inner = inner(q_hat);
    } else {
        constexpr int kGridPoints = 21;
        double best_ll = kNegInf;
        double flat_min = std::numeric_limits<double>::infinity();
        double flat_max = kNegInf;
        for (int i = 0; i < kGridPoints; ++i) {
            const double q = options.q_min + (options.q_max - options.q_min) *
                                                 static_cast<double>(i) /
                                                 static_cast<double>(kGridPoints - 1);
            const SimplexResult r = inner(q);
            flat_min = std::min(flat_min, r.fx);
            flat_max = std::max(flat_max, r.fx);
            if (r.fx > best_ll) {
                best_ll = r.fx;
                q_hat = q;
                best_inner = r;
            }
        }
        if (flat_max - flat_min < 1e-9) {
            diagnostics.notes.push_back(
                "q_unidentifiable: likelihood is flat in q across the search range");
            q_hat = 0.0;
            best_inner = inner(q_hat);
        } else {
            const double step = (options.q_max - options.q_min) /
                                static_cast<double>(kGridPoints - 1);
            const double lo = std::max(options.q_min, q_hat - step);
            const double hi = std::min(options.q_max, q_hat + step);
            const ScalarMaxResult refined = maximize_scalar(
                [&](double q) { return inner(q).fx; }, lo, hi, 1e-6, 100);
            diagnostics.bracket_width = refined.bracket_width;
            if (refined.fx >= best_ll) {
                q_hat = refined.x;
                best_inner = inner(q_hat);
            }
        }
    }
    if (!best_inner.converged) {
        diagnostics.notes.push_back("inner simplex hit its iteration cap");
    }
    diagnostics.notes.push_back("q searched on [" + std::to_string(options.q_min) + ", " +
                                std::to_string(options.q_max) + "]");

    LifetimeDistribution dist = make_distribution(family, best_inner.x);
    FitResult result{PointProcessModel::grp(dist, q_hat, options.variant),
                     named_parameters(family, dist),
                     grp_log_likelihood(gaps, dist, q_hat, options.variant),
                     named_parameters(family, dist).size() + 1,
                     0.0,
                     std::move(diagnostics)};
    result.parameters["q"] = q_hat;
    finish_aic(result);
    return result;
}

std::string CandidateSpec::name() const
{
    switch (kind) {
        case Kind::Hpp: return "hpp";
        case Kind::CrowAmsaa: return "crow_amsaa";
        case Kind::Renewal: return "rp_" + to_string(family);
        case Kind::Grp: {
            std::string base = "grp_" + to_string(family);
            if (variant == KijimaVariant::TypeII) base += "_kijima2";
            return base;
        }
    }
    return "unknown";
}

CandidateSpec CandidateSpec::parse(const std::string& name)
{
    auto parse_family = [](const std::string& text) {
        if (text == "exponential") return DistFamily::Exponential;
        if (text == "weibull") return DistFamily::Weibull;
        if (text == "gamma") return DistFamily::Gamma;
        if (text == "lognormal") return DistFamily::Lognormal;
        throw ConfigError("unknown distribution family '" + text + "'");
    };

    CandidateSpec spec;
    if (name == "hpp") {
        spec.kind = Kind::Hpp;
        return spec;
    }
    if (name == "crow_amsaa") {
        spec.kind = Kind::CrowAmsaa;
        return spec;
    }
    if (name.rfind("rp_", 0) == 0) {
        spec.kind = Kind::Renewal;
        spec.family = parse_family(name.substr(3));
        return spec;
    }
    if (name.rfind("grp_", 0) == 0) {
        spec.kind = Kind::Grp;
        std::string rest = name.substr(4);
        if (rest.size() > 8 && rest.substr(rest.size() - 8) == "_kijima2") {
            spec.variant = KijimaVariant::TypeII;
            rest = rest.substr(0, rest.size() - 8);
        } else if (rest.size() > 8 && rest.substr(rest.size() - 8) == "_kijima1") {
            rest = rest.substr(0, rest.size() - 8);
        }
        spec.family = parse_family(rest);
        return spec;
    }
    throw ConfigError("unknown model candidate '" + name + "'");
}

std::vector<RankedFit> model_select(const ObservedEvents& obs,
                                    const std::vector<CandidateSpec>& candidates)
{
    if (candidates.empty()) {
        throw std::domain_error("model selection needs at least one candidate");
    }
    std::vector<RankedFit> ranked;
    ranked.reserve(candidates.size());
    for (const auto& candidate : candidates) {
        RankedFit entry{candidate, std::nullopt, ""};
        try {
            switch (candidate.kind) {
                case CandidateSpec::Kind::Hpp: entry.fit = fit_hpp(obs); break;
                case CandidateSpec::Kind::CrowAmsaa: entry.fit = fit_crow_amsaa(obs); break;
                case CandidateSpec::Kind::Renewal:
                    entry.fit = fit_renewal(obs, candidate.family);
                    break;
                case CandidateSpec::Kind::Grp: {
                    GrpFitOptions options;
                    options.variant = candidate.variant;
                    entry.fit = fit_grp(obs, candidate.family, options);
                    break;
                }
            }
        } catch (const std::exception& error) {
            entry.error = error.what();
        }
        ranked.push_back(std::move(entry));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedFit& a, const RankedFit& b) {
        if (a.fit.has_value() != b.fit.has_value()) return a.fit.has_value();
        if (!a.fit) return false;
        if (std::abs(a.fit->aic - b.fit->aic) > 1e-12) return a.fit->aic < b.fit->aic;
        return a.fit->n_parameters < b.fit->n_parameters;
    });
    return ranked;
}

} // namespace resiq
