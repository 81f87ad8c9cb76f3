#include "resiq/risk.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "resiq/error.hpp"
#include "resiq/numeric.hpp"

namespace resiq {

Scenario::Scenario(std::string id, std::string description, double consequence,
                   double probability)
    : id_(std::move(id)),
      description_(std::move(description)),
      consequence_(consequence),
      probability_(probability)
{
    if (id_.empty()) throw std::invalid_argument("scenario id must be non-empty");
    if (!(consequence_ >= 0.0) || !std::isfinite(consequence_)) {
        throw std::invalid_argument("scenario '" + id_ + "': consequence must be >= 0");
    }
    if (!(probability_ >= 0.0 && probability_ <= 1.0)) {
        throw std::invalid_argument("scenario '" + id_ + "': probability must lie in [0, 1]");
    }
}

RiskPortfolio::RiskPortfolio(std::vector<Scenario> scenarios, bool normalized)
    : scenarios_(std::move(scenarios)), normalized_(normalized)
{
    std::unordered_set<std::string> seen;
    for (const auto& s : scenarios_) {
        if (!seen.insert(s.id()).second) {
            throw std::invalid_argument("duplicate scenario id '" + s.id() + "'");
        }
        if (normalized_ && s.consequence() > 1.0) {
            throw std::invalid_argument("scenario '" + s.id() +
                                        "': consequence exceeds 1 in a normalized portfolio");
        }
    }
}

double scenario_risk(const Scenario& s)
{
    return s.consequence() * s.probability();
}

double system_risk(const RiskPortfolio& portfolio)
{
    NeumaierSum sum;
    for (const auto& s : portfolio.scenarios()) {
        sum.add(scenario_risk(s));
    }
    return sum.value();
}

ReliabilityProxy reliability_proxy(const RiskPortfolio& portfolio)
{
    if (!portfolio.normalized()) {
        throw PreconditionError(
            "reliability proxy is undefined for unnormalized consequences; "
            "scale consequences to [0, 1] and set the normalized flag");
    }
    const double risk = system_risk(portfolio);
    if (risk > 1.0) {
        return {0.0, true};
    }
    return {1.0 - risk, false};
}

} // namespace resiq
