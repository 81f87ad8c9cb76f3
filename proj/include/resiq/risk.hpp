#pragma once

#include <string>
#include <vector>

namespace resiq {

/// One accident sequence: what can happen, what it costs, how likely it is.
class Scenario {
  public:
    Scenario(std::string id, std::string description, double consequence, double probability);

    const std::string& id() const { return id_; }
    const std::string& description() const { return description_; }
    double consequence() const { return consequence_; }
    double probability() const { return probability_; }

  private:
    std::string id_;
    std::string description_;
    double consequence_;
    double probability_;
};

/// Scenario set with unique ids. When `normalized` is set every consequence
/// must already lie in [0, 1]; only then is the reliability proxy defined.
class RiskPortfolio {
  public:
    RiskPortfolio(std::vector<Scenario> scenarios, bool normalized);

    const std::vector<Scenario>& scenarios() const { return scenarios_; }
    bool normalized() const { return normalized_; }

  private:
    std::vector<Scenario> scenarios_;
    bool normalized_;
};

/// Consequence times probability for one scenario.
double scenario_risk(const Scenario& s);

/// Sum of scenario risks, compensated so summation order cannot move the
/// result.
double system_risk(const RiskPortfolio& portfolio);

struct ReliabilityProxy {
    double value;    // max(0, 1 - system risk)
    bool saturated;  // system risk exceeded 1 and the proxy was clamped
};

/// Complement of system risk as a probability-like value. Requires a
/// normalized portfolio; throws PreconditionError otherwise.
ReliabilityProxy reliability_proxy(const RiskPortfolio& portfolio);

} // namespace resiq
