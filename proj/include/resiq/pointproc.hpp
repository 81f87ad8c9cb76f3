#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resiq/lifetime.hpp"

namespace resiq {

struct Hpp {
    double rate; // constant ROCOF, > 0
};

struct Rp {
    LifetimeDistribution ttf; // perfect repair: every gap is a fresh draw
};

struct PowerLawRocof {
    double lambda; // > 0; cumulative intensity lambda * t^beta
    double beta;   // > 0
};

struct LogLinearRocof {
    double alpha;
    double beta; // intensity exp(alpha + beta t)
};

struct LinearRocof {
    double a; // >= 0
    double b; // intensity a + b t, must stay >= 0 over the horizon
};

using RocofLaw = std::variant<PowerLawRocof, LogLinearRocof, LinearRocof>;

struct Nhpp {
    RocofLaw rocof; // minimal repair: intensity runs on calendar time
};

enum class KijimaVariant { TypeI, TypeII };

std::string to_string(KijimaVariant variant);

struct Grp {
    LifetimeDistribution ttf;
    double q; // rejuvenation parameter, unbounded
    KijimaVariant variant;
};

/// Tagged union over the four repairable-system processes. Parameter
/// validity is checked at construction; horizon-dependent validity
/// (a linear ROCOF staying non-negative) via validate_for_horizon().
class PointProcessModel {
  public:
    using Variant = std::variant<Hpp, Rp, Nhpp, Grp>;

    explicit PointProcessModel(Variant value);

    static PointProcessModel hpp(double rate);
    static PointProcessModel renewal(LifetimeDistribution ttf);
    static PointProcessModel nhpp(RocofLaw rocof);
    static PointProcessModel grp(LifetimeDistribution ttf, double q, KijimaVariant variant);

    const Variant& value() const { return value_; }
    std::string kind_name() const;

    /// Throws ModelError if the model cannot be simulated over [0, horizon].
    void validate_for_horizon(double horizon) const;

  private:
    Variant value_;
};

struct Instantaneous {};

struct FixedRepair {
    double duration; // >= 0
};

struct DistributedRepair {
    LifetimeDistribution duration;
};

class RepairPolicy {
  public:
    using Variant = std::variant<Instantaneous, FixedRepair, DistributedRepair>;

    explicit RepairPolicy(Variant value);

    static RepairPolicy instantaneous();
    static RepairPolicy fixed(double duration);
    static RepairPolicy distributed(LifetimeDistribution duration);

    const Variant& value() const { return value_; }

  private:
    Variant value_;
};

struct Event {
    double fail_time;
    double repair_complete_time;
};

struct SimulatedProvenance {
    std::uint64_t seed;
};

struct ObservedProvenance {};

using Provenance = std::variant<SimulatedProvenance, ObservedProvenance>;

/// One failure/repair timeline over a mission horizon. Ordering invariants
/// are enforced at construction: fail times strictly increase, each repair
/// completes no earlier than its failure and no later than the next
/// failure, and everything lies inside [0, horizon].
class EventHistory {
  public:
    EventHistory(std::vector<Event> events, double horizon, Provenance provenance);

    const std::vector<Event>& events() const { return events_; }
    double horizon() const { return horizon_; }
    const Provenance& provenance() const { return provenance_; }

    /// Repair intervals are half-open [fail, repair_complete); a repair
    /// whose completion was truncated at the horizon still counts as in
    /// progress at the horizon itself.
    bool operating_at(double t) const;
    std::size_t count_failures_through(double t) const;

  private:
    std::vector<Event> events_;
    double horizon_;
    Provenance provenance_;
};

struct SimulationConfig {
    double horizon = 0.0;
    std::size_t n_trajectories = 1;
    std::uint64_t master_seed = 42;
    /// Worker threads for Monte Carlo sweeps; 0 = hardware concurrency.
    /// Never affects results, only wall time.
    unsigned threads = 0;
};

void validate(const SimulationConfig& cfg);

/// Simulate one trajectory. Deterministic in (model, policy, cfg.master_seed,
/// trajectory_index): the failure clock runs on operating time for HPP, RP,
/// and GRP (frozen during repairs) and on calendar time for NHPP; all draws
/// are inverse-transform.
EventHistory simulate_history(const PointProcessModel& model, const RepairPolicy& policy,
                              const SimulationConfig& cfg, std::uint64_t trajectory_index);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    bool monte_carlo = false;
};

/// Mean cumulative number of failures by t where a closed form exists:
/// HPP, the three NHPP laws, and the Erlang-2 renewal process.
std::optional<double> expected_count_closed_form(const PointProcessModel& model, double t);

/// Monte Carlo mean count via fresh trajectories with instantaneous repairs.
Estimate expected_count_mc(const PointProcessModel& model, double t,
                           const SimulationConfig& cfg);

/// Closed form when available, Monte Carlo otherwise.
Estimate expected_count(const PointProcessModel& model, double t, const SimulationConfig& cfg);

/// Intensity at t for HPP/NHPP. Throws PreconditionError for RP/GRP (use
/// rocof_mc) and SingularityError for a power law with beta < 1 at t = 0.
double rocof_analytic(const PointProcessModel& model, double t);

/// Central finite difference of the Monte Carlo expected count over a
/// window around t (clipped to [0, horizon]).
Estimate rocof_mc(const PointProcessModel& model, double t, double window,
                  const SimulationConfig& cfg);

/// Analytic for HPP/NHPP, Monte Carlo for RP/GRP.
Estimate rocof_at(const PointProcessModel& model, double t, double window,
                  const SimulationConfig& cfg);

/// Mean time between failures over (t0, t1]: 1/lambda for HPP, otherwise
/// Monte Carlo. Throws InsufficientDataError if no failures were observed.
Estimate mtbf(const PointProcessModel& model, double t0, double t1,
              const SimulationConfig& cfg);

/// Fraction of trajectories operating (not inside a repair interval) at t.
Estimate availability(const PointProcessModel& model, const RepairPolicy& policy, double t,
                      const SimulationConfig& cfg);

/// Kijima virtual-age recursion over operating durations, v0 = 0.
/// Type I:  v_n = v_{n-1} + q * x_n
/// Type II: v_n = q * (v_{n-1} + x_n)
/// Ages are floored at 0 (relevant for q < 0, "better than new" repairs).
std::vector<double> kijima_virtual_ages(const std::vector<double>& operating_durations, double q,
                                        KijimaVariant variant);

struct SummaryPoint {
    double t = 0.0;
    double mean_count = 0.0;
    double count_se = 0.0;
    double availability = 0.0;
    double availability_se = 0.0;
    double rocof = 0.0;
    double rocof_se = 0.0;
};

/// One Monte Carlo sweep producing count/availability/ROCOF curves on an
/// evenly spaced grid (points + 1 rows from t = 0 to the horizon).
std::vector<SummaryPoint> simulate_summary(const PointProcessModel& model,
                                           const RepairPolicy& policy,
                                           const SimulationConfig& cfg, std::size_t points,
                                           double window);

} // namespace resiq
