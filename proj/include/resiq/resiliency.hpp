#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resiq/lifetime.hpp"

namespace resiq {

/// One disruption: when the system failed, how long recovery actions took,
/// and how much reliability they restored. q_res is 1 minus the recovered
/// reliability, so q_res <= 1; q_res < 0 means the system came back better
/// than new.
class ResiliencyEvent {
  public:
    ResiliencyEvent(double t_fail, double t_res, double q_res);

    double t_fail() const { return t_fail_; }
    double t_res() const { return t_res_; }
    double q_res() const { return q_res_; }

  private:
    double t_fail_;
    double t_res_;
    double q_res_;
};

class MissionContext {
  public:
    explicit MissionContext(double t_mission,
                            std::optional<LifetimeDistribution> baseline = std::nullopt);

    double t_mission() const { return t_mission_; }
    const std::optional<LifetimeDistribution>& baseline() const { return baseline_; }

  private:
    double t_mission_;
    std::optional<LifetimeDistribution> baseline_;
};

/// Reactive resiliency of a single disruption:
///
///   rho_r = (1 - q_res) * (1 - t_res / (t_mission - t_fail))
///
/// clamped to 0 once recovery time reaches the remaining mission
/// ("perfectly non-resilient"); instantaneous good-as-new recovery gives
/// exactly 1 ("perfectly resilient"). Throws std::domain_error when the
/// failure lies outside the mission window.
double reactive_resiliency(const ResiliencyEvent& event, const MissionContext& ctx);

/// 1 - q_res. Values above 1 (q_res < 0) are legal and flagged downstream,
/// never clamped; q_res > 1 is a domain error.
double recovered_reliability(double q_res);

enum class ResiliencyDegree {
    BetterThanNew,
    GoodAsNew,
    PartialRecovery,
    SameAsOld,
    WorseThanOld,
};

std::string to_string(ResiliencyDegree degree);

/// Classify q_res against the baseline failure probability at the failure
/// time, F* = F(t_fail): recovery to exactly F* is same-as-old, beyond it
/// worse-than-old. Boundaries use a 1e-9 absolute tolerance.
ResiliencyDegree classify_degree(double q_res, const MissionContext& ctx, double t_fail);

struct VirtualAge {
    double age;
    bool better_than_new; // q_res < 0: no age below new exists, age = 0
};

/// Age v at which the baseline reliability equals the recovered
/// reliability: R(v) = 1 - q_res, i.e. v = quantile(baseline, q_res).
/// Bridges resiliency degrees to the GRP virtual-age machinery.
VirtualAge virtual_age_of_degree(double q_res, const LifetimeDistribution& baseline);

struct AssessedEvent {
    ResiliencyEvent event;
    double rho_r;
    std::optional<ResiliencyDegree> degree; // present when a baseline is set
};

struct ResiliencyAssessment {
    std::vector<AssessedEvent> per_event;
    double mission_rho; // minimum over events; 1 when there are none
    std::vector<std::string> flags;
};

/// Assess a full mission. Events must be sorted by failure time with
/// non-overlapping outages (t_fail + t_res <= next t_fail); violations
/// throw EventError.
ResiliencyAssessment mission_resiliency(const std::vector<ResiliencyEvent>& events,
                                        const MissionContext& ctx);

enum class TrajectorySegment { Nominal, Outage, Recovered };

std::string to_string(TrajectorySegment segment);

struct TrajectorySample {
    double t;
    double level;
    TrajectorySegment segment;
};

struct PerformanceTrajectory {
    std::vector<TrajectorySample> samples;
};

/// Performance level over the mission for one disruption:
///   nominal   [0, t_fail):           R(t)
///   outage    [t_fail, t_fail+t_res): outage_level (default 0)
///   recovered [t_fail+t_res, t_mission]:
///             (1 - q_res) * R(v + dt) / R(v), v = virtual age of q_res
/// The recovery onset level is exactly 1 - q_res. If recovery never
/// completes within the mission the outage runs to the end (rho_r = 0).
PerformanceTrajectory performance_trajectory(const MissionContext& ctx,
                                             const ResiliencyEvent& event,
                                             std::size_t resolution,
                                             double outage_level = 0.0);

} // namespace resiq
