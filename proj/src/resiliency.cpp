#include "resiq/resiliency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "resiq/error.hpp"

namespace resiq {

namespace {

constexpr double kDegreeTolerance = 1e-9;

} // namespace

ResiliencyEvent::ResiliencyEvent(double t_fail, double t_res, double q_res)
    : t_fail_(t_fail), t_res_(t_res), q_res_(q_res)
{
    if (!(t_fail_ >= 0.0) || !std::isfinite(t_fail_)) {
        throw std::domain_error("t_fail must be >= 0 and finite");
    }
    if (!(t_res_ >= 0.0)) {
        throw std::domain_error("t_res must be >= 0");
    }
    if (!(q_res_ <= 1.0)) {
        throw std::domain_error("q_res must be <= 1 (recovered reliability cannot be negative)");
    }
}

MissionContext::MissionContext(double t_mission, std::optional<LifetimeDistribution> baseline)
    : t_mission_(t_mission), baseline_(std::move(baseline))
{
    if (!(t_mission_ > 0.0) || !std::isfinite(t_mission_)) {
        throw std::domain_error("mission lifetime must be positive and finite");
    }
}

double reactive_resiliency(const ResiliencyEvent& event, const MissionContext& ctx)
{
    if (!(event.t_fail() < ctx.t_mission())) {
        throw std::domain_error("failure time must lie inside the mission window");
    }
    const double remaining = ctx.t_mission() - event.t_fail();
    if (event.t_res() >= remaining) {
        return 0.0; // perfectly non-resilient: not recovered before end of mission
    }
    return (1.0 - event.q_res()) * (1.0 - event.t_res() / remaining);
}

double recovered_reliability(double q_res)
{
    if (!(q_res <= 1.0)) {
        throw std::domain_error("q_res greater than 1 implies negative recovered reliability");
    }
    return 1.0 - q_res;
}

std::string to_string(ResiliencyDegree degree)
{
    switch (degree) {
        case ResiliencyDegree::BetterThanNew: return "better_than_new";
        case ResiliencyDegree::GoodAsNew: return "good_as_new";
        case ResiliencyDegree::PartialRecovery: return "partial_recovery";
        case ResiliencyDegree::SameAsOld: return "same_as_old";
        case ResiliencyDegree::WorseThanOld: return "worse_than_old";
    }
    return "unknown";
}

ResiliencyDegree classify_degree(double q_res, const MissionContext& ctx, double t_fail)
{
    if (!ctx.baseline()) {
        throw PreconditionError("degree classification requires a baseline distribution");
    }
    if (!(t_fail >= 0.0) || !(t_fail < ctx.t_mission())) {
        throw std::domain_error("t_fail must lie in [0, t_mission)");
    }
    if (std::abs(q_res) <= kDegreeTolerance) return ResiliencyDegree::GoodAsNew;
    if (q_res < 0.0) return ResiliencyDegree::BetterThanNew;
    const double f_star = ctx.baseline()->cdf(t_fail);
    if (std::abs(q_res - f_star) <= kDegreeTolerance) return ResiliencyDegree::SameAsOld;
    if (q_res < f_star) return ResiliencyDegree::PartialRecovery;
    return ResiliencyDegree::WorseThanOld;
}

VirtualAge virtual_age_of_degree(double q_res, const LifetimeDistribution& baseline)
{
    if (q_res >= 1.0) {
        throw std::domain_error("q_res must be < 1 to map to a finite virtual age");
    }
    if (q_res < 0.0) {
        return {0.0, true}; // better than new: no age below new exists
    }
    return {baseline.quantile(q_res), false};
}

ResiliencyAssessment mission_resiliency(const std::vector<ResiliencyEvent>& events,
                                        const MissionContext& ctx)
{
    ResiliencyAssessment assessment;
    assessment.mission_rho = 1.0;
    if (events.empty()) {
        assessment.flags.push_back("no_events");
        return assessment;
    }

    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (!(e.t_fail() < ctx.t_mission())) {
            throw EventError("event " + std::to_string(i) + " fails at or after mission end");
        }
        if (i > 0) {
            const auto& prev = events[i - 1];
            if (e.t_fail() < prev.t_fail()) {
                throw EventError("events must be sorted by failure time");
            }
            if (prev.t_fail() + prev.t_res() > e.t_fail()) {
                throw EventError("outage of event " + std::to_string(i - 1) +
                                 " overlaps the next failure");
            }
        }
    }

    bool better_than_new = false;
    double mission_rho = std::numeric_limits<double>::infinity();
    for (const auto& e : events) {
        AssessedEvent assessed{e, reactive_resiliency(e, ctx), std::nullopt};
        if (ctx.baseline()) {
            assessed.degree = classify_degree(e.q_res(), ctx, e.t_fail());
        }
        if (e.q_res() < 0.0) better_than_new = true;
        mission_rho = std::min(mission_rho, assessed.rho_r);
        assessment.per_event.push_back(std::move(assessed));
    }
    assessment.mission_rho = mission_rho;
    if (better_than_new) {
        assessment.flags.push_back("better_than_new");
    }
    return assessment;
}

std::string to_string(TrajectorySegment segment)
{
    switch (segment) {
        case TrajectorySegment::Nominal: return "nominal";
        case TrajectorySegment::Outage: return "outage";
        case TrajectorySegment::Recovered: return "recovered";
    }
    return "unknown";
}

PerformanceTrajectory performance_trajectory(const MissionContext& ctx,
                                             const ResiliencyEvent& event,
                                             std::size_t resolution, double outage_level)
{
    if (!ctx.baseline()) {
        throw PreconditionError("performance trajectory requires a baseline distribution");
    }
    if (resolution < 2) {
        throw std::invalid_argument("trajectory resolution must be >= 2");
    }
    if (!(outage_level >= 0.0) || !(outage_level < 1.0)) {
        throw std::invalid_argument("outage level must lie in [0, 1)");
    }
    if (!(event.t_fail() < ctx.t_mission())) {
        throw EventError("event fails at or after mission end");
    }

    const LifetimeDistribution& baseline = *ctx.baseline();
    const double t_mission = ctx.t_mission();
    const double recovery_onset = event.t_fail() + event.t_res();
    const bool recovers = recovery_onset < t_mission;

    double age = 0.0;
    double r_age = 1.0;
    double recovered_level = 1.0 - event.q_res();
    if (recovers) {
        age = virtual_age_of_degree(event.q_res(), baseline).age;
        r_age = baseline.reliability(age);
    }

    std::vector<double> times;
    times.reserve(resolution + 2);
    for (std::size_t i = 0; i < resolution; ++i) {
        times.push_back(t_mission * static_cast<double>(i) /
                        static_cast<double>(resolution - 1));
    }
    times.push_back(event.t_fail());
    if (recovers) times.push_back(recovery_onset);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    PerformanceTrajectory trajectory;
    trajectory.samples.reserve(times.size());
    for (double t : times) {
        TrajectorySample sample{t, 0.0, TrajectorySegment::Nominal};
        if (t < event.t_fail()) {
            sample.level = baseline.reliability(t);
            sample.segment = TrajectorySegment::Nominal;
        } else if (!recovers || t < recovery_onset) {
            sample.level = outage_level;
            sample.segment = TrajectorySegment::Outage;
        } else {
            // Conditional survival from the virtual age of the recovered
            // state; the onset ratio is exactly 1, so the onset level is
            // exactly 1 - q_res.
            const double dt = t - recovery_onset;
            sample.level = recovered_level * (baseline.reliability(age + dt) / r_age);
            sample.segment = TrajectorySegment::Recovered;
        }
        trajectory.samples.push_back(sample);
    }
    return trajectory;
}

} // namespace resiq
