#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "resiq/error.hpp"
#include "resiq/estimation.hpp"
#include "resiq/pointproc.hpp"
#include "resiq/resiliency.hpp"
#include "resiq/risk.hpp"

namespace py = pybind11;
using namespace resiq;

namespace {

py::dict estimate_dict(const Estimate& e)
{
    py::dict out;
    out["value"] = e.value;
    out["std_error"] = e.std_error;
    out["monte_carlo"] = e.monte_carlo;
    return out;
}

py::dict fit_dict(const FitResult& fit)
{
    py::dict out;
    out["kind"] = fit.model.kind_name();
    out["parameters"] = fit.parameters;
    out["log_likelihood"] = fit.log_likelihood;
    out["n_parameters"] = fit.n_parameters;
    out["aic"] = fit.aic;
    py::list notes;
    for (const auto& n : fit.diagnostics.notes) notes.append(n);
    out["notes"] = notes;
    return out;
}

} // namespace

PYBIND11_MODULE(_resiq, m)
{
    m.doc() = "Reliability, risk, and reactive-resiliency toolkit for repairable systems";

    py::register_exception<ModelError>(m, "ModelError");
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError");
    py::register_exception<EventError>(m, "EventError");
    py::register_exception<PreconditionError>(m, "PreconditionError");

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
        .def("uniform", &RandomStream::next_uniform);

    py::class_<LifetimeDistribution>(m, "LifetimeDistribution")
        .def_static("exponential", &LifetimeDistribution::exponential, py::arg("rate"))
        .def_static("weibull", &LifetimeDistribution::weibull, py::arg("shape"),
                    py::arg("scale"))
        .def_static("gamma", &LifetimeDistribution::gamma, py::arg("shape"), py::arg("rate"))
        .def_static("lognormal", &LifetimeDistribution::lognormal, py::arg("log_mean"),
                    py::arg("log_sd"))
        .def_property_readonly("family", &LifetimeDistribution::family_name)
        .def("reliability", &LifetimeDistribution::reliability, py::arg("t"))
        .def("cdf", &LifetimeDistribution::cdf, py::arg("t"))
        .def("pdf", &LifetimeDistribution::pdf, py::arg("t"))
        .def("hazard", &LifetimeDistribution::hazard, py::arg("t"))
        .def("quantile", &LifetimeDistribution::quantile, py::arg("p"))
        .def("mean", &LifetimeDistribution::mean)
        .def("sample", &LifetimeDistribution::sample, py::arg("rng"))
        .def("__repr__", [](const LifetimeDistribution& d) {
            return "<LifetimeDistribution " + d.family_name() + ">";
        });

    py::class_<BathtubProfile>(m, "BathtubProfile")
        .def(py::init([](const std::vector<std::tuple<double, std::string, double, double>>&
                             segments) {
                 std::vector<BathtubSegment> parsed;
                 parsed.reserve(segments.size());
                 for (const auto& [start, kind, a, b] : segments) {
                     if (kind == "constant") {
                         parsed.push_back({start, ConstantHazard{a}});
                     } else if (kind == "power") {
                         parsed.push_back({start, PowerHazard{a, b}});
                     } else {
                         throw std::invalid_argument("segment kind must be constant or power");
                     }
                 }
                 return BathtubProfile(std::move(parsed));
             }),
             py::arg("segments"),
             "segments: list of (start, 'constant'|'power', rate_or_c, unused_or_exponent)")
        .def("hazard", &BathtubProfile::hazard, py::arg("t"))
        .def("cumulative_hazard", &BathtubProfile::cumulative_hazard, py::arg("t"))
        .def("reliability", &BathtubProfile::reliability, py::arg("t"));

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<std::string, std::string, double, double>(), py::arg("id"),
             py::arg("description"), py::arg("consequence"), py::arg("probability"))
        .def_property_readonly("id", &Scenario::id)
        .def_property_readonly("description", &Scenario::description)
        .def_property_readonly("consequence", &Scenario::consequence)
        .def_property_readonly("probability", &Scenario::probability);

    py::class_<RiskPortfolio>(m, "RiskPortfolio")
        .def(py::init<std::vector<Scenario>, bool>(), py::arg("scenarios"),
             py::arg("normalized") = false)
        .def_property_readonly("normalized", &RiskPortfolio::normalized);

    m.def("scenario_risk", &scenario_risk, py::arg("scenario"));
    m.def("system_risk", &system_risk, py::arg("portfolio"));
    m.def(
        "reliability_proxy",
        [](const RiskPortfolio& p) {
            const ReliabilityProxy proxy = reliability_proxy(p);
            py::dict out;
            out["value"] = proxy.value;
            out["saturated"] = proxy.saturated;
            return out;
        },
        py::arg("portfolio"));

    py::enum_<KijimaVariant>(m, "KijimaVariant")
        .value("TYPE_I", KijimaVariant::TypeI)
        .value("TYPE_II", KijimaVariant::TypeII);

    py::class_<PointProcessModel>(m, "PointProcessModel")
        .def_static("hpp", &PointProcessModel::hpp, py::arg("rate"))
        .def_static("renewal", &PointProcessModel::renewal, py::arg("ttf"))
        .def_static(
            "nhpp_power_law",
            [](double lam, double beta) {
                return PointProcessModel::nhpp(PowerLawRocof{lam, beta});
            },
            py::arg("lambda_"), py::arg("beta"))
        .def_static(
            "nhpp_log_linear",
            [](double alpha, double beta) {
                return PointProcessModel::nhpp(LogLinearRocof{alpha, beta});
            },
            py::arg("alpha"), py::arg("beta"))
        .def_static(
            "nhpp_linear",
            [](double a, double b) { return PointProcessModel::nhpp(LinearRocof{a, b}); },
            py::arg("a"), py::arg("b"))
        .def_static("grp", &PointProcessModel::grp, py::arg("ttf"), py::arg("q"),
                    py::arg("variant") = KijimaVariant::TypeI)
        .def_property_readonly("kind", &PointProcessModel::kind_name);

    py::class_<RepairPolicy>(m, "RepairPolicy")
        .def_static("instantaneous", &RepairPolicy::instantaneous)
        .def_static("fixed", &RepairPolicy::fixed, py::arg("duration"))
        .def_static("distributed", &RepairPolicy::distributed, py::arg("duration"));

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init([](double horizon, std::size_t trajectories, std::uint64_t seed,
                         unsigned threads) {
                 SimulationConfig cfg;
                 cfg.horizon = horizon;
                 cfg.n_trajectories = trajectories;
                 cfg.master_seed = seed;
                 cfg.threads = threads;
                 return cfg;
             }),
             py::arg("horizon"), py::arg("trajectories") = 1000, py::arg("seed") = 42,
             py::arg("threads") = 0)
        .def_readwrite("horizon", &SimulationConfig::horizon)
        .def_readwrite("trajectories", &SimulationConfig::n_trajectories)
        .def_readwrite("seed", &SimulationConfig::master_seed)
        .def_readwrite("threads", &SimulationConfig::threads);

    py::class_<EventHistory>(m, "EventHistory")
        .def_property_readonly("horizon", &EventHistory::horizon)
        .def_property_readonly("events",
                               [](const EventHistory& h) {
                                   std::vector<std::pair<double, double>> out;
                                   out.reserve(h.events().size());
                                   for (const auto& e : h.events()) {
                                       out.emplace_back(e.fail_time, e.repair_complete_time);
                                   }
                                   return out;
                               })
        .def("operating_at", &EventHistory::operating_at, py::arg("t"))
        .def("count_failures_through", &EventHistory::count_failures_through, py::arg("t"))
        .def("__len__", [](const EventHistory& h) { return h.events().size(); });

    m.def("simulate_history", &simulate_history, py::arg("model"), py::arg("policy"),
          py::arg("config"), py::arg("trajectory_index") = 0);
    m.def(
        "expected_count",
        [](const PointProcessModel& m_, double t, const SimulationConfig& cfg) {
            return estimate_dict(expected_count(m_, t, cfg));
        },
        py::arg("model"), py::arg("t"), py::arg("config"));
    m.def(
        "rocof",
        [](const PointProcessModel& m_, double t, double window, const SimulationConfig& cfg) {
            return estimate_dict(rocof_at(m_, t, window, cfg));
        },
        py::arg("model"), py::arg("t"), py::arg("window"), py::arg("config"));
    m.def(
        "mtbf",
        [](const PointProcessModel& m_, double t0, double t1, const SimulationConfig& cfg) {
            return estimate_dict(mtbf(m_, t0, t1, cfg));
        },
        py::arg("model"), py::arg("t0"), py::arg("t1"), py::arg("config"));
    m.def(
        "availability",
        [](const PointProcessModel& m_, const RepairPolicy& policy, double t,
           const SimulationConfig& cfg) {
            return estimate_dict(availability(m_, policy, t, cfg));
        },
        py::arg("model"), py::arg("policy"), py::arg("t"), py::arg("config"));
    m.def("kijima_virtual_ages", &kijima_virtual_ages, py::arg("operating_durations"),
          py::arg("q"), py::arg("variant") = KijimaVariant::TypeI);

    py::class_<ResiliencyEvent>(m, "ResiliencyEvent")
        .def(py::init<double, double, double>(), py::arg("t_fail"), py::arg("t_res"),
             py::arg("q_res"))
        .def_property_readonly("t_fail", &ResiliencyEvent::t_fail)
        .def_property_readonly("t_res", &ResiliencyEvent::t_res)
        .def_property_readonly("q_res", &ResiliencyEvent::q_res);

    py::class_<MissionContext>(m, "MissionContext")
        .def(py::init<double, std::optional<LifetimeDistribution>>(), py::arg("t_mission"),
             py::arg("baseline") = std::nullopt)
        .def_property_readonly("t_mission", &MissionContext::t_mission);

    py::enum_<ResiliencyDegree>(m, "ResiliencyDegree")
        .value("BETTER_THAN_NEW", ResiliencyDegree::BetterThanNew)
        .value("GOOD_AS_NEW", ResiliencyDegree::GoodAsNew)
        .value("PARTIAL_RECOVERY", ResiliencyDegree::PartialRecovery)
        .value("SAME_AS_OLD", ResiliencyDegree::SameAsOld)
        .value("WORSE_THAN_OLD", ResiliencyDegree::WorseThanOld);

    m.def("reactive_resiliency", &reactive_resiliency, py::arg("event"), py::arg("context"));
    m.def("recovered_reliability", &recovered_reliability, py::arg("q_res"));
    m.def("classify_degree", &classify_degree, py::arg("q_res"), py::arg("context"),
          py::arg("t_fail"));
    m.def(
        "virtual_age_of_degree",
        [](double q_res, const LifetimeDistribution& baseline) {
            const VirtualAge v = virtual_age_of_degree(q_res, baseline);
            py::dict out;
            out["age"] = v.age;
            out["better_than_new"] = v.better_than_new;
            return out;
        },
        py::arg("q_res"), py::arg("baseline"));
    m.def(
        "mission_resiliency",
        [](const std::vector<ResiliencyEvent>& events, const MissionContext& ctx) {
            const ResiliencyAssessment a = mission_resiliency(events, ctx);
            py::dict out;
            out["mission_rho"] = a.mission_rho;
            out["flags"] = a.flags;
            py::list per_event;
            for (const auto& e : a.per_event) {
                py::dict row;
                row["t_fail"] = e.event.t_fail();
                row["t_res"] = e.event.t_res();
                row["q_res"] = e.event.q_res();
                row["rho_r"] = e.rho_r;
                if (e.degree) row["degree"] = to_string(*e.degree);
                per_event.append(row);
            }
            out["per_event"] = per_event;
            return out;
        },
        py::arg("events"), py::arg("context"));
    m.def(
        "performance_trajectory",
        [](const MissionContext& ctx, const ResiliencyEvent& event, std::size_t resolution,
           double outage_level) {
            const PerformanceTrajectory trajectory =
                performance_trajectory(ctx, event, resolution, outage_level);
            py::list samples;
            for (const auto& s : trajectory.samples) {
                samples.append(py::make_tuple(s.t, s.level, to_string(s.segment)));
            }
            return samples;
        },
        py::arg("context"), py::arg("event"), py::arg("resolution") = 201,
        py::arg("outage_level") = 0.0);

    py::enum_<Truncation>(m, "Truncation")
        .value("TIME", Truncation::Time)
        .value("FAILURE", Truncation::Failure);

    py::class_<ObservedEvents>(m, "ObservedEvents")
        .def(py::init<std::vector<double>, double, Truncation>(), py::arg("failure_times"),
             py::arg("observation_end"), py::arg("truncation") = Truncation::Time)
        .def_property_readonly("failure_times", &ObservedEvents::failure_times)
        .def_property_readonly("observation_end", &ObservedEvents::observation_end)
        .def("gaps", &ObservedEvents::gaps);

    py::enum_<DistFamily>(m, "DistFamily")
        .value("EXPONENTIAL", DistFamily::Exponential)
        .value("WEIBULL", DistFamily::Weibull)
        .value("GAMMA", DistFamily::Gamma)
        .value("LOGNORMAL", DistFamily::Lognormal);

    m.def("fit_hpp", [](const ObservedEvents& obs) { return fit_dict(fit_hpp(obs)); },
          py::arg("observed"));
    m.def("fit_crow_amsaa",
          [](const ObservedEvents& obs) { return fit_dict(fit_crow_amsaa(obs)); },
          py::arg("observed"));
    m.def(
        "fit_renewal",
        [](const ObservedEvents& obs, DistFamily family) {
            return fit_dict(fit_renewal(obs, family));
        },
        py::arg("observed"), py::arg("family"));
    m.def(
        "fit_grp",
        [](const ObservedEvents& obs, DistFamily family, double q_min, double q_max,
           KijimaVariant variant) {
            GrpFitOptions options;
            options.q_min = q_min;
            options.q_max = q_max;
            options.variant = variant;
            return fit_dict(fit_grp(obs, family, options));
        },
        py::arg("observed"), py::arg("family"), py::arg("q_min") = 0.0, py::arg("q_max") = 2.0,
        py::arg("variant") = KijimaVariant::TypeI);
    m.def(
        "model_select",
        [](const ObservedEvents& obs, const std::vector<std::string>& names) {
            std::vector<CandidateSpec> candidates;
            candidates.reserve(names.size());
            for (const auto& n : names) candidates.push_back(CandidateSpec::parse(n));
            py::list out;
            for (const auto& entry : model_select(obs, candidates)) {
                py::dict row;
                row["candidate"] = entry.candidate.name();
                row["ok"] = entry.fit.has_value();
                if (entry.fit) {
                    row["aic"] = entry.fit->aic;
                    row["fit"] = fit_dict(*entry.fit);
                } else {
                    row["error"] = entry.error;
                }
                out.append(row);
            }
            return out;
        },
        py::arg("observed"), py::arg("candidates"));
}
