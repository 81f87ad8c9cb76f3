#include "resiq/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "resiq/config.hpp"
#include "resiq/error.hpp"
#include "resiq/estimation.hpp"
#include "resiq/io.hpp"
#include "resiq/pointproc.hpp"
#include "resiq/resiliency.hpp"
#include "resiq/risk.hpp"

namespace resiq::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    std::int64_t seed = std::numeric_limits<std::int64_t>::min(); // min = not given
    bool quiet = false;
};

Config load_config(const CommonArgs& args)
{
    Config config = args.config_path.empty()
                        ? Config::parse_string("", "<no config>")
                        : Config::parse_file(args.config_path);
    for (const auto& assignment : args.overrides) {
        config.apply_override(assignment);
    }
    if (args.seed != std::numeric_limits<std::int64_t>::min()) {
        std::uint64_t seed = 0;
        if (args.seed < 0) {
            // --seed -1: opt into entropy; every other path is reproducible.
            std::random_device device;
            seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
        } else {
            seed = static_cast<std::uint64_t>(args.seed);
        }
        config.apply_override("sim.seed=" + std::to_string(seed));
    }
    return config;
}

fs::path prepare_out_dir(const CommonArgs& args)
{
    fs::path dir(args.out_dir);
    fs::create_directories(dir);
    return dir;
}

void note(const CommonArgs& args, const std::string& message)
{
    if (!args.quiet) std::cout << message << "\n";
}

// Domain-object construction from config values; parameter violations
// surface as config errors with the file name attached.
template <typename Fn>
auto build(const Config& config, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const std::invalid_argument& error) {
        throw ConfigError(config.source_name() + ": " + error.what());
    } catch (const std::domain_error& error) {
        throw ConfigError(config.source_name() + ": " + error.what());
    }
}

LifetimeDistribution parse_distribution(const Config& config, const std::string& section)
{
    const std::string family = config.get_string(section, "family");
    return build(config, [&]() -> LifetimeDistribution {
        if (family == "exponential") {
            return LifetimeDistribution::exponential(config.get_double(section, "rate"));
        }
        if (family == "weibull") {
            return LifetimeDistribution::weibull(config.get_double(section, "shape"),
                                                 config.get_double(section, "scale"));
        }
        if (family == "gamma") {
            return LifetimeDistribution::gamma(config.get_double(section, "shape"),
                                               config.get_double(section, "rate"));
        }
        if (family == "lognormal") {
            return LifetimeDistribution::lognormal(config.get_double(section, "log_mean"),
                                                   config.get_double(section, "log_sd"));
        }
        throw ConfigError(config.source_name() + ": unknown distribution family '" + family +
                          "' in [" + section + "]");
    });
}

KijimaVariant parse_variant(const Config& config, const std::string& text)
{
    if (text == "kijima1") return KijimaVariant::TypeI;
    if (text == "kijima2") return KijimaVariant::TypeII;
    throw ConfigError(config.source_name() + ": unknown Kijima variant '" + text +
                      "' (use kijima1 or kijima2)");
}

PointProcessModel parse_model(const Config& config)
{
    const std::string kind = config.get_string("model", "kind");
    return build(config, [&]() -> PointProcessModel {
        if (kind == "hpp") {
            return PointProcessModel::hpp(config.get_double("model", "rate"));
        }
        if (kind == "rp") {
            return PointProcessModel::renewal(parse_distribution(config, "dist"));
        }
        if (kind == "nhpp") {
            const std::string rocof = config.get_string("model", "rocof");
            if (rocof == "power_law") {
                return PointProcessModel::nhpp(PowerLawRocof{
                    config.get_double("model", "lambda"), config.get_double("model", "beta")});
            }
            if (rocof == "log_linear") {
                return PointProcessModel::nhpp(LogLinearRocof{
                    config.get_double("model", "alpha"), config.get_double("model", "beta")});
            }
            if (rocof == "linear") {
                return PointProcessModel::nhpp(LinearRocof{config.get_double("model", "a"),
                                                           config.get_double("model", "b")});
            }
            throw ConfigError(config.source_name() + ": unknown ROCOF form '" + rocof +
                              "' (use power_law, log_linear, or linear)");
        }
        if (kind == "grp") {
            return PointProcessModel::grp(parse_distribution(config, "dist"),
                                          config.get_double("model", "q"),
                                          parse_variant(config, config.get_string("model",
                                                                                  "variant")));
        }
        throw ConfigError(config.source_name() + ": unknown model kind '" + kind +
                          "' (use hpp, rp, nhpp, or grp)");
    });
}

RepairPolicy parse_repair(const Config& config)
{
    const std::string kind = config.get_string("repair", "kind", "instantaneous");
    return build(config, [&]() -> RepairPolicy {
        if (kind == "instantaneous") return RepairPolicy::instantaneous();
        if (kind == "fixed") return RepairPolicy::fixed(config.get_double("repair", "duration"));
        if (kind == "distributed") return RepairPolicy::distributed(parse_distribution(config, "repair"));
        throw ConfigError(config.source_name() + ": unknown repair kind '" + kind +
                          "' (use instantaneous, fixed, or distributed)");
    });
}

SimulationConfig parse_sim(const Config& config)
{
    SimulationConfig sim;
    sim.horizon = config.get_double("sim", "horizon");
    if (!(sim.horizon > 0.0)) {
        throw ConfigError(config.source_name() + ": sim.horizon must be positive");
    }
    const std::int64_t trajectories = config.get_int("sim", "trajectories", 1000);
    if (trajectories < 1) {
        throw ConfigError(config.source_name() + ": sim.trajectories must be >= 1");
    }
    sim.n_trajectories = static_cast<std::size_t>(trajectories);
    sim.master_seed = static_cast<std::uint64_t>(config.get_int("sim", "seed",
                                                                static_cast<std::int64_t>(kDefaultSeed)));
    const std::int64_t threads = config.get_int("sim", "threads", 0);
    if (threads < 0) {
        throw ConfigError(config.source_name() + ": sim.threads must be >= 0");
    }
    sim.threads = static_cast<unsigned>(threads);
    return sim;
}

double table_double(const Config& config, const Config::Table& table, const std::string& key)
{
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError(config.source_name() + ": [[event]] block is missing '" + key + "'");
    }
    double value = 0.0;
    const char* begin = it->second.raw.data();
    const char* end = begin + it->second.raw.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(config.source_name() + ": expected a number for event." + key +
                              ", got '" + it->second.raw + "'",
                          it->second.line);
    }
    return value;
}

std::vector<ResiliencyEvent> parse_events(const Config& config)
{
    std::vector<ResiliencyEvent> events;
    events.reserve(config.events().size());
    for (const auto& table : config.events()) {
        const double t_fail = table_double(config, table, "t_fail");
        const double t_res = table_double(config, table, "t_res");
        const double q_res = table_double(config, table, "q_res");
        build(config, [&]() {
            events.emplace_back(t_fail, t_res, q_res);
            return 0;
        });
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const ResiliencyEvent& a, const ResiliencyEvent& b) {
                         return a.t_fail() < b.t_fail();
                     });
    return events;
}

MissionContext parse_mission(const Config& config, bool baseline_required)
{
    const double t_mission = config.get_double("mission", "t_mission");
    std::optional<LifetimeDistribution> baseline;
    if (config.has_section("dist")) {
        baseline = parse_distribution(config, "dist");
    } else if (baseline_required) {
        throw ConfigError(config.source_name() +
                          ": a [dist] baseline distribution is required for this command");
    }
    return build(config, [&]() { return MissionContext(t_mission, std::move(baseline)); });
}

json model_json(const PointProcessModel& model)
{
    json out;
    out["kind"] = model.kind_name();
    if (const auto* rp = std::get_if<Rp>(&model.value())) {
        out["family"] = rp->ttf.family_name();
    } else if (const auto* grp = std::get_if<Grp>(&model.value())) {
        out["family"] = grp->ttf.family_name();
        out["variant"] = to_string(grp->variant);
    } else if (const auto* nhpp = std::get_if<Nhpp>(&model.value())) {
        if (std::holds_alternative<PowerLawRocof>(nhpp->rocof)) out["rocof"] = "power_law";
        else if (std::holds_alternative<LogLinearRocof>(nhpp->rocof)) out["rocof"] = "log_linear";
        else out["rocof"] = "linear";
    }
    return out;
}

void write_json(const fs::path& path, const json& value)
{
    write_file_atomic(path, value.dump(2) + "\n");
}

std::string csv_metadata(const PointProcessModel& model, const SimulationConfig& sim)
{
    std::ostringstream out;
    out << "# model=" << model.kind_name() << "\n";
    out << "# horizon=" << format_double(sim.horizon) << "\n";
    out << "# trajectories=" << sim.n_trajectories << "\n";
    out << "# seed=" << sim.master_seed << "\n";
    return out.str();
}

int cmd_simulate(const CommonArgs& args)
{
    const Config config = load_config(args);
    const PointProcessModel model = parse_model(config);
    const RepairPolicy policy = parse_repair(config);
    const SimulationConfig sim = parse_sim(config);
    const std::string mode = config.get_string("sim", "mode", "summary");

    model.validate_for_horizon(sim.horizon);
    const fs::path out_dir = prepare_out_dir(args);

    if (mode == "events") {
        std::size_t width = 1;
        for (std::size_t v = sim.n_trajectories - 1; v >= 10; v /= 10) ++width;
        for (std::size_t k = 0; k < sim.n_trajectories; ++k) {
            const EventHistory history = simulate_history(model, policy, sim, k);
            std::string index = std::to_string(k);
            index.insert(0, width - index.size(), '0');
            write_file_atomic(out_dir / ("events_" + index + ".csv"),
                              event_history_to_csv(history));
        }
        note(args, "wrote " + std::to_string(sim.n_trajectories) + " event logs to " +
                       out_dir.string());
        return 0;
    }
    if (mode != "summary") {
        throw ConfigError(config.source_name() + ": unknown sim.mode '" + mode +
                          "' (use summary or events)");
    }

    const std::int64_t points = config.get_int("sim", "points", 50);
    if (points < 1) {
        throw ConfigError(config.source_name() + ": sim.points must be >= 1");
    }
    const double window = config.get_double("sim", "window", 0.0);
    const auto summary =
        simulate_summary(model, policy, sim, static_cast<std::size_t>(points), window);

    std::ostringstream out;
    out << csv_metadata(model, sim);
    out << "t,mean_count,count_se,availability,availability_se,rocof,rocof_se\n";
    for (const auto& p : summary) {
        out << format_double(p.t) << "," << format_double(p.mean_count) << ","
            << format_double(p.count_se) << "," << format_double(p.availability) << ","
            << format_double(p.availability_se) << "," << format_double(p.rocof) << ","
            << format_double(p.rocof_se) << "\n";
    }
    const fs::path path = out_dir / "summary.csv";
    write_file_atomic(path, out.str());
    note(args, "wrote " + path.string());
    return 0;
}

std::size_t candidate_minimum(const CandidateSpec& candidate)
{
    switch (candidate.kind) {
        case CandidateSpec::Kind::Hpp: return 1;
        case CandidateSpec::Kind::CrowAmsaa: return 3;
        case CandidateSpec::Kind::Renewal: return 3;
        case CandidateSpec::Kind::Grp: return 5;
    }
    return 1;
}

int cmd_fit(const CommonArgs& args)
{
    const Config config = load_config(args);
    const std::string input = config.get_string("fit", "input");

    std::ifstream in(input);
    if (!in) {
        throw ConfigError("cannot open event log '" + input + "'");
    }
    const ParsedEventLog log = parse_event_log_csv(in, input);
    if (log.fail_times.empty()) {
        throw InsufficientDataError("event log '" + input + "' contains no failures", 0, 1);
    }

    double observation_end = 0.0;
    Truncation truncation = Truncation::Failure;
    if (config.has("fit", "observation_end")) {
        observation_end = config.get_double("fit", "observation_end");
        truncation = Truncation::Time;
    } else if (log.horizon) {
        observation_end = *log.horizon;
        truncation = Truncation::Time;
    } else {
        observation_end = log.fail_times.back();
        truncation = Truncation::Failure;
    }
    if (config.has("fit", "truncation")) {
        const std::string text = config.get_string("fit", "truncation");
        if (text == "time") truncation = Truncation::Time;
        else if (text == "failure") truncation = Truncation::Failure;
        else {
            throw ConfigError(config.source_name() + ": fit.truncation must be time or failure");
        }
    }

    std::vector<CandidateSpec> candidates;
    {
        const std::string list = config.get_string("fit", "candidates", "hpp");
        std::istringstream stream(list);
        std::string item;
        while (std::getline(stream, item, ',')) {
            const auto begin = item.find_first_not_of(" \t");
            if (begin == std::string::npos) continue;
            const auto end = item.find_last_not_of(" \t");
            candidates.push_back(CandidateSpec::parse(item.substr(begin, end - begin + 1)));
        }
    }
    if (candidates.empty()) {
        throw ConfigError(config.source_name() + ": fit.candidates is empty");
    }

    std::size_t min_required = std::numeric_limits<std::size_t>::max();
    std::string minimums;
    for (const auto& c : candidates) {
        min_required = std::min(min_required, candidate_minimum(c));
        if (!minimums.empty()) minimums += ", ";
        minimums += c.name() + " needs " + std::to_string(candidate_minimum(c));
    }
    if (log.fail_times.size() < min_required) {
        throw InsufficientDataError("event log has " + std::to_string(log.fail_times.size()) +
                                        " failures; " + minimums,
                                    log.fail_times.size(), min_required);
    }

    const ObservedEvents obs(log.fail_times, observation_end, truncation);
    const auto ranked = model_select(obs, candidates);

    const fs::path out_dir = prepare_out_dir(args);
    json ranking;
    ranking["schema_version"] = "1";
    ranking["source"] = input;
    ranking["n_events"] = obs.size();
    ranking["observation_end"] = obs.observation_end();
    ranking["truncation"] = to_string(obs.truncation());
    ranking["ranking"] = json::array();

    for (const auto& entry : ranked) {
        json row;
        row["candidate"] = entry.candidate.name();
        row["ok"] = entry.fit.has_value();
        if (entry.fit) {
            row["aic"] = entry.fit->aic;
            row["log_likelihood"] = entry.fit->log_likelihood;

            json fit;
            fit["schema_version"] = "1";
            fit["candidate"] = entry.candidate.name();
            fit["model"] = model_json(entry.fit->model);
            fit["parameters"] = entry.fit->parameters;
            fit["log_likelihood"] = entry.fit->log_likelihood;
            fit["n_parameters"] = entry.fit->n_parameters;
            fit["aic"] = entry.fit->aic;
            fit["diagnostics"] = {{"iterations", entry.fit->diagnostics.iterations},
                                  {"bracket_width", entry.fit->diagnostics.bracket_width},
                                  {"notes", entry.fit->diagnostics.notes}};
            write_json(out_dir / ("fit_" + entry.candidate.name() + ".json"), fit);
        } else {
            row["error"] = entry.error;
        }
        ranking["ranking"].push_back(row);
    }
    const fs::path path = out_dir / "ranking.json";
    write_json(path, ranking);
    note(args, "wrote " + path.string());
    return 0;
}

json assessment_json(const ResiliencyAssessment& assessment, double t_mission)
{
    json out;
    out["schema_version"] = "1";
    out["t_mission"] = t_mission;
    out["mission_rho"] = assessment.mission_rho;
    out["flags"] = assessment.flags;
    out["per_event"] = json::array();
    for (const auto& e : assessment.per_event) {
        json row;
        row["t_fail"] = e.event.t_fail();
        row["t_res"] = e.event.t_res();
        row["q_res"] = e.event.q_res();
        row["rho_r"] = e.rho_r;
        if (e.degree) row["degree"] = to_string(*e.degree);
        out["per_event"].push_back(row);
    }
    return out;
}

int cmd_resiliency(const CommonArgs& args)
{
    const Config config = load_config(args);
    const MissionContext ctx = parse_mission(config, /*baseline_required=*/false);
    const std::vector<ResiliencyEvent> events = parse_events(config);

    const ResiliencyAssessment assessment = mission_resiliency(events, ctx);

    const fs::path out_dir = prepare_out_dir(args);
    write_json(out_dir / "assessment.json", assessment_json(assessment, ctx.t_mission()));

    std::ostringstream csv;
    csv << "t_fail,t_res,q_res,rho_r,degree\n";
    for (const auto& e : assessment.per_event) {
        csv << format_double(e.event.t_fail()) << "," << format_double(e.event.t_res()) << ","
            << format_double(e.event.q_res()) << "," << format_double(e.rho_r) << ","
            << (e.degree ? to_string(*e.degree) : "") << "\n";
    }
    write_file_atomic(out_dir / "assessment.csv", csv.str());
    note(args, "wrote " + (out_dir / "assessment.json").string());
    return 0;
}

int cmd_trajectory(const CommonArgs& args)
{
    const Config config = load_config(args);
    const MissionContext ctx = parse_mission(config, /*baseline_required=*/true);
    const std::vector<ResiliencyEvent> events = parse_events(config);
    if (events.size() != 1) {
        throw ConfigError(config.source_name() +
                          ": the trajectory command needs exactly one [[event]] block, got " +
                          std::to_string(events.size()));
    }
    const std::int64_t resolution = config.get_int("trajectory", "resolution", 201);
    if (resolution < 2) {
        throw ConfigError(config.source_name() + ": trajectory.resolution must be >= 2");
    }
    const double outage_level = config.get_double("trajectory", "outage_level", 0.0);
    if (!(outage_level >= 0.0) || !(outage_level < 1.0)) {
        throw ConfigError(config.source_name() + ": trajectory.outage_level must lie in [0, 1)");
    }

    const PerformanceTrajectory trajectory = performance_trajectory(
        ctx, events.front(), static_cast<std::size_t>(resolution), outage_level);

    const fs::path out_dir = prepare_out_dir(args);
    write_file_atomic(out_dir / "trajectory.csv", trajectory_to_csv(trajectory));

    json out;
    out["schema_version"] = "1";
    out["t_mission"] = ctx.t_mission();
    out["samples"] = json::array();
    for (const auto& sample : trajectory.samples) {
        out["samples"].push_back({{"t", sample.t},
                                  {"level", sample.level},
                                  {"segment", to_string(sample.segment)}});
    }
    write_json(out_dir / "trajectory.json", out);
    note(args, "wrote " + (out_dir / "trajectory.csv").string());
    return 0;
}

int cmd_risk(const CommonArgs& args)
{
    const Config config = load_config(args);
    const std::string path = config.get_string("risk", "portfolio");
    const bool normalized = config.get_bool("risk", "normalized", false);
    const bool want_proxy = config.get_bool("risk", "proxy", normalized);

    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open portfolio '" + path + "'");
    }
    const RiskPortfolio portfolio = parse_portfolio_csv(in, normalized, path);

    json out;
    out["schema_version"] = "1";
    out["normalized"] = normalized;
    out["scenarios"] = json::array();
    for (const auto& s : portfolio.scenarios()) {
        out["scenarios"].push_back({{"id", s.id()},
                                    {"description", s.description()},
                                    {"consequence", s.consequence()},
                                    {"probability", s.probability()},
                                    {"risk", scenario_risk(s)}});
    }
    out["system_risk"] = system_risk(portfolio);
    if (want_proxy) {
        const ReliabilityProxy proxy = reliability_proxy(portfolio);
        out["reliability_proxy"] = proxy.value;
        out["saturated"] = proxy.saturated;
    }

    const fs::path out_dir = prepare_out_dir(args);
    const fs::path file = out_dir / "risk.json";
    write_json(file, out);
    note(args, "wrote " + file.string());
    return 0;
}

template <typename Fn>
int guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const ConfigError& error) {
        std::cerr << "resiq: config error: " << error.what() << "\n";
        return 2;
    } catch (const ModelError& error) {
        std::cerr << "resiq: model error: " << error.what() << "\n";
        return 3;
    } catch (const InsufficientDataError& error) {
        std::cerr << "resiq: insufficient data: " << error.what() << "\n";
        return 4;
    } catch (const DataError& error) {
        std::cerr << "resiq: data error: " << error.what() << "\n";
        return 4;
    } catch (const EventError& error) {
        std::cerr << "resiq: event validation error: " << error.what() << "\n";
        return 5;
    } catch (const PreconditionError& error) {
        std::cerr << "resiq: precondition error: " << error.what() << "\n";
        return 6;
    } catch (const SingularityError& error) {
        std::cerr << "resiq: singularity: " << error.what() << "\n";
        return 6;
    } catch (const std::domain_error& error) {
        std::cerr << "resiq: invalid value: " << error.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& error) {
        std::cerr << "resiq: invalid value: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "resiq: error: " << error.what() << "\n";
        return 1;
    }
}

} // namespace

int run(int argc, const char* const* argv)
{
    CLI::App app{"reliability, risk, and reactive-resiliency toolkit for repairable systems"};
    app.require_subcommand(1);

    CommonArgs simulate_args, fit_args, resiliency_args, trajectory_args, risk_args;

    auto add_common = [](CLI::App* cmd, CommonArgs& args) {
        cmd->add_option("--config", args.config_path, "configuration file");
        cmd->add_option("--set", args.overrides, "override a config key (section.key=value)");
        cmd->add_option("--out", args.out_dir, "output directory (default: out)");
        cmd->add_option("--seed", args.seed, "override sim.seed; -1 draws an entropy seed");
        cmd->add_flag("--quiet", args.quiet, "suppress progress notes");
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "simulate failure/repair histories, write curves or logs");
    add_common(simulate, simulate_args);
    CLI::App* fit = app.add_subcommand("fit", "fit point-process models to an event log");
    add_common(fit, fit_args);
    CLI::App* resiliency =
        app.add_subcommand("resiliency", "assess reactive resiliency of mission events");
    add_common(resiliency, resiliency_args);
    CLI::App* trajectory =
        app.add_subcommand("trajectory", "export the performance trajectory of one disruption");
    add_common(trajectory, trajectory_args);
    CLI::App* risk = app.add_subcommand("risk", "aggregate a scenario risk portfolio");
    add_common(risk, risk_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    }

    if (simulate->parsed()) return guarded([&]() { return cmd_simulate(simulate_args); });
    if (fit->parsed()) return guarded([&]() { return cmd_fit(fit_args); });
    if (resiliency->parsed()) return guarded([&]() { return cmd_resiliency(resiliency_args); });
    if (trajectory->parsed()) return guarded([&]() { return cmd_trajectory(trajectory_args); });
    if (risk->parsed()) return guarded([&]() { return cmd_risk(risk_args); });
    return 2;
}

} // namespace resiq::cli
