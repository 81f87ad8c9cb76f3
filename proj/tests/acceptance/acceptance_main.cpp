// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails. Tolerances are pinned in code.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "resiq/cli.hpp"
#include "resiq/error.hpp"
#include "resiq/estimation.hpp"
#include "resiq/lifetime.hpp"
#include "resiq/pointproc.hpp"
#include "resiq/resiliency.hpp"
#include "resiq/risk.hpp"
#include "support/oracles.hpp"

using namespace resiq;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message)
    {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

SimulationConfig make_config(double horizon, std::size_t n, std::uint64_t seed)
{
    SimulationConfig cfg;
    cfg.horizon = horizon;
    cfg.n_trajectories = n;
    cfg.master_seed = seed;
    return cfg;
}

std::vector<double> first_failures(const PointProcessModel& model, double horizon,
                                   std::size_t n, std::uint64_t seed)
{
    const SimulationConfig cfg = make_config(horizon, n, seed);
    const RepairPolicy instant = RepairPolicy::instantaneous();
    std::vector<double> draws;
    draws.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const EventHistory h = simulate_history(model, instant, cfg, k);
        if (!h.events().empty()) draws.push_back(h.events().front().fail_time);
    }
    return draws;
}

ObservedEvents simulate_log(const PointProcessModel& model, double horizon,
                            std::uint64_t seed)
{
    const SimulationConfig cfg = make_config(horizon, 1, seed);
    const EventHistory history =
        simulate_history(model, RepairPolicy::instantaneous(), cfg, 0);
    std::vector<double> times;
    times.reserve(history.events().size());
    for (const auto& e : history.events()) times.push_back(e.fail_time);
    return ObservedEvents(std::move(times), horizon, Truncation::Time);
}

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string fmt(double v)
{
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// ---------------------------------------------------------------------------

Check criterion_1_edge_semantics()
{
    Check c;
    const MissionContext ctx(100.0);
    c.require(reactive_resiliency(ResiliencyEvent(40.0, 0.0, 0.0), ctx) == 1.0,
              "perfectly resilient case must be exactly 1");
    c.require(reactive_resiliency(ResiliencyEvent(40.0, 60.0, 0.0), ctx) == 0.0,
              "t_res == remaining mission must be exactly 0");
    c.require(reactive_resiliency(ResiliencyEvent(40.0, 120.0, 0.3), ctx) == 0.0,
              "t_res beyond the mission must be exactly 0");
    c.require(reactive_resiliency(ResiliencyEvent(0.0, 0.0, 0.0), ctx) == 1.0,
              "failure at t=0 with instant good-as-new recovery must be 1");
    return c;
}

Check criterion_2_limit_property()
{
    Check c;
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t_mission = 0.5 + 500.0 * unit(gen);
        const double t_fail = 0.999 * t_mission * unit(gen);
        const double q_res = -1.0 + 2.0 * unit(gen);
        const double eps = 1e-6 * (t_mission - t_fail);
        const MissionContext ctx(t_mission);
        const double rho = reactive_resiliency(ResiliencyEvent(t_fail, eps, q_res), ctx);
        worst = std::max(worst, std::abs(rho - (1.0 - q_res)));
    }
    c.require(worst < 1e-5, "limit deviation " + fmt(worst) + " exceeds 1e-5");
    return c;
}

Check criterion_3_reduction_chain()
{
    Check c;
    const std::size_t n = 10000;
    const double crit = oracle::ks_two_sample_critical(n, n, 0.01);

    const auto hpp = first_failures(PointProcessModel::hpp(1.0), 25.0, n, 11);
    const auto rp_exp = first_failures(
        PointProcessModel::renewal(LifetimeDistribution::exponential(1.0)), 25.0, n, 22);
    const auto grp_exp_a = first_failures(
        PointProcessModel::grp(LifetimeDistribution::exponential(1.0), 0.7,
                               KijimaVariant::TypeII),
        25.0, n, 33);
    const auto grp_exp_b = first_failures(
        PointProcessModel::grp(LifetimeDistribution::exponential(1.0), 1.3,
                               KijimaVariant::TypeI),
        25.0, n, 344);

    c.require(hpp.size() == n && rp_exp.size() == n, "censored first-failure draws");
    double d = oracle::ks_two_sample_statistic(hpp, rp_exp);
    c.require(d < crit, "HPP vs RP{Exp}: D=" + fmt(d) + " crit=" + fmt(crit));
    d = oracle::ks_two_sample_statistic(hpp, grp_exp_a);
    c.require(d < crit, "HPP vs GRP{Exp,q=0.7}: D=" + fmt(d));
    d = oracle::ks_two_sample_statistic(rp_exp, grp_exp_b);
    c.require(d < crit, "RP{Exp} vs GRP{Exp,q=1.3}: D=" + fmt(d));

    const auto rp_weib = first_failures(
        PointProcessModel::renewal(LifetimeDistribution::weibull(2.0, 1.0)), 6.0, n, 55);
    const auto grp_weib = first_failures(
        PointProcessModel::grp(LifetimeDistribution::weibull(2.0, 1.0), 0.0,
                               KijimaVariant::TypeI),
        6.0, n, 66);
    d = oracle::ks_two_sample_statistic(rp_weib, grp_weib);
    c.require(d < crit, "RP{Weibull} vs GRP{Weibull,q=0}: D=" + fmt(d));
    return c;
}

Check criterion_4_minimal_repair()
{
    Check c;
    const auto grp = PointProcessModel::grp(LifetimeDistribution::weibull(2.0, 1.0), 1.0,
                                            KijimaVariant::TypeI);
    const SimulationConfig cfg = make_config(2.0, 100000, 77);
    for (double t : {0.5, 1.0, 2.0}) {
        const Estimate estimate = expected_count_mc(grp, t, cfg);
        const double analytic = t * t; // power-law NHPP mean (t/eta)^beta
        c.require(std::abs(estimate.value - analytic) < 3.0 * estimate.std_error,
                  "t=" + fmt(t) + ": MC " + fmt(estimate.value) + " vs " + fmt(analytic) +
                      " (3se=" + fmt(3.0 * estimate.std_error) + ")");
    }
    return c;
}

Check criterion_5_gamma_closed_form()
{
    Check c;
    // Pre-build oracle: the Erlang-2 renewal function from the convolution
    // series must match the Laplace-inversion closed form.
    const double mu = 2.0;
    const double t = 1.0;
    double series = 0.0;
    for (int k = 1; k < 80; ++k) {
        series += LifetimeDistribution::gamma(2.0 * k, mu).cdf(t);
    }
    const double closed = 0.5 * mu * t - 0.25 + 0.25 * std::exp(-2.0 * mu * t);
    c.require(std::abs(series - closed) < 1e-10,
              "series " + fmt(series) + " vs closed form " + fmt(closed));
    c.require(std::abs(closed - 0.7545789097) < 1e-9, "reference value drifted");

    const auto rp = PointProcessModel::renewal(LifetimeDistribution::gamma(2.0, 2.0));
    const Estimate estimate = expected_count_mc(rp, t, make_config(1.0, 100000, 88));
    c.require(std::abs(estimate.value - closed) < 3.0 * estimate.std_error,
              "MC " + fmt(estimate.value) + " vs closed " + fmt(closed) +
                  " (3se=" + fmt(3.0 * estimate.std_error) + ")");
    return c;
}

Check criterion_6_hpp_analytics()
{
    Check c;
    const Estimate count =
        expected_count_mc(PointProcessModel::hpp(0.5), 10.0, make_config(10.0, 100000, 99));
    c.require(std::abs(count.value - 5.0) < 0.01 * 5.0,
              "mean count " + fmt(count.value) + " not within 1% of 5");

    // Alternating renewal steady state: MTBF/(MTBF+MTTR) = 10/11.
    const auto model = PointProcessModel::hpp(0.1);
    const auto repair = RepairPolicy::distributed(LifetimeDistribution::exponential(1.0));
    const Estimate a =
        availability(model, repair, 200.0, make_config(200.0, 100000, 111));
    const double steady = 10.0 / 11.0;
    c.require(std::abs(a.value - steady) < 3.0 * a.std_error,
              "availability " + fmt(a.value) + " vs " + fmt(steady) +
                  " (3se=" + fmt(3.0 * a.std_error) + ")");
    return c;
}

Check criterion_7_estimator_recovery()
{
    Check c;

    std::vector<double> hpp_rates;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        const ObservedEvents obs =
            simulate_log(PointProcessModel::hpp(0.5), 1000.0, 1000 + rep);
        hpp_rates.push_back(fit_hpp(obs).parameters.at("rate"));
    }
    const double hpp_median = median(hpp_rates);
    c.require(std::abs(hpp_median - 0.5) < 3.0 * std::sqrt(0.5 / 1000.0),
              "HPP median rate " + fmt(hpp_median));

    std::vector<double> betas;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        const ObservedEvents obs = simulate_log(
            PointProcessModel::nhpp(PowerLawRocof{1.0, 2.0}), 50.0, 2000 + rep);
        betas.push_back(fit_crow_amsaa(obs).parameters.at("beta"));
    }
    const double beta_median = median(betas);
    c.require(std::abs(beta_median - 2.0) < 0.15 * 2.0,
              "Crow-AMSAA median beta " + fmt(beta_median));

    std::vector<double> shapes;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        const ObservedEvents obs = simulate_log(
            PointProcessModel::renewal(LifetimeDistribution::weibull(2.0, 1.0)), 180.0,
            3000 + rep);
        shapes.push_back(fit_renewal(obs, DistFamily::Weibull).parameters.at("shape"));
    }
    const double shape_median = median(shapes);
    c.require(std::abs(shape_median - 2.0) < 0.10 * 2.0,
              "renewal Weibull median shape " + fmt(shape_median));

    std::vector<double> qs;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        const ObservedEvents obs = simulate_log(
            PointProcessModel::grp(LifetimeDistribution::weibull(2.0, 1.0), 0.0,
                                   KijimaVariant::TypeI),
            180.0, 4000 + rep);
        qs.push_back(fit_grp(obs, DistFamily::Weibull).parameters.at("q"));
    }
    const double q_median = median(qs);
    c.require(std::abs(q_median) < 0.15, "GRP median q " + fmt(q_median));
    return c;
}

Check criterion_8_mle_duality()
{
    Check c;
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto relative = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
    };

    // 20 random datasets across the closed-form estimators.
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t seed = 5000 + static_cast<std::uint64_t>(trial);
        switch (trial % 4) {
            case 0: { // HPP
                const double rate = 0.2 + unit(gen);
                const ObservedEvents obs =
                    simulate_log(PointProcessModel::hpp(rate), 200.0, seed);
                if (obs.size() < 3) break;
                const double closed = fit_hpp(obs).parameters.at("rate");
                const double n = static_cast<double>(obs.size());
                const double end = obs.observation_end();
                const double numeric = oracle::maximize_1d(
                    [&](double r) { return n * std::log(r) - r * end; }, 1e-4, 10.0);
                c.require(relative(closed, numeric) < 1e-6,
                          "HPP duality: " + fmt(closed) + " vs " + fmt(numeric));
                break;
            }
            case 1: { // Crow-AMSAA, time truncated
                const ObservedEvents obs = simulate_log(
                    PointProcessModel::nhpp(PowerLawRocof{0.5 + unit(gen), 1.2 + unit(gen)}),
                    30.0, seed);
                if (obs.size() < 5) break;
                const FitResult fit = fit_crow_amsaa(obs);
                const auto& times = obs.failure_times();
                const double end = obs.observation_end();
                const double n = static_cast<double>(times.size());
                double sum_log = 0.0;
                for (double t : times) sum_log += std::log(t);
                auto ll = [&](double lambda, double beta) {
                    return n * (std::log(lambda) + std::log(beta)) +
                           (beta - 1.0) * sum_log - lambda * std::pow(end, beta);
                };
                const double beta_numeric = oracle::maximize_1d(
                    [&](double beta) {
                        const double lambda = oracle::maximize_1d(
                            [&](double l) { return ll(l, beta); }, 1e-6, 50.0);
                        return ll(lambda, beta);
                    },
                    0.05, 8.0);
                c.require(relative(fit.parameters.at("beta"), beta_numeric) < 1e-6,
                          "Crow beta duality: " + fmt(fit.parameters.at("beta")) + " vs " +
                              fmt(beta_numeric));
                break;
            }
            case 2: { // exponential renewal
                const double rate = 0.5 + unit(gen);
                const ObservedEvents obs = simulate_log(
                    PointProcessModel::renewal(LifetimeDistribution::exponential(rate)),
                    100.0, seed);
                if (obs.size() < 3) break;
                const double closed =
                    fit_renewal(obs, DistFamily::Exponential).parameters.at("rate");
                const auto gaps = obs.gaps();
                const double numeric = oracle::maximize_1d(
                    [&](double r) {
                        double ll = 0.0;
                        for (double x : gaps) ll += std::log(r) - r * x;
                        return ll;
                    },
                    1e-4, 20.0);
                c.require(relative(closed, numeric) < 1e-6,
                          "exp renewal duality: " + fmt(closed) + " vs " + fmt(numeric));
                break;
            }
            default: { // lognormal renewal, coordinate ascent from a perturbed start
                const ObservedEvents obs = simulate_log(
                    PointProcessModel::renewal(
                        LifetimeDistribution::lognormal(0.3 * unit(gen), 0.3 + 0.5 * unit(gen))),
                    150.0, seed);
                if (obs.size() < 5) break;
                const FitResult fit = fit_renewal(obs, DistFamily::Lognormal);
                const auto gaps = obs.gaps();
                auto ll = [&](double mu, double sigma) {
                    double total = 0.0;
                    for (double x : gaps) {
                        const double z = (std::log(x) - mu) / sigma;
                        total += -std::log(x * sigma) - 0.5 * z * z;
                    }
                    return total - static_cast<double>(gaps.size()) *
                                       0.5 * std::log(2.0 * M_PI);
                };
                double mu = fit.parameters.at("log_mean") + 0.3;
                double sigma = fit.parameters.at("log_sd") * 1.4;
                for (int round = 0; round < 4; ++round) {
                    mu = oracle::maximize_1d([&](double m) { return ll(m, sigma); }, mu - 2.0,
                                             mu + 2.0);
                    sigma = oracle::maximize_1d([&](double s) { return ll(mu, s); }, 1e-3,
                                                sigma * 4.0);
                }
                c.require(relative(fit.parameters.at("log_mean"), mu) < 1e-6,
                          "lognormal mu duality: " + fmt(fit.parameters.at("log_mean")) +
                              " vs " + fmt(mu));
                c.require(relative(fit.parameters.at("log_sd"), sigma) < 1e-6,
                          "lognormal sigma duality: " + fmt(fit.parameters.at("log_sd")) +
                              " vs " + fmt(sigma));
                break;
            }
        }
    }
    return c;
}

Check criterion_9_degree_classification()
{
    Check c;
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        LifetimeDistribution baseline = [&]() {
            switch (trial % 4) {
                case 0: return LifetimeDistribution::exponential(0.2 + unit(gen));
                case 1:
                    return LifetimeDistribution::weibull(0.6 + 2.0 * unit(gen),
                                                         1.0 + 5.0 * unit(gen));
                case 2:
                    return LifetimeDistribution::gamma(0.6 + 2.0 * unit(gen),
                                                       0.3 + unit(gen));
                default: return LifetimeDistribution::lognormal(unit(gen), 0.3 + unit(gen));
            }
        }();
        const double t_mission = 10.0 + 100.0 * unit(gen);
        const double t_fail = (0.05 + 0.9 * unit(gen)) * t_mission;
        const MissionContext ctx(t_mission, baseline);
        const double f_star = baseline.cdf(t_fail);

        c.require(classify_degree(0.0, ctx, t_fail) == ResiliencyDegree::GoodAsNew,
                  "q=0 must be good-as-new");
        c.require(classify_degree(-0.01 - unit(gen), ctx, t_fail) ==
                      ResiliencyDegree::BetterThanNew,
                  "q<0 must be better-than-new");
        c.require(classify_degree(f_star, ctx, t_fail) == ResiliencyDegree::SameAsOld,
                  "q=F(t_fail) must be same-as-old (F*=" + fmt(f_star) + ")");
        const double beyond = f_star + (1.0 - f_star) * (0.1 + 0.8 * unit(gen));
        if (beyond > f_star + 1e-8 && beyond <= 1.0) {
            c.require(classify_degree(beyond, ctx, t_fail) == ResiliencyDegree::WorseThanOld,
                      "q>F(t_fail) must be worse-than-old");
        }
    }
    return c;
}

int run_cli(const std::vector<std::string>& args)
{
    std::vector<const char*> argv;
    argv.push_back("resiq");
    for (const auto& a : args) argv.push_back(a.c_str());
    return resiq::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool identical_trees(const fs::path& a, const fs::path& b, std::string& detail)
{
    std::vector<fs::path> names;
    for (const auto& entry : fs::directory_iterator(a)) {
        names.push_back(entry.path().filename());
    }
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        if (!fs::exists(b / name)) {
            detail = "missing " + (b / name).string();
            return false;
        }
        if (slurp(a / name) != slurp(b / name)) {
            detail = "differs: " + name.string();
            return false;
        }
    }
    return !names.empty();
}

Check criterion_10_determinism()
{
    Check c;
    const fs::path root = fs::temp_directory_path() / "resiq_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    auto write = [](const fs::path& path, const std::string& content) {
        std::ofstream out(path);
        out << content;
    };

    // simulate (summary) across thread counts, and twice at each count.
    const fs::path sim_cfg = root / "sim.toml";
    write(sim_cfg,
          "[model]\nkind = grp\nq = 0.5\nvariant = kijima1\n"
          "[dist]\nfamily = weibull\nshape = 2\nscale = 1\n"
          "[repair]\nkind = distributed\nfamily = exponential\nrate = 5\n"
          "[sim]\nhorizon = 10\ntrajectories = 5000\nseed = 42\npoints = 25\n");
    for (const char* threads : {"1", "4"}) {
        for (const char* tag : {"x", "y"}) {
            const fs::path out = root / (std::string("sim_") + threads + tag);
            if (run_cli({"simulate", "--config", sim_cfg.string(), "--out", out.string(),
                         "--set", std::string("sim.threads=") + threads, "--quiet"}) != 0) {
                c.require(false, "simulate failed");
                return c;
            }
        }
    }
    std::string detail;
    c.require(identical_trees(root / "sim_1x", root / "sim_1y", detail),
              "simulate rerun differs: " + detail);
    c.require(identical_trees(root / "sim_1x", root / "sim_4x", detail),
              "simulate across threads differs: " + detail);
    c.require(identical_trees(root / "sim_4x", root / "sim_4y", detail),
              "simulate rerun (4 threads) differs: " + detail);

    // events mode + fit + resiliency + trajectory + risk, each run twice.
    const fs::path events_cfg = root / "events.toml";
    write(events_cfg,
          "[model]\nkind = hpp\nrate = 0.4\n"
          "[sim]\nhorizon = 50\ntrajectories = 3\nseed = 7\nmode = events\n");
    const fs::path res_cfg = root / "res.toml";
    write(res_cfg,
          "[mission]\nt_mission = 100\n"
          "[dist]\nfamily = weibull\nshape = 1.5\nscale = 50\n"
          "[trajectory]\nresolution = 101\n"
          "[[event]]\nt_fail = 40\nt_res = 15\nq_res = 0.2\n");
    const fs::path portfolio = root / "portfolio.csv";
    write(portfolio, "id,description,consequence,probability\ns1,x,0.8,0.05\ns2,y,0.3,0.2\n");
    const fs::path risk_cfg = root / "risk.toml";
    write(risk_cfg,
          "[risk]\nportfolio = \"" + portfolio.string() + "\"\nnormalized = true\n");

    const fs::path fit_cfg = root / "fit.toml";
    write(fit_cfg, "[fit]\ninput = \"" + (root / "ev_p" / "events_0.csv").string() +
                       "\"\ncandidates = hpp,crow_amsaa,rp_weibull\n");
    for (const char* tag : {"p", "q"}) {
        const std::string suffix = tag;
        if (run_cli({"simulate", "--config", events_cfg.string(), "--out",
                     (root / ("ev_" + suffix)).string(), "--quiet"}) != 0 ||
            run_cli({"resiliency", "--config", res_cfg.string(), "--out",
                     (root / ("res_" + suffix)).string(), "--quiet"}) != 0 ||
            run_cli({"trajectory", "--config", res_cfg.string(), "--out",
                     (root / ("tr_" + suffix)).string(), "--quiet"}) != 0 ||
            run_cli({"risk", "--config", risk_cfg.string(), "--out",
                     (root / ("rk_" + suffix)).string(), "--quiet"}) != 0 ||
            run_cli({"fit", "--config", fit_cfg.string(), "--out",
                     (root / ("fit_" + suffix)).string(), "--quiet"}) != 0) {
            c.require(false, "a command failed");
            return c;
        }
    }
    c.require(identical_trees(root / "ev_p", root / "ev_q", detail), "events: " + detail);
    c.require(identical_trees(root / "res_p", root / "res_q", detail),
              "resiliency: " + detail);
    c.require(identical_trees(root / "tr_p", root / "tr_q", detail), "trajectory: " + detail);
    c.require(identical_trees(root / "rk_p", root / "rk_q", detail), "risk: " + detail);
    c.require(identical_trees(root / "fit_p", root / "fit_q", detail), "fit: " + detail);
    return c;
}

Check criterion_11_lifetime_suite()
{
    Check c;
    const std::vector<LifetimeDistribution> families = {
        LifetimeDistribution::exponential(0.5),
        LifetimeDistribution::weibull(2.0, 1.0),
        LifetimeDistribution::gamma(2.0, 1.5),
        LifetimeDistribution::lognormal(0.0, 0.5),
    };

    for (const auto& dist : families) {
        c.require(dist.reliability(0.0) == 1.0, dist.family_name() + ": R(0) != 1");

        double prev = 1.0;
        for (int i = 1; i <= 200; ++i) {
            const double t = dist.mean() * 0.04 * i;
            const double r = dist.reliability(t);
            c.require(r <= prev + 1e-15, dist.family_name() + ": R not monotone");
            prev = r;
        }

        for (double p : {1e-6, 0.05, 0.3, 0.5, 0.8, 0.99, 0.99999}) {
            const double t = dist.quantile(p);
            c.require(std::abs(dist.cdf(t) - p) <= 1e-8 * std::max(p, 1e-8),
                      dist.family_name() + ": cdf(quantile(p)) round trip at p=" + fmt(p));
        }
        for (double k : {0.2, 0.7, 1.3, 2.6}) {
            const double t = dist.mean() * k;
            const double p = dist.cdf(t);
            if (p > 0.0 && p < 1.0) {
                c.require(std::abs(dist.quantile(p) - t) <= 1e-8 * t,
                          dist.family_name() + ": quantile(cdf(t)) round trip");
            }
        }

        // Sampler KS at 99% with 1e5 draws.
        const std::size_t n = 100000;
        RandomStream rng(2026, 1);
        std::vector<double> draws(n);
        for (auto& d : draws) d = dist.sample(rng);
        const double stat =
            oracle::ks_statistic(std::move(draws), [&](double t) { return dist.cdf(t); });
        c.require(stat < oracle::ks_critical(n, 0.01),
                  dist.family_name() + ": sampler KS D=" + fmt(stat));
    }

    // Single constant-hazard segment is the exponential, to 1e-12.
    const BathtubProfile flat({{0.0, ConstantHazard{0.31}}});
    const auto expd = LifetimeDistribution::exponential(0.31);
    for (double t = 0.0; t <= 20.0; t += 0.25) {
        c.require(std::abs(flat.reliability(t) - expd.reliability(t)) <= 1e-12,
                  "bathtub-constant vs exponential at t=" + fmt(t));
    }
    return c;
}

Check criterion_12_risk_identities()
{
    Check c;
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int trial = 0; trial < 200; ++trial) {
        const double consequence = 10.0 * unit(gen);
        const double p = unit(gen);
        const double k = unit(gen);
        const double base = scenario_risk(Scenario("s", "", consequence, p));
        c.require(std::abs(scenario_risk(Scenario("s", "", k * consequence, p)) - k * base) <
                      1e-12 * std::max(1.0, base),
                  "bilinearity in consequence");
        c.require(std::abs(scenario_risk(Scenario("s", "", consequence, k * p)) - k * base) <
                      1e-12 * std::max(1.0, base),
                  "bilinearity in probability");
    }

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Scenario> left, right, both;
        for (int i = 0; i < 60; ++i) {
            Scenario s("l" + std::to_string(i), "", 100.0 * unit(gen), unit(gen));
            left.push_back(s);
            both.push_back(s);
        }
        for (int i = 0; i < 60; ++i) {
            Scenario s("r" + std::to_string(i), "", 100.0 * unit(gen), unit(gen));
            right.push_back(s);
            both.push_back(s);
        }
        const double split = system_risk(RiskPortfolio(left, false)) +
                             system_risk(RiskPortfolio(right, false));
        const double joint = system_risk(RiskPortfolio(both, false));
        c.require(std::abs(joint - split) <= 1e-12 * std::max(1.0, std::abs(joint)),
                  "concatenation additivity");
    }

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Scenario> scenarios;
        for (int i = 0; i < 8; ++i) {
            scenarios.emplace_back("s" + std::to_string(i), "", unit(gen), unit(gen));
        }
        const ReliabilityProxy proxy = reliability_proxy(RiskPortfolio(scenarios, true));
        c.require(proxy.value >= 0.0 && proxy.value <= 1.0, "proxy outside [0, 1]");
    }

    const ReliabilityProxy saturated = reliability_proxy(RiskPortfolio(
        {Scenario("a", "", 1.0, 0.8), Scenario("b", "", 1.0, 0.7)}, true));
    c.require(saturated.value == 0.0 && saturated.saturated,
              "saturation must clamp to 0 and set the flag");
    return c;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string description;
        std::function<Check()> run;
    };

    const std::vector<Criterion> criteria = {
        {1, "reactive resiliency edge semantics (exact 1 / exact 0)",
         criterion_1_edge_semantics},
        {2, "reactive resiliency limit: rho -> 1 - q_res as t_res -> 0",
         criterion_2_limit_property},
        {3, "process reduction chain (pairwise KS at 1%)", criterion_3_reduction_chain},
        {4, "minimal repair: GRP{Weibull,q=1} matches power-law NHPP mean",
         criterion_4_minimal_repair},
        {5, "Erlang-2 renewal closed form vs Monte Carlo", criterion_5_gamma_closed_form},
        {6, "HPP analytics: mean count within 1%, steady-state availability",
         criterion_6_hpp_analytics},
        {7, "estimator recovery of simulated ground truth", criterion_7_estimator_recovery},
        {8, "closed-form vs numerical MLE duality at 1e-6", criterion_8_mle_duality},
        {9, "resiliency degree classification on random baselines",
         criterion_9_degree_classification},
        {10, "CLI determinism: byte-identical reruns across thread counts",
         criterion_10_determinism},
        {11, "lifetime math: monotone R, round trips, sampler KS, bathtub",
         criterion_11_lifetime_suite},
        {12, "risk identities: bilinearity, additivity, proxy bounds",
         criterion_12_risk_identities},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception& error) {
            result.ok = false;
            result.detail = std::string("exception: ") + error.what();
        }
        if (result.ok) {
            std::cout << "PASS criterion " << criterion.id << ": " << criterion.description
                      << "\n";
        } else {
            ++failures;
            std::cout << "FAIL criterion " << criterion.id << ": " << criterion.description
                      << " [" << result.detail << "]\n";
        }
        std::cout.flush();
    }
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 12 criteria passed\n";
    return 0;
}
