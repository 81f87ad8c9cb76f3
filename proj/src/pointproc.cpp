#include "resiq/pointproc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "resiq/error.hpp"
#include "resiq/numeric.hpp"

namespace resiq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

} // namespace

std::string to_string(KijimaVariant variant)
{
    return variant == KijimaVariant::TypeI ? "kijima1" : "kijima2";
}

PointProcessModel::PointProcessModel(Variant value) : value_(std::move(value))
{
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Hpp>) {
                require_finite_positive(m.rate, "HPP rate");
            } else if constexpr (std::is_same_v<T, Nhpp>) {
                std::visit(
                    [](const auto& law) {
                        using L = std::decay_t<decltype(law)>;
                        if constexpr (std::is_same_v<L, PowerLawRocof>) {
                            require_finite_positive(law.lambda, "power-law lambda");
                            require_finite_positive(law.beta, "power-law beta");
                        } else if constexpr (std::is_same_v<L, LogLinearRocof>) {
                            if (!std::isfinite(law.alpha) || !std::isfinite(law.beta)) {
                                throw std::invalid_argument(
                                    "log-linear parameters must be finite");
                            }
                        } else {
                            if (!(law.a >= 0.0) || !std::isfinite(law.a) ||
                                !std::isfinite(law.b)) {
                                throw std::invalid_argument(
                                    "linear ROCOF requires a >= 0 and finite b");
                            }
                        }
                    },
                    m.rocof);
            } else if constexpr (std::is_same_v<T, Grp>) {
                if (!std::isfinite(m.q)) {
                    throw std::invalid_argument("rejuvenation parameter q must be finite");
                }
            }
        },
        value_);
}

PointProcessModel PointProcessModel::hpp(double rate)
{
    return PointProcessModel(Hpp{rate});
}

PointProcessModel PointProcessModel::renewal(LifetimeDistribution ttf)
{
    return PointProcessModel(Rp{std::move(ttf)});
}

PointProcessModel PointProcessModel::nhpp(RocofLaw rocof)
{
    return PointProcessModel(Nhpp{std::move(rocof)});
}

PointProcessModel PointProcessModel::grp(LifetimeDistribution ttf, double q,
                                         KijimaVariant variant)
{
    return PointProcessModel(Grp{std::move(ttf), q, variant});
}

std::string PointProcessModel::kind_name() const
{
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Hpp>) return "hpp";
            if constexpr (std::is_same_v<T, Rp>) return "rp";
            if constexpr (std::is_same_v<T, Nhpp>) return "nhpp";
            return "grp";
        },
        value_);
}

void PointProcessModel::validate_for_horizon(double horizon) const
{
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ModelError("simulation horizon must be positive and finite");
    }
    if (const auto* nhpp = std::get_if<Nhpp>(&value_)) {
        if (const auto* linear = std::get_if<LinearRocof>(&nhpp->rocof)) {
            if (linear->a + linear->b * horizon < 0.0) {
                throw ModelError("linear ROCOF goes negative inside the horizon (a + b*t < 0 at t = " +
                                 std::to_string(horizon) + ")");
            }
        }
    }
}

RepairPolicy::RepairPolicy(Variant value) : value_(std::move(value))
{
    if (const auto* fixed = std::get_if<FixedRepair>(&value_)) {
        if (!(fixed->duration >= 0.0) || !std::isfinite(fixed->duration)) {
            throw std::invalid_argument("fixed repair duration must be >= 0 and finite");
        }
    }
}

RepairPolicy RepairPolicy::instantaneous()
{
    return RepairPolicy(Instantaneous{});
}

RepairPolicy RepairPolicy::fixed(double duration)
{
    return RepairPolicy(FixedRepair{duration});
}

RepairPolicy RepairPolicy::distributed(LifetimeDistribution duration)
{
    return RepairPolicy(DistributedRepair{std::move(duration)});
}

EventHistory::EventHistory(std::vector<Event> events, double horizon, Provenance provenance)
    : events_(std::move(events)), horizon_(horizon), provenance_(provenance)
{
    if (!(horizon_ >= 0.0) || !std::isfinite(horizon_)) {
        throw EventError("event history horizon must be non-negative and finite");
    }
    double prev_fail = -1.0;
    double prev_repair = 0.0;
    for (const auto& e : events_) {
        if (!(e.fail_time >= 0.0) || !(e.fail_time <= horizon_)) {
            throw EventError("failure time outside [0, horizon]");
        }
        if (!(e.repair_complete_time >= e.fail_time) ||
            !(e.repair_complete_time <= horizon_)) {
            throw EventError("repair completion must lie in [fail time, horizon]");
        }
        if (!(e.fail_time > prev_fail)) {
            throw EventError("failure times must be strictly increasing");
        }
        if (e.fail_time < prev_repair) {
            throw EventError("failure occurred before the previous repair completed");
        }
        prev_fail = e.fail_time;
        prev_repair = e.repair_complete_time;
    }
}

bool EventHistory::operating_at(double t) const
{
    if (!(t >= 0.0) || !(t <= horizon_)) {
        throw std::domain_error("operating_at: t outside [0, horizon]");
    }
    auto it = std::upper_bound(events_.begin(), events_.end(), t,
                               [](double value, const Event& e) { return value < e.fail_time; });
    if (it == events_.begin()) return true;
    --it;
    if (t < it->repair_complete_time) return false;
    // A repair truncated at the horizon is still in progress at the horizon.
    if (t == it->repair_complete_time && it->repair_complete_time == horizon_ &&
        it->fail_time < it->repair_complete_time) {
        return false;
    }
    return true;
}

std::size_t EventHistory::count_failures_through(double t) const
{
    auto it = std::upper_bound(events_.begin(), events_.end(), t,
                               [](double value, const Event& e) { return value < e.fail_time; });
    return static_cast<std::size_t>(it - events_.begin());
}

void validate(const SimulationConfig& cfg)
{
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
        throw ModelError("simulation horizon must be positive and finite");
    }
    if (cfg.n_trajectories < 1) {
        throw ModelError("simulation needs at least one trajectory");
    }
}

namespace {

// Cumulative intensity of an NHPP law and its first-passage inverse.
double cumulative_intensity(const RocofLaw& law, double t)
{
    return std::visit(
        [t](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, PowerLawRocof>) {
                return l.lambda * std::pow(t, l.beta);
            } else if constexpr (std::is_same_v<L, LogLinearRocof>) {
                if (l.beta == 0.0) return t * std::exp(l.alpha);
                return std::exp(l.alpha) * std::expm1(l.beta * t) / l.beta;
            } else {
                return l.a * t + 0.5 * l.b * t * t;
            }
        },
        law);
}

// Smallest t with Lambda(t) = y; +inf when the total mass never reaches y.
double inverse_cumulative_intensity(const RocofLaw& law, double y)
{
    return std::visit(
        [y](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, PowerLawRocof>) {
                return std::pow(y / l.lambda, 1.0 / l.beta);
            } else if constexpr (std::is_same_v<L, LogLinearRocof>) {
                if (l.beta == 0.0) return y * std::exp(-l.alpha);
                const double arg = l.beta * y * std::exp(-l.alpha);
                if (arg <= -1.0) return kInf; // decreasing intensity ran out of mass
                return std::log1p(arg) / l.beta;
            } else {
                if (l.b == 0.0) return y / l.a;
                const double disc = l.a * l.a + 2.0 * l.b * y;
                if (disc < 0.0) return kInf;
                return (-l.a + std::sqrt(disc)) / l.b;
            }
        },
        law);
}

double kijima_step(double age, double duration, double q, KijimaVariant variant)
{
    const double next =
        variant == KijimaVariant::TypeI ? age + q * duration : q * (age + duration);
    return std::max(next, 0.0);
}

// Conditional operating gap given survival to virtual age v: the inverse
// transform of Pr(gap > s) = R(v + s) / R(v) at uniform u. Mathematically
// this is quantile(1 - u R(v)) - v, evaluated in survival space so the
// 1 - p subtraction cannot cancel once u R(v) shrinks below one ulp.
double conditional_gap(const LifetimeDistribution& ttf, double v, double u)
{
    if (const auto* exp_law = std::get_if<Exponential>(&ttf.family())) {
        return -std::log(u) / exp_law->rate; // memoryless, v drops out exactly
    }
    if (const auto* weib = std::get_if<Weibull>(&ttf.family())) {
        const double hv = std::pow(v / weib->scale, weib->shape);
        const double t = weib->scale * std::pow(hv - std::log(u), 1.0 / weib->shape);
        return t - v;
    }
    const double rv = ttf.reliability(v);
    const double target = u * rv;
    if (!(target > 0.0)) {
        throw SingularityError("GRP virtual age ran past the support of the ttf distribution");
    }
    double hi = v + std::max(ttf.mean(), 1e-12);
    for (int i = 0; i < 400 && ttf.reliability(hi) >= target; ++i) {
        hi = v + 2.0 * (hi - v);
    }
    const double t = find_root([&](double x) { return ttf.reliability(x) - target; }, v, hi,
                               1e-12, 1e-300);
    return std::max(t - v, 0.0);
}

double draw_repair_duration(const RepairPolicy& policy, RandomStream& rng)
{
    return std::visit(
        [&rng](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Instantaneous>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, FixedRepair>) {
                return p.duration;
            } else {
                return p.duration.sample(rng);
            }
        },
        policy.value());
}

} // namespace

EventHistory simulate_history(const PointProcessModel& model, const RepairPolicy& policy,
                              const SimulationConfig& cfg, std::uint64_t trajectory_index)
{
    validate(cfg);
    model.validate_for_horizon(cfg.horizon);
    if (trajectory_index >= cfg.n_trajectories) {
        throw std::domain_error("trajectory index exceeds configured trajectory count");
    }

    RandomStream rng(cfg.master_seed, trajectory_index);
    std::vector<Event> events;

    double clock = 0.0;          // calendar time of the last repair completion
    double virtual_age = 0.0;    // GRP state
    double intensity_used = 0.0; // NHPP cumulative intensity already consumed

    while (true) {
        double fail = kInf;
        double operating_gap = 0.0;

        std::visit(
            [&](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                const double u = rng.next_uniform();
                if constexpr (std::is_same_v<T, Hpp>) {
                    operating_gap = -std::log(u) / m.rate;
                    fail = clock + operating_gap;
                } else if constexpr (std::is_same_v<T, Rp>) {
                    operating_gap = m.ttf.quantile(u);
                    fail = clock + operating_gap;
                } else if constexpr (std::is_same_v<T, Grp>) {
                    operating_gap = conditional_gap(m.ttf, virtual_age, u);
                    fail = clock + operating_gap;
                } else {
                    const double target = intensity_used - std::log(u);
                    fail = inverse_cumulative_intensity(m.rocof, target);
                }
            },
            model.value());

        if (!(fail <= cfg.horizon)) break;

        const double duration = draw_repair_duration(policy, rng);
        const double repair_complete = std::min(fail + duration, cfg.horizon);
        events.push_back({fail, repair_complete});

        if (const auto* grp = std::get_if<Grp>(&model.value())) {
            virtual_age = kijima_step(virtual_age, operating_gap, grp->q, grp->variant);
        }
        if (const auto* nhpp = std::get_if<Nhpp>(&model.value())) {
            // Minimal repair: the intensity keeps aging on calendar time;
            // the next failure is drawn conditional on survival to the
            // repair completion.
            intensity_used = cumulative_intensity(nhpp->rocof, repair_complete);
        }
        if (repair_complete >= cfg.horizon) break;
        clock = repair_complete;
    }

    return EventHistory(std::move(events), cfg.horizon, SimulatedProvenance{cfg.master_seed});
}

namespace {

constexpr std::size_t kChunkSize = 256;

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs per_trajectory over all indices, accumulating into one Accum per
// fixed-size chunk. Chunk boundaries are independent of the thread count,
// and partials are reduced by the caller in chunk order, so results do not
// depend on scheduling.
template <typename Accum, typename PerTrajectory>
std::vector<Accum> run_chunked(const SimulationConfig& cfg, const Accum& init,
                               PerTrajectory per_trajectory)
{
    const std::size_t n = cfg.n_trajectories;
    const std::size_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<Accum> partials(n_chunks, init);

    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(cfg.threads), n_chunks));
    std::atomic<std::size_t> next_chunk{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            const std::size_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const std::size_t begin = c * kChunkSize;
            const std::size_t end = std::min(n, begin + kChunkSize);
            try {
                for (std::size_t k = begin; k < end; ++k) {
                    per_trajectory(partials[c], k);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                break;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return partials;
}

struct CountAccum {
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
};

Estimate estimate_from_counts(const std::vector<CountAccum>& partials, std::size_t n)
{
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    for (const auto& p : partials) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double dn = static_cast<double>(n);
    const double mean = static_cast<double>(sum) / dn;
    double se = 0.0;
    if (n > 1) {
        const double var =
            (static_cast<double>(sum_sq) - dn * mean * mean) / (dn - 1.0);
        se = std::sqrt(std::max(var, 0.0) / dn);
    }
    return {mean, se, true};
}

void require_in_horizon(double t, double horizon)
{
    if (!(t >= 0.0) || !(t <= horizon)) {
        throw std::domain_error("t outside [0, horizon]");
    }
}

} // namespace

std::optional<double> expected_count_closed_form(const PointProcessModel& model, double t)
{
    if (!(t >= 0.0)) throw std::domain_error("expected_count: t must be >= 0");
    if (const auto* hpp = std::get_if<Hpp>(&model.value())) {
        return hpp->rate * t;
    }
    if (const auto* nhpp = std::get_if<Nhpp>(&model.value())) {
        return cumulative_intensity(nhpp->rocof, t);
    }
    if (const auto* rp = std::get_if<Rp>(&model.value())) {
        // Erlang-2 renewal function, the one closed-form renewal process.
        if (const auto* g = std::get_if<Gamma>(&rp->ttf.family())) {
            if (std::abs(g->shape - 2.0) <= 1e-12) {
                const double mu = g->rate;
                return 0.5 * mu * t - 0.25 + 0.25 * std::exp(-2.0 * mu * t);
            }
        }
    }
    return std::nullopt;
}

Estimate expected_count_mc(const PointProcessModel& model, double t, const SimulationConfig& cfg)
{
    validate(cfg);
    require_in_horizon(t, cfg.horizon);
    const RepairPolicy instantaneous = RepairPolicy::instantaneous();
    auto partials = run_chunked<CountAccum>(cfg, CountAccum{}, [&](CountAccum& acc, std::size_t k) {
        const EventHistory history = simulate_history(model, instantaneous, cfg, k);
        const std::uint64_t c = history.count_failures_through(t);
        acc.sum += c;
        acc.sum_sq += c * c;
    });
    return estimate_from_counts(partials, cfg.n_trajectories);
}

Estimate expected_count(const PointProcessModel& model, double t, const SimulationConfig& cfg)
{
    require_in_horizon(t, cfg.horizon);
    if (auto closed = expected_count_closed_form(model, t)) {
        return {*closed, 0.0, false};
    }
    return expected_count_mc(model, t, cfg);
}

double rocof_analytic(const PointProcessModel& model, double t)
{
    if (!(t >= 0.0)) throw std::domain_error("rocof: t must be >= 0");
    if (const auto* hpp = std::get_if<Hpp>(&model.value())) {
        return hpp->rate;
    }
    if (const auto* nhpp = std::get_if<Nhpp>(&model.value())) {
        return std::visit(
            [t](const auto& l) -> double {
                using L = std::decay_t<decltype(l)>;
                if constexpr (std::is_same_v<L, PowerLawRocof>) {
                    if (t == 0.0) {
                        if (l.beta < 1.0) {
                            throw SingularityError(
                                "power-law ROCOF diverges at t = 0 for beta < 1");
                        }
                        return l.beta == 1.0 ? l.lambda : 0.0;
                    }
                    return l.lambda * l.beta * std::pow(t, l.beta - 1.0);
                } else if constexpr (std::is_same_v<L, LogLinearRocof>) {
                    return std::exp(l.alpha + l.beta * t);
                } else {
                    const double value = l.a + l.b * t;
                    if (value < 0.0) {
                        throw ModelError("linear ROCOF is negative at the queried time");
                    }
                    return value;
                }
            },
            nhpp->rocof);
    }
    throw PreconditionError("analytic ROCOF exists only for HPP and NHPP; use rocof_mc");
}

Estimate rocof_mc(const PointProcessModel& model, double t, double window,
                  const SimulationConfig& cfg)
{
    validate(cfg);
    require_in_horizon(t, cfg.horizon);
    if (!(window > 0.0)) throw std::domain_error("rocof window must be positive");
    const double lo = std::max(0.0, t - 0.5 * window);
    const double hi = std::min(cfg.horizon, t + 0.5 * window);
    const double width = hi - lo;
    if (!(width > 0.0)) throw std::domain_error("rocof window collapsed to zero width");

    const RepairPolicy instantaneous = RepairPolicy::instantaneous();
    auto partials = run_chunked<CountAccum>(cfg, CountAccum{}, [&](CountAccum& acc, std::size_t k) {
        const EventHistory history = simulate_history(model, instantaneous, cfg, k);
        const std::uint64_t c =
            history.count_failures_through(hi) - history.count_failures_through(lo);
        acc.sum += c;
        acc.sum_sq += c * c;
    });
    Estimate counts = estimate_from_counts(partials, cfg.n_trajectories);
    return {counts.value / width, counts.std_error / width, true};
}

Estimate rocof_at(const PointProcessModel& model, double t, double window,
                  const SimulationConfig& cfg)
{
    if (std::holds_alternative<Hpp>(model.value()) ||
        std::holds_alternative<Nhpp>(model.value())) {
        return {rocof_analytic(model, t), 0.0, false};
    }
    return rocof_mc(model, t, window, cfg);
}

Estimate mtbf(const PointProcessModel& model, double t0, double t1, const SimulationConfig& cfg)
{
    if (const auto* hpp = std::get_if<Hpp>(&model.value())) {
        return {1.0 / hpp->rate, 0.0, false};
    }
    validate(cfg);
    if (!(t0 >= 0.0) || !(t0 < t1) || !(t1 <= cfg.horizon)) {
        throw std::domain_error("mtbf window must satisfy 0 <= t0 < t1 <= horizon");
    }

    const RepairPolicy instantaneous = RepairPolicy::instantaneous();
    auto partials = run_chunked<CountAccum>(cfg, CountAccum{}, [&](CountAccum& acc, std::size_t k) {
        const EventHistory history = simulate_history(model, instantaneous, cfg, k);
        const std::uint64_t c =
            history.count_failures_through(t1) - history.count_failures_through(t0);
        acc.sum += c;
        acc.sum_sq += c * c;
    });
    Estimate counts = estimate_from_counts(partials, cfg.n_trajectories);
    if (counts.value == 0.0) {
        throw InsufficientDataError("no failures observed in (" + std::to_string(t0) + ", " +
                                        std::to_string(t1) + "] across " +
                                        std::to_string(cfg.n_trajectories) + " trajectories",
                                    0, 1);
    }
    const double width = t1 - t0;
    const double value = width / counts.value;
    // Delta method through 1/mean.
    const double se = width * counts.std_error / (counts.value * counts.value);
    return {value, se, true};
}

Estimate availability(const PointProcessModel& model, const RepairPolicy& policy, double t,
                      const SimulationConfig& cfg)
{
    validate(cfg);
    require_in_horizon(t, cfg.horizon);
    auto partials = run_chunked<CountAccum>(cfg, CountAccum{}, [&](CountAccum& acc, std::size_t k) {
        const EventHistory history = simulate_history(model, policy, cfg, k);
        acc.sum += history.operating_at(t) ? 1 : 0;
    });
    std::uint64_t up = 0;
    for (const auto& p : partials) up += p.sum;
    const double n = static_cast<double>(cfg.n_trajectories);
    const double value = static_cast<double>(up) / n;
    const double se = std::sqrt(std::max(value * (1.0 - value), 0.0) / n);
    return {value, se, true};
}

std::vector<double> kijima_virtual_ages(const std::vector<double>& operating_durations, double q,
                                        KijimaVariant variant)
{
    std::vector<double> ages;
    ages.reserve(operating_durations.size());
    double age = 0.0;
    for (double x : operating_durations) {
        if (!(x > 0.0)) throw std::domain_error("operating durations must be positive");
        age = kijima_step(age, x, q, variant);
        ages.push_back(age);
    }
    return ages;
}

std::vector<SummaryPoint> simulate_summary(const PointProcessModel& model,
                                           const RepairPolicy& policy,
                                           const SimulationConfig& cfg, std::size_t points,
                                           double window)
{
    validate(cfg);
    model.validate_for_horizon(cfg.horizon);
    if (points < 1) throw std::invalid_argument("summary needs >= 1 grid interval");
    if (!(window > 0.0)) window = cfg.horizon / static_cast<double>(points);

    const std::size_t rows = points + 1;
    std::vector<double> grid(rows);
    for (std::size_t j = 0; j < rows; ++j) {
        grid[j] = cfg.horizon * static_cast<double>(j) / static_cast<double>(points);
    }

    struct Accum {
        std::vector<std::uint64_t> count;
        std::vector<std::uint64_t> count_sq;
        std::vector<std::uint64_t> up;
        std::vector<std::uint64_t> win;
        std::vector<std::uint64_t> win_sq;
    };
    Accum init;
    init.count.assign(rows, 0);
    init.count_sq.assign(rows, 0);
    init.up.assign(rows, 0);
    init.win.assign(rows, 0);
    init.win_sq.assign(rows, 0);

    auto partials = run_chunked<Accum>(cfg, init, [&](Accum& acc, std::size_t k) {
        const EventHistory history = simulate_history(model, policy, cfg, k);
        for (std::size_t j = 0; j < rows; ++j) {
            const std::uint64_t c = history.count_failures_through(grid[j]);
            acc.count[j] += c;
            acc.count_sq[j] += c * c;
            acc.up[j] += history.operating_at(grid[j]) ? 1 : 0;
            const double lo = std::max(0.0, grid[j] - 0.5 * window);
            const double hi = std::min(cfg.horizon, grid[j] + 0.5 * window);
            const std::uint64_t w =
                history.count_failures_through(hi) - history.count_failures_through(lo);
            acc.win[j] += w;
            acc.win_sq[j] += w * w;
        }
    });

    Accum total = init;
    for (const auto& p : partials) {
        for (std::size_t j = 0; j < rows; ++j) {
            total.count[j] += p.count[j];
            total.count_sq[j] += p.count_sq[j];
            total.up[j] += p.up[j];
            total.win[j] += p.win[j];
            total.win_sq[j] += p.win_sq[j];
        }
    }

    const double n = static_cast<double>(cfg.n_trajectories);
    std::vector<SummaryPoint> summary(rows);
    for (std::size_t j = 0; j < rows; ++j) {
        SummaryPoint& pt = summary[j];
        pt.t = grid[j];
        pt.mean_count = static_cast<double>(total.count[j]) / n;
        pt.availability = static_cast<double>(total.up[j]) / n;
        pt.availability_se =
            std::sqrt(std::max(pt.availability * (1.0 - pt.availability), 0.0) / n);
        const double lo = std::max(0.0, grid[j] - 0.5 * window);
        const double hi = std::min(cfg.horizon, grid[j] + 0.5 * window);
        const double width = hi - lo;
        const double win_mean = static_cast<double>(total.win[j]) / n;
        pt.rocof = win_mean / width;
        if (cfg.n_trajectories > 1) {
            const double count_var =
                (static_cast<double>(total.count_sq[j]) - n * pt.mean_count * pt.mean_count) /
                (n - 1.0);
            pt.count_se = std::sqrt(std::max(count_var, 0.0) / n);
            const double win_var =
                (static_cast<double>(total.win_sq[j]) - n * win_mean * win_mean) / (n - 1.0);
            pt.rocof_se = std::sqrt(std::max(win_var, 0.0) / n) / width;
        }
    }
    return summary;
}

} // namespace resiq
