"""Smoke tests for the resiq extension module."""

import math

import resiq


def approx(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_lifetime():
    exp = resiq.LifetimeDistribution.exponential(0.1)
    assert approx(exp.reliability(10.0), math.exp(-1.0))
    assert exp.cdf(0.0) == 0.0
    assert approx(exp.quantile(0.5), math.log(2.0) / 0.1)
    assert approx(exp.mean(), 10.0)

    weib = resiq.LifetimeDistribution.weibull(2.0, 1.0)
    assert approx(weib.mean(), math.gamma(1.5))
    rng = resiq.RandomStream(42)
    draws = [weib.sample(rng) for _ in range(2000)]
    assert abs(sum(draws) / len(draws) - weib.mean()) < 0.05

    tub = resiq.BathtubProfile([(0.0, "constant", 0.3, 0.0)])
    assert approx(tub.reliability(2.0), math.exp(-0.6))


def test_risk():
    s1 = resiq.Scenario("s1", "pump", 1.0, 0.05)
    s2 = resiq.Scenario("s2", "flood", 0.5, 0.1)
    assert approx(resiq.scenario_risk(s1), 0.05)
    portfolio = resiq.RiskPortfolio([s1, s2], normalized=True)
    assert approx(resiq.system_risk(portfolio), 0.1)
    proxy = resiq.reliability_proxy(portfolio)
    assert approx(proxy["value"], 0.9)
    assert not proxy["saturated"]


def test_pointproc():
    model = resiq.PointProcessModel.hpp(0.5)
    cfg = resiq.SimulationConfig(horizon=10.0, trajectories=4000, seed=42)
    history = resiq.simulate_history(model, resiq.RepairPolicy.instantaneous(), cfg, 0)
    assert history.horizon == 10.0
    assert all(f <= r for f, r in history.events)

    # Identical seed, identical trajectory.
    again = resiq.simulate_history(model, resiq.RepairPolicy.instantaneous(), cfg, 0)
    assert history.events == again.events

    count = resiq.expected_count(model, 10.0, cfg)
    assert not count["monte_carlo"]
    assert approx(count["value"], 5.0)

    mc = resiq.expected_count(
        resiq.PointProcessModel.renewal(resiq.LifetimeDistribution.weibull(2.0, 1.0)),
        5.0,
        cfg,
    )
    assert mc["monte_carlo"]
    assert mc["std_error"] > 0.0

    ages = resiq.kijima_virtual_ages([2.0, 3.0], 0.5, resiq.KijimaVariant.TYPE_I)
    assert ages == [1.0, 2.5]

    avail = resiq.availability(model, resiq.RepairPolicy.fixed(0.5), 5.0, cfg)
    assert 0.0 < avail["value"] < 1.0


def test_resiliency():
    ctx = resiq.MissionContext(100.0, resiq.LifetimeDistribution.weibull(1.5, 50.0))
    event = resiq.ResiliencyEvent(t_fail=40.0, t_res=15.0, q_res=0.2)
    assert approx(resiq.reactive_resiliency(event, ctx), 0.6)
    assert resiq.recovered_reliability(0.2) == 0.8
    assert resiq.classify_degree(0.0, ctx, 40.0) == resiq.ResiliencyDegree.GOOD_AS_NEW
    assert (
        resiq.classify_degree(-0.1, ctx, 40.0) == resiq.ResiliencyDegree.BETTER_THAN_NEW
    )

    assessment = resiq.mission_resiliency([event], ctx)
    assert approx(assessment["mission_rho"], 0.6)
    assert assessment["per_event"][0]["degree"] in (
        "partial_recovery",
        "same_as_old",
        "worse_than_old",
    )

    samples = resiq.performance_trajectory(ctx, event, resolution=101)
    assert samples[0] == (0.0, 1.0, "nominal")
    onset = [s for s in samples if s[0] == 55.0]
    assert len(onset) == 1 and abs(onset[0][1] - 0.8) < 1e-12

    try:
        resiq.mission_resiliency(
            [resiq.ResiliencyEvent(10.0, 50.0, 0.1), resiq.ResiliencyEvent(30.0, 1.0, 0.1)],
            ctx,
        )
    except resiq.EventError:
        pass
    else:
        raise AssertionError("overlapping outages must raise EventError")


def test_estimation():
    obs = resiq.ObservedEvents(
        [5.0, 12.0, 23.0, 31.0, 44.0, 56.0, 61.0, 73.0, 85.0, 97.0],
        100.0,
        resiq.Truncation.TIME,
    )
    fit = resiq.fit_hpp(obs)
    assert approx(fit["parameters"]["rate"], 0.1)
    assert approx(fit["aic"], 2.0 - 2.0 * fit["log_likelihood"])

    crow = resiq.fit_crow_amsaa(
        resiq.ObservedEvents([1.0, 4.0, 9.0], 10.0, resiq.Truncation.TIME)
    )
    assert abs(crow["parameters"]["beta"] - 0.90246) < 1e-4

    ranked = resiq.model_select(obs, ["hpp", "crow_amsaa"])
    assert len(ranked) == 2
    assert all(row["ok"] for row in ranked)
    assert ranked[0]["aic"] <= ranked[1]["aic"]


def main():
    tests = [
        test_lifetime,
        test_risk,
        test_pointproc,
        test_resiliency,
        test_estimation,
    ]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print("python smoke tests passed")


if __name__ == "__main__":
    main()
