#include <doctest.h>

#include <random>

#include "resiq/error.hpp"
#include "resiq/risk.hpp"

using resiq::ReliabilityProxy;
using resiq::RiskPortfolio;
using resiq::Scenario;

TEST_CASE("scenario risk is the consequence-probability product")
{
    CHECK(resiq::scenario_risk(Scenario("a", "", 100.0, 0.01)) == doctest::Approx(1.0));
    CHECK(resiq::scenario_risk(Scenario("b", "", 7.5, 0.0)) == 0.0);
    CHECK(resiq::scenario_risk(Scenario("c", "", 1.0, 1.0)) == 1.0);
}

TEST_CASE("scenario validation")
{
    CHECK_THROWS_AS(Scenario("", "", 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Scenario("x", "", -1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Scenario("x", "", 1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(Scenario("x", "", 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("system risk sums scenarios")
{
    CHECK(resiq::system_risk(RiskPortfolio({}, false)) == 0.0);

    RiskPortfolio two({Scenario("a", "", 100.0, 0.01), Scenario("b", "", 5.0, 0.1)}, false);
    CHECK(resiq::system_risk(two) == doctest::Approx(1.5).epsilon(1e-15));

    RiskPortfolio one({Scenario("a", "", 3.0, 0.2)}, false);
    CHECK(resiq::system_risk(one) ==
          doctest::Approx(resiq::scenario_risk(one.scenarios()[0])).epsilon(1e-15));

    CHECK_THROWS_AS(RiskPortfolio({Scenario("a", "", 1.0, 0.1), Scenario("a", "", 2.0, 0.1)},
                                  false),
                    std::invalid_argument);
}

TEST_CASE("scenario risk is bilinear and portfolio risk is additive")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double c = 10.0 * unit(gen);
        const double p = unit(gen);
        const double k = 0.5 * unit(gen);
        CHECK(resiq::scenario_risk(Scenario("s", "", k * c, p)) ==
              doctest::Approx(k * resiq::scenario_risk(Scenario("s", "", c, p))).epsilon(1e-12));
        CHECK(resiq::scenario_risk(Scenario("s", "", c, k * p)) ==
              doctest::Approx(k * resiq::scenario_risk(Scenario("s", "", c, p))).epsilon(1e-12));
    }

    // Concatenation additivity within 1e-12.
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Scenario> left, right, both;
        for (int i = 0; i < 40; ++i) {
            Scenario s("l" + std::to_string(i), "", 100.0 * unit(gen), unit(gen));
            left.push_back(s);
            both.push_back(s);
        }
        for (int i = 0; i < 40; ++i) {
            Scenario s("r" + std::to_string(i), "", 100.0 * unit(gen), unit(gen));
            right.push_back(s);
            both.push_back(s);
        }
        const double sum = resiq::system_risk(RiskPortfolio(left, false)) +
                           resiq::system_risk(RiskPortfolio(right, false));
        const double joint = resiq::system_risk(RiskPortfolio(both, false));
        CHECK(joint == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("reliability proxy")
{
    CHECK(resiq::reliability_proxy(RiskPortfolio({}, true)).value == 1.0);

    RiskPortfolio simple({Scenario("a", "", 1.0, 0.1)}, true);
    const ReliabilityProxy proxy = resiq::reliability_proxy(simple);
    CHECK(proxy.value == doctest::Approx(0.9).epsilon(1e-15));
    CHECK_FALSE(proxy.saturated);

    // Saturation: risk above 1 clamps to 0 with the flag set.
    RiskPortfolio heavy({Scenario("a", "", 1.0, 0.7), Scenario("b", "", 1.0, 0.6)}, true);
    const ReliabilityProxy clamped = resiq::reliability_proxy(heavy);
    CHECK(clamped.value == 0.0);
    CHECK(clamped.saturated);

    // Unnormalized portfolio: the proxy is undefined.
    RiskPortfolio raw({Scenario("a", "", 100.0, 0.01)}, false);
    CHECK_THROWS_AS((void)resiq::reliability_proxy(raw), resiq::PreconditionError);

    // Normalized portfolios reject consequences above 1.
    CHECK_THROWS_AS(RiskPortfolio({Scenario("a", "", 1.5, 0.1)}, true), std::invalid_argument);
}

TEST_CASE("proxy bounds and monotonicity in scenario probability")
{
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Scenario> scenarios;
        for (int i = 0; i < 10; ++i) {
            scenarios.emplace_back("s" + std::to_string(i), "", unit(gen), unit(gen));
        }
        const double p0 = scenarios[3].probability();
        RiskPortfolio before(scenarios, true);
        const double v0 = resiq::reliability_proxy(before).value;
        CHECK(v0 >= 0.0);
        CHECK(v0 <= 1.0);

        scenarios[3] = Scenario("s3", "", scenarios[3].consequence(),
                                p0 + (1.0 - p0) * unit(gen));
        RiskPortfolio after(scenarios, true);
        CHECK(resiq::reliability_proxy(after).value <= v0 + 1e-12);
    }
}
