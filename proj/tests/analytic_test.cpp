#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "netefficacy/analytic.hpp"
#include "oracles.hpp"

using namespace netefficacy;
using namespace netefficacy::analytic;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_SUITE("analytic") {
    TEST_CASE("expected_utility") {
        EventDistribution two{{{"e1", 0.5, 1.0}, {"e2", 0.5, 3.0}}};
        // 2 * (0.5*1 + 0.5*3)
        CHECK(expected_utility(2.0, two) == 4.0);
        CHECK(expected_utility(0.0, two) == 0.0);
        EventDistribution single{{{"only", 1.0, 7.0}}};
        CHECK(expected_utility(1.0, single) == 7.0);
        EventDistribution bad{{{"e1", 0.9, 1.0}}};
        CHECK_THROWS_AS(expected_utility(1.0, bad), ValidationError);
    }

    TEST_CASE("utility ratios follow psi ratios for any distribution") {
        std::mt19937_64 gen(20261016);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int round = 0; round < 200; ++round) {
            EventDistribution d;
            const int k = 1 + static_cast<int>(gen() % 8);
            double sum = 0.0;
            for (int i = 0; i < k; ++i) {
                d.events.push_back({"e" + std::to_string(i), unit(gen), 0.1 + 10.0 * unit(gen)});
                sum += d.events.back().probability;
            }
            for (auto& e : d.events) e.probability /= sum;
            const double a = 0.01 + 100.0 * unit(gen);
            const double b = 0.01 + 100.0 * unit(gen);
            const double ratio = expected_utility(a, d) / expected_utility(b, d);
            CHECK(near(ratio, a / b, 1e-9 * (a / b)));
        }
    }

    TEST_CASE("efficacy matches pair enumeration") {
        // 50 networked callers each reach 50 of 100 targets: 50*50/100.
        CHECK(oracle::enumerate_efficacy(1.0, 50, 100) == 25.0);
        CHECK(efficacy(1.0, 50, 100).analytic == 25.0);
        CHECK(*efficacy(1.0, 50, 100).per_node() == 0.5);
        CHECK(efficacy(1.0, 100, 100).analytic == 100.0);
        CHECK(efficacy(1.0, 0, 100).analytic == 0.0);
        CHECK_FALSE(efficacy(1.0, 0, 100).per_node().has_value());
        CHECK(efficacy(1.0, 300, 1000).analytic == doctest::Approx(90.0).epsilon(1e-15));
    }

    TEST_CASE("efficacy preconditions") {
        CHECK_THROWS_AS(efficacy(1.0, 101, 100), PreconditionError);
        CHECK_THROWS_AS(efficacy(1.0, 0, 0), PreconditionError);
        CHECK_THROWS_AS(efficacy(0.0, 1, 2), PreconditionError);
        CHECK_THROWS_AS(efficacy(-1.0, 1, 2), PreconditionError);
    }

    TEST_CASE("efficacy monotonicity") {
        for (std::size_t nomega = 1; nomega <= 60; ++nomega) {
            for (std::size_t ne = 1; ne <= nomega; ++ne) {
                CHECK(efficacy(1.3, ne, nomega).analytic > efficacy(1.3, ne - 1, nomega).analytic);
                if (ne <= nomega - 1)
                    CHECK(efficacy(1.3, ne, nomega).analytic <= efficacy(1.3, ne, nomega - 1).analytic);
            }
        }
    }

    TEST_CASE("disconnect experiment") {
        const auto half = disconnect_experiment(1.0, 100, 2.0);
        CHECK(half.n_effective == 50);
        CHECK(half.report.analytic == 25.0);
        CHECK(half.shrink_form == 25.0);

        const auto none = disconnect_experiment(1.7, 40, 1.0);
        CHECK(none.n_effective == 40);
        CHECK(near(none.report.analytic, 1.7 * 40, 1e-12));

        const auto third = disconnect_experiment(2.0, 90, 3.0);
        CHECK(third.n_effective == 30);
        CHECK(oracle::enumerate_efficacy(2.0, 30, 90) == 20.0);
        CHECK(near(third.report.analytic, 20.0, 1e-12));
        CHECK(near(third.shrink_form, 20.0, 1e-12));

        // 100 / 3 rounds down to 33 effective nodes.
        CHECK(disconnect_experiment(1.0, 100, 3.0).n_effective == 33);
        CHECK_THROWS_AS(disconnect_experiment(1.0, 100, 0.5), PreconditionError);
    }

    TEST_CASE("hetnet capacity: cluster example") {
        const auto r = hetnet_capacity({1.0, 2.0, 2.0 / 3.0});
        CHECK(near(r.total, 1.8, 1e-12));
        CHECK(r.binding == Binding::Default);
        CHECK(near(r.preferred_load / r.total, 4.0 / 9.0, 1e-12));
        CHECK(near(r.preferred_load + r.default_load, r.total, 1e-12));
        CHECK(r.default_load <= 1.0 + 1e-12);
        CHECK(r.preferred_load <= 2.0 + 1e-12);
    }

    TEST_CASE("hetnet capacity: no preferred network") {
        const auto r = hetnet_capacity({1.0, 2.0, 0.0});
        CHECK(r.total == 1.0);
        CHECK(r.preferred_load == 0.0);
        CHECK(r.binding == Binding::Default);
        CHECK(hetnet_capacity({3.5, 0.0, 0.0}).total == 3.5);
    }

    TEST_CASE("hetnet capacity: preferred network binds") {
        CHECK(near(oracle::flow_balance_total(1.0, 0.1, 2.0 / 3.0), 0.225, 1e-12));
        const auto r = hetnet_capacity({1.0, 0.1, 2.0 / 3.0});
        CHECK(near(r.total, 0.225, 1e-12));
        CHECK(r.binding == Binding::Preferred);
        CHECK(near(r.default_load, 0.125, 1e-12));
        CHECK(near(r.preferred_load, 0.1, 1e-12));
    }

    TEST_CASE("hetnet capacity agrees with the flow-balance oracle") {
        std::mt19937_64 gen(99);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            const HetNetConfig c{0.1 + 5 * unit(gen), 5 * unit(gen), 0.999 * unit(gen)};
            const auto r = hetnet_capacity(c);
            const double expected = oracle::flow_balance_total(c.default_capacity, c.preferred_capacity, c.coverage);
            CHECK(near(r.total, expected, 1e-9 * std::max(1.0, expected)));
            CHECK(r.preferred_load <= c.preferred_capacity * (1 + 1e-12) + 1e-12);
            CHECK(r.default_load <= c.default_capacity * (1 + 1e-12) + 1e-12);
            CHECK(near(r.preferred_load + r.default_load, r.total, 1e-12 * std::max(1.0, r.total)));
        }
    }

    TEST_CASE("hetnet capacity limits") {
        // Unlimited preferred capacity gives the unit-normalized formula.
        for (double n : {0.1, 0.5, 0.9, 0.99}) {
            const auto r = hetnet_capacity({2.0, kInf, n});
            CHECK(near(r.total, 2.0 / (1 - n * n), 1e-12 * r.total));
            CHECK(r.binding == Binding::Default);
            CHECK(r.preferred_load / r.total == doctest::Approx(n * n).epsilon(1e-14));
        }
        // Large C_K approaches the same limit; tiny n approaches C_D.
        CHECK(near(hetnet_capacity({1.0, 1e12, 0.5}).total, 1.0 / 0.75, 1e-12));
        CHECK(near(hetnet_capacity({1.0, 2.0, 1e-9}).total, 1.0, 1e-12));
        CHECK_THROWS_AS(hetnet_capacity({1.0, 2.0, 1.0}), ValidationError);
    }

    TEST_CASE("dependent capacity") {
        CHECK(near(dependent_capacity(1.0, 2.0 / 3.0), 3.0, 1e-12));
        CHECK(dependent_capacity(1.5, 0.0) == 1.5);
        CHECK(dependent_capacity(1.0, 0.5) == 2.0);
        CHECK_THROWS_AS(dependent_capacity(1.0, 1.0), PreconditionError);
        CHECK_THROWS_AS(dependent_capacity(1.0, -0.1), PreconditionError);
    }

    TEST_CASE("plan coverage") {
        CHECK(near(plan_coverage(1.0, 3.0), 0.816497, 5e-7));
        CHECK(plan_coverage(1.0, 1.0) == 0.0);
        CHECK(plan_coverage(4.0, 4.0) == 0.0);
        CHECK(near(plan_coverage(1.0, 2.0), std::sqrt(0.5), 1e-15));
        CHECK_THROWS_AS(plan_coverage(1.0, 0.5), PreconditionError);
        CHECK_THROWS_AS(plan_coverage(0.0, 1.0), PreconditionError);
    }

    TEST_CASE("plan coverage round-trips through hetnet capacity") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const double cd = 0.01 + 10 * unit(gen);
            const double target = cd * (1.0 + 999.0 * unit(gen));
            const double n = plan_coverage(cd, target);
            CHECK(std::abs(hetnet_capacity({cd, kInf, n}).total - target) <= 1e-9 * target);
        }
    }

    TEST_CASE("growth trajectory: quadratic then linear") {
        std::vector<SizePair> schedule;
        for (std::size_t ne = 10; ne <= 100; ne += 10) schedule.push_back({ne, 100});
        schedule.push_back({110, 110});
        schedule.push_back({120, 120});
        const auto points = growth_trajectory(1.0, schedule);
        REQUIRE(points.size() == 12);
        for (std::size_t i = 0; i < 10; ++i) {
            const double k = static_cast<double>(i + 1);
            CHECK(points[i].efficacy == k * k);  // 1, 4, 9, ..., 100
        }
        CHECK(points[10].efficacy == 110.0);
        CHECK(points[11].efficacy == 120.0);
        CHECK(points[11].efficacy - points[10].efficacy == 10.0);
        CHECK(points[10].efficacy - points[9].efficacy == 10.0);  // no jump at saturation

        const SizePair one[] = {{1, 1}};
        CHECK(growth_trajectory(2.5, one).front().efficacy == 2.5);
    }

    TEST_CASE("growth trajectory errors name the step") {
        const SizePair bad[] = {{1, 10}, {11, 10}};
        try {
            growth_trajectory(1.0, bad);
            FAIL("expected a precondition error");
        } catch (const PreconditionError& e) {
            CHECK(std::string(e.what()).find("step 1") != std::string::npos);
        }
        CHECK_THROWS_AS(growth_trajectory(1.0, std::span<const SizePair>{}), PreconditionError);
    }

    TEST_CASE("trajectory points obey the efficacy formula") {
        std::mt19937_64 gen(11);
        std::vector<SizePair> schedule;
        for (int i = 0; i < 300; ++i) {
            const std::size_t nomega = 1 + gen() % 5000;
            schedule.push_back({gen() % (nomega + 1), nomega});
        }
        for (const auto& p : growth_trajectory(0.75, schedule)) {
            CHECK(p.n_effective <= p.n_system);
            const double ne = static_cast<double>(p.n_effective);
            CHECK(near(p.efficacy, 0.75 * ne * ne / static_cast<double>(p.n_system), 1e-12 * std::max(1.0, p.efficacy)));
        }
    }

    TEST_CASE("saturating schedule") {
        const auto s = saturating_schedule(100, 10, 150, 10);
        REQUIRE(s.size() == 15);
        CHECK(s.front().n_effective == 10);
        CHECK(s.front().n_system == 100);
        CHECK(s[9].n_effective == 100);
        CHECK(s[9].n_system == 100);
        CHECK(s.back().n_effective == 150);
        CHECK(s.back().n_system == 150);
        const auto points = growth_trajectory(1.0, s);
        for (std::size_t i = 10; i < points.size(); ++i)
            CHECK(points[i].efficacy - points[i - 1].efficacy == 10.0);
        CHECK_THROWS_AS(saturating_schedule(100, 10, 5, 1), PreconditionError);
        CHECK_THROWS_AS(saturating_schedule(100, 1, 5, 0), PreconditionError);
    }

    TEST_CASE("multipurpose total") {
        const SystemLoad saturated[] = {{1.0, 10, 10}, {1.0, 10, 10}};
        CHECK(multipurpose_total(saturated) == 20.0);
        const SystemLoad mixed[] = {{1.0, 50, 100}, {1.0, 30, 30}};
        CHECK(multipurpose_total(mixed) == 55.0);
        CHECK(multipurpose_total(std::span<const SystemLoad>{}) == 0.0);
        const SystemLoad bad[] = {{1.0, 5, 10}, {1.0, 11, 10}};
        try {
            multipurpose_total(bad);
            FAIL("expected a precondition error");
        } catch (const PreconditionError& e) {
            CHECK(std::string(e.what()).find("system 1") != std::string::npos);
        }
    }
}
