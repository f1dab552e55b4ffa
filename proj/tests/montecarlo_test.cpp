#include "doctest.h"

#include <cmath>

#include "netefficacy/montecarlo.hpp"
#include "oracles.hpp"

using namespace netefficacy;
using namespace netefficacy::montecarlo;

namespace {

SimConfig config(std::uint64_t seed, std::uint64_t attempts, std::uint64_t trials, unsigned workers = 0) {
    SimConfig c;
    c.seed = seed;
    c.attempts = attempts;
    c.trials = trials;
    c.workers = workers;
    return c;
}

struct Sized {
    InformationSystem system;
    NetworkOverlay overlay;
};

Sized sized(std::size_t n_system, std::size_t n_effective) {
    auto system = InformationSystem::of_size("mc", n_system);
    auto overlay = bind_overlay(system, n_effective ? NodeSet::range(1, n_effective) : NodeSet{});
    return {std::move(system), std::move(overlay)};
}

}  // namespace

TEST_SUITE("montecarlo") {
    TEST_CASE("saturated network succeeds on every attempt") {
        const auto s = sized(100, 100);
        const auto r = simulate_contacts(s.system, s.overlay, DemandModel{}, config(1, 1000, 4));
        CHECK(r.success_rate == 1.0);
        CHECK(r.throughput_hat == 100.0);
        CHECK(r.standard_error == 0.0);
        CHECK(r.satisfied_demand == 1.0);
    }

    TEST_CASE("empty network never succeeds") {
        const auto s = sized(50, 0);
        const auto r = simulate_contacts(s.system, s.overlay, DemandModel{}, config(1, 1000, 3));
        CHECK(r.success_rate == 0.0);
        CHECK(r.throughput_hat == 0.0);
    }

    TEST_CASE("partial network converges to the pair count") {
        const auto s = sized(1000, 300);
        const auto r = simulate_contacts(s.system, s.overlay, DemandModel{}, config(42, 200'000, 20));
        const double expected = oracle::enumerate_efficacy(1.0, 300, 1000);
        CHECK(expected == doctest::Approx(90.0).epsilon(1e-15));
        CHECK(r.standard_error > 0.0);
        CHECK(std::abs(r.throughput_hat - expected) <= 3.0 * r.standard_error);
        CHECK(r.satisfied_demand == doctest::Approx(r.throughput_hat / 1000.0));
    }

    TEST_CASE("excluding self lowers the expectation") {
        const auto s = sized(20, 10);
        DemandModel demand;
        demand.target_rule = TargetRule::UniformOverSystemExcludingSelf;
        const double expected = oracle::enumerate_efficacy_excluding_self(1.0, 10, 20);
        CHECK(exact_expectation(s.system, s.overlay, demand) == doctest::Approx(expected).epsilon(1e-14));
        const auto r = simulate_contacts(s.system, s.overlay, demand, config(5, 100'000, 20));
        CHECK(std::abs(r.throughput_hat - expected) <= 3.0 * r.standard_error);
        CHECK_THROWS_AS(simulate_contacts(InformationSystem::of_size("one", 1),
                                          bind_overlay(InformationSystem::of_size("one", 1), NodeSet{1}),
                                          demand, config(1, 10, 1)),
                        PreconditionError);
    }

    TEST_CASE("exact expectation matches the enumeration oracle") {
        for (std::size_t nomega = 1; nomega <= 40; ++nomega)
            for (std::size_t ne = 0; ne <= nomega; ++ne) {
                const auto s = sized(nomega, ne);
                CHECK(exact_expectation(s.system, s.overlay, DemandModel{}) ==
                      doctest::Approx(oracle::enumerate_efficacy(1.0, ne, nomega)).epsilon(1e-14));
            }
    }

    TEST_CASE("disconnect experiment by simulation") {
        const auto s = sized(100, 100);
        const auto half = simulate_disconnect(s.system, s.overlay, DemandModel{}, 2.0, config(9, 100'000, 20));
        CHECK(half.n_effective == 50);
        CHECK(std::abs(half.throughput_hat - 25.0) <= 3.0 * half.standard_error);

        const auto big = sized(90, 90);
        DemandModel demand;
        demand.rate = 2.0;
        const auto third = simulate_disconnect(big.system, big.overlay, demand, 3.0, config(9, 100'000, 20));
        CHECK(third.n_effective == 30);
        CHECK(std::abs(third.throughput_hat - 20.0) <= 3.0 * third.standard_error);
    }

    TEST_CASE("shrink of one changes nothing") {
        const auto s = sized(200, 120);
        const auto cfg = config(77, 5000, 4);
        CHECK(disconnected_overlay(s.system, s.overlay, 1.0, 77) == s.overlay);
        CHECK(simulate_disconnect(s.system, s.overlay, DemandModel{}, 1.0, cfg) ==
              simulate_contacts(s.system, s.overlay, DemandModel{}, cfg));
    }

    TEST_CASE("disconnected overlay keeps a subset") {
        const auto s = sized(200, 120);
        const auto kept = disconnected_overlay(s.system, s.overlay, 2.5, 3);
        CHECK(kept.effective_size() == 48);
        CHECK(kept.effective().is_subset_of(s.overlay.effective()));
        CHECK(disconnected_overlay(s.system, s.overlay, 2.5, 3) == kept);
    }

    TEST_CASE("topology does not change the result") {
        const auto s = sized(100, 50);
        const auto star = s.overlay.with_topology(StarTopology{25});
        std::vector<std::pair<NodeId, NodeId>> chain;
        for (NodeId i = 1; i < 50; ++i) chain.emplace_back(i, i + 1);
        const auto line = s.overlay.with_topology(EdgeListTopology{chain});
        for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
            const auto a = compare_topologies(s.system, s.overlay, star, DemandModel{}, config(seed, 20'000, 5));
            CHECK(a.bit_identical);
            CHECK(a.max_gap == 0.0);
            CHECK(std::abs(a.first.throughput_hat - 25.0) <= 3.0 * a.first.standard_error + 1e-12);
            CHECK(compare_topologies(s.system, s.overlay, line, DemandModel{}, config(seed, 20'000, 5)).bit_identical);
        }
    }

    TEST_CASE("a split edge list behaves like separate networks") {
        const auto s = sized(100, 50);
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (NodeId i = 1; i < 25; ++i) edges.emplace_back(i, i + 1);
        for (NodeId i = 26; i < 50; ++i) edges.emplace_back(i, i + 1);
        const auto islands = s.overlay.with_topology(EdgeListTopology{edges});
        // Two islands of 25: 2 * 25 * 25 / 100.
        CHECK(exact_expectation(s.system, islands, DemandModel{}) == doctest::Approx(12.5).epsilon(1e-14));
        const auto r = simulate_contacts(s.system, islands, DemandModel{}, config(8, 100'000, 10));
        CHECK(std::abs(r.throughput_hat - 12.5) <= 3.0 * r.standard_error);
        CHECK_FALSE(compare_topologies(s.system, s.overlay, islands, DemandModel{}, config(8, 1000, 2)).bit_identical);
    }

    TEST_CASE("results do not depend on the worker count") {
        const auto s = sized(500, 200);
        const auto one = simulate_contacts(s.system, s.overlay, DemandModel{}, config(31, 10'000, 13, 1));
        for (unsigned w : {2u, 3u, 8u, 0u})
            CHECK(simulate_contacts(s.system, s.overlay, DemandModel{}, config(31, 10'000, 13, w)) == one);
    }

    TEST_CASE("different seeds give different draws") {
        const auto s = sized(500, 200);
        CHECK_FALSE(simulate_contacts(s.system, s.overlay, DemandModel{}, config(1, 10'000, 2)) ==
                    simulate_contacts(s.system, s.overlay, DemandModel{}, config(2, 10'000, 2)));
    }

    TEST_CASE("runs over adjacent trial ranges merge into one run") {
        const auto s = sized(300, 100);
        auto first = config(4, 5000, 6);
        auto second = config(4, 5000, 4);
        second.first_trial = 6;
        const auto whole = simulate_contacts(s.system, s.overlay, DemandModel{}, config(4, 5000, 10));
        const auto merged = merge(simulate_contacts(s.system, s.overlay, DemandModel{}, first),
                                  simulate_contacts(s.system, s.overlay, DemandModel{}, second));
        CHECK(merged.per_trial == whole.per_trial);
        CHECK(merged.success_rate == doctest::Approx(whole.success_rate).epsilon(1e-14));
        CHECK(merged.standard_error == doctest::Approx(whole.standard_error).epsilon(1e-12));

        auto gap = config(4, 5000, 4);
        gap.first_trial = 7;
        CHECK_THROWS_AS(merge(simulate_contacts(s.system, s.overlay, DemandModel{}, first),
                              simulate_contacts(s.system, s.overlay, DemandModel{}, gap)),
                        PreconditionError);
    }

    TEST_CASE("throughput is quadratic in the effective size") {
        std::vector<double> x, y;
        for (std::size_t ne = 100; ne <= 900; ne += 100) {
            const auto s = sized(1000, ne);
            const auto r = simulate_contacts(s.system, s.overlay, DemandModel{}, config(ne, 50'000, 4));
            x.push_back(std::log(static_cast<double>(ne)));
            y.push_back(std::log(r.throughput_hat));
        }
        CHECK(std::abs(oracle::ols_slope(x, y) - 2.0) <= 0.05);
    }

    TEST_CASE("contact lists restrict the targets") {
        const auto system = InformationSystem::of_size("c", 6);
        const auto overlay = bind_overlay(system, NodeSet{1, 2, 3});
        DemandModel demand;
        // Caller 1 only calls networked nodes, caller 2 only outsiders.
        demand.contact_sets = std::map<NodeId, NodeSet>{{1, NodeSet{2, 3}}, {2, NodeSet{5, 6}}};
        // Caller 3 has no list: 3 of 6 targets succeed. Per caller: 1, 0, 1/2.
        CHECK(exact_expectation(system, overlay, demand) == doctest::Approx(1.5).epsilon(1e-14));
        const auto r = simulate_contacts(system, overlay, demand, config(3, 60'000, 10));
        CHECK(std::abs(r.throughput_hat - 1.5) <= 3.0 * r.standard_error);
    }

    TEST_CASE("sampled contact lists") {
        const auto system = InformationSystem::of_size("c", 40);
        const auto lists = sample_contact_sets(system, 7, 11);
        CHECK(lists.size() == 40);
        for (const auto& [node, list] : lists) {
            CHECK(list.size() == 7);
            CHECK(list.is_subset_of(system.nodes()));
        }
        CHECK(sample_contact_sets(system, 7, 11) == lists);
        CHECK_FALSE(sample_contact_sets(system, 7, 12) == lists);
        CHECK_THROWS_AS(sample_contact_sets(system, 41, 1), PreconditionError);
    }

    TEST_CASE("hetnet load split: cluster example") {
        const auto s = sized(900, 600);
        const HetNetConfig caps{1.0, 2.0, 2.0 / 3.0};
        const auto est = simulate_hetnet(s.system, s.overlay, DemandModel{}, caps, config(17, 200'000, 20));
        CHECK(std::abs(est.capacity.total - 1.8) <= 0.018);
        CHECK(std::abs(est.preferred_share - 4.0 / 9.0) <= 3.0 * est.share_standard_error);
        CHECK(est.preferred_share + est.default_share == doctest::Approx(1.0));
    }

    TEST_CASE("hetnet with no preferred coverage reduces to the default capacity") {
        const auto s = sized(50, 0);
        const auto est = simulate_hetnet(s.system, s.overlay, DemandModel{}, {1.0, 2.0, 0.0}, config(1, 1000, 3));
        CHECK(est.capacity.total == 1.0);
        CHECK(est.preferred_share == 0.0);
    }

    TEST_CASE("hetnet coverage must match the overlay") {
        const auto s = sized(900, 600);
        CHECK_THROWS_AS(simulate_hetnet(s.system, s.overlay, DemandModel{}, {1.0, 2.0, 0.5}, config(1, 10, 1)),
                        PreconditionError);
    }

    TEST_CASE("config validation") {
        CHECK(validate(config(0, 1, 1)).empty());
        CHECK_FALSE(validate(config(0, 0, 1)).empty());
        CHECK_FALSE(validate(config(0, 1, 0)).empty());
    }
}
