#pragma once

// Scenario files: JSON documents describing an information system, named
// overlays, a demand model, and optional heterogeneous-network, simulation,
// trajectory, and verification sections. See docs/scenario-format.md.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netefficacy/analytic.hpp"
#include "netefficacy/core_model.hpp"
#include "netefficacy/montecarlo.hpp"

namespace netefficacy {

inline constexpr int kScenarioSchemaVersion = 1;

struct NamedOverlay {
    std::string name;
    NetworkOverlay overlay;
};

/// Contact lists are either given explicitly or sampled uniformly at run
/// time from the run seed.
struct ContactSpec {
    std::optional<std::size_t> sample_size;
    std::map<NodeId, NodeSet> lists;
};

struct DemandSpec {
    double rate = 1.0;
    TargetRule target_rule = TargetRule::UniformOverSystem;
    std::optional<ContactSpec> contacts;
};

struct HetNetSpec {
    HetNetConfig config;
    std::optional<std::string> overlay;  ///< preferred network, for simulation
    std::optional<double> target;        ///< default --target for plan-coverage
};

struct SimSpec {
    std::uint64_t attempts = 100'000;
    std::uint64_t trials = 10;
};

struct VerifyGridSpec {
    std::size_t max_n_system = 200;
    double alpha = 1.0;
};

struct Scenario {
    int schema_version = kScenarioSchemaVersion;
    std::string name;
    InformationSystem system{"", NodeSet{}};
    std::vector<NamedOverlay> overlays;
    DemandSpec demand;
    std::optional<HetNetSpec> hetnet;
    std::optional<SimSpec> sim;
    std::optional<std::vector<analytic::SizePair>> trajectory;
    std::optional<std::vector<analytic::SystemLoad>> multipurpose;
    std::optional<EventDistribution> events;
    std::optional<VerifyGridSpec> verify_grid;

    const NamedOverlay* find_overlay(std::string_view name) const;
};

/// Parses and validates scenario text. Throws ParseError for malformed JSON
/// (with line and column) and ValidationError for schema or invariant
/// violations (with field paths).
Scenario parse_scenario_text(std::string_view text);

Scenario parse_scenario(const std::filesystem::path& path);

/// Every violated scenario-level invariant.
Violations validate(const Scenario& scenario);

/// The demand model for a run; sampled contact lists use `seed`.
DemandModel resolve_demand(const Scenario& scenario, std::uint64_t seed);

}  // namespace netefficacy
