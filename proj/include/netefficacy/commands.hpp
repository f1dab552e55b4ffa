#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "netefficacy/report.hpp"
#include "netefficacy/scenario.hpp"

namespace netefficacy {

enum class Command { Efficacy, HetNet, PlanCoverage, Grow, Simulate, CompareModels, Verify };

std::optional<Command> parse_command(std::string_view text);
std::string to_string(Command command);

struct RunOptions {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> attempts;  ///< overrides the scenario's sim.attempts
    std::optional<std::uint64_t> trials;
    std::optional<double> target;           ///< plan-coverage target capacity
    std::optional<std::string> overlay;     ///< overlay to analyse; defaults to the first
    std::optional<double> shrink;           ///< disconnect factor for efficacy/simulate
    std::uint64_t split = 2;                ///< node split factor for compare-models
    unsigned workers = 0;                   ///< simulation threads; never affects results
};

/// Runs one command against a parsed scenario. Throws UsageError when the
/// scenario lacks a section the command needs.
Report run(Command command, const Scenario& scenario, const RunOptions& options);

}  // namespace netefficacy
