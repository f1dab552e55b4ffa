#include "netefficacy/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "netefficacy/analytic.hpp"
#include "netefficacy/montecarlo.hpp"
#include "netefficacy/valuemodels.hpp"

namespace netefficacy {
namespace {

// Above this many (caller, target) pairs verify skips exact enumeration.
constexpr double kEnumerationLimit = 2e7;
constexpr double kHetNetRelativeTolerance = 0.01;
constexpr double kSigmaThreshold = 3.0;

ordered_json optional_json(const std::optional<double>& value) {
    return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::string format_number(double value) {
    std::ostringstream os;
    os.precision(6);
    os << value;
    return os.str();
}

[[noreturn]] void missing_section(Command command, std::string_view section) {
    throw UsageError("command '" + to_string(command) + "' needs the scenario's '" +
                     std::string(section) + "' section");
}

const NamedOverlay& select_overlay(Command command, const Scenario& scenario,
                                   const RunOptions& options) {
    if (scenario.overlays.empty()) missing_section(command, "overlays");
    if (!options.overlay) return scenario.overlays.front();
    if (const auto* o = scenario.find_overlay(*options.overlay)) return *o;
    throw UsageError("scenario has no overlay named '" + *options.overlay + "'");
}

montecarlo::SimConfig sim_config(const Scenario& scenario, const RunOptions& options) {
    montecarlo::SimConfig config;
    const SimSpec spec = scenario.sim.value_or(SimSpec{});
    config.seed = options.seed;
    config.attempts = options.attempts.value_or(spec.attempts);
    config.trials = options.trials.value_or(spec.trials);
    config.workers = options.workers;
    throw_if_invalid(montecarlo::validate(config));
    return config;
}

ordered_json common_inputs(const Scenario& scenario) {
    return ordered_json{{"scenario", scenario.name},
                        {"n_system", scenario.system.size()},
                        {"alpha", scenario.demand.rate},
                        {"target_rule", to_string(scenario.demand.target_rule)}};
}

void add_sim_inputs(ordered_json& inputs, const montecarlo::SimConfig& config) {
    inputs["seed"] = config.seed;
    inputs["attempts"] = config.attempts;
    inputs["trials"] = config.trials;
}

ordered_json hetnet_json(const analytic::HetNetResult& r) {
    return ordered_json{{"total", r.total},
                        {"preferred_load", r.preferred_load},
                        {"default_load", r.default_load},
                        {"binding", analytic::to_string(r.binding)}};
}

ordered_json hetnet_inputs(const HetNetConfig& c) {
    return ordered_json{{"default_capacity", c.default_capacity},
                        {"preferred_capacity", capacity_json(c.preferred_capacity)},
                        {"coverage", c.coverage}};
}

// Closed-form throughput of the contact process, when one exists: the
// default rule gives α·N_E²/N_Ω, excluding self gives α·N_E(N_E−1)/(N_Ω−1).
std::optional<double> closed_form(const Scenario& scenario, const NetworkOverlay& overlay) {
    if (scenario.demand.contacts || !is_connected(overlay)) return std::nullopt;
    const double alpha = scenario.demand.rate;
    const std::size_t ne = overlay.effective_size();
    const std::size_t nomega = scenario.system.size();
    if (scenario.demand.target_rule == TargetRule::UniformOverSystem)
        return analytic::efficacy(alpha, ne, nomega).analytic;
    if (nomega < 2 || ne == 0) return 0.0;
    return alpha * (static_cast<double>(ne) * static_cast<double>(ne - 1) /
                    static_cast<double>(nomega - 1));
}

bool exact_match(double a, double b) {
    return std::abs(a - b) <= analytic::kExactTolerance * std::max(1.0, std::abs(b));
}

Report run_efficacy(const Scenario& scenario, const RunOptions& options) {
    const auto& named = select_overlay(Command::Efficacy, scenario, options);
    const std::size_t ne = named.overlay.effective_size();
    const std::size_t nomega = scenario.system.size();
    const auto report = analytic::efficacy(scenario.demand.rate, ne, nomega);

    Report out;
    out.command = to_string(Command::Efficacy);
    out.inputs = common_inputs(scenario);
    out.inputs["overlay"] = named.name;
    out.inputs["n_effective"] = ne;
    out.outputs["efficacy"] = report.analytic;
    out.outputs["per_node"] = optional_json(report.per_node());
    out.outputs["coverage"] = static_cast<double>(ne) / static_cast<double>(nomega);

    if (options.shrink) {
        const auto d = analytic::disconnect_experiment(scenario.demand.rate, nomega, *options.shrink);
        out.inputs["shrink"] = *options.shrink;
        out.outputs["disconnect"] = ordered_json{{"n_effective", d.n_effective},
                                                 {"efficacy", d.report.analytic},
                                                 {"shrink_form", d.shrink_form}};
        const bool agree = exact_match(d.shrink_form, d.report.analytic);
        out.diagnostics.push_back(
            {"disconnect-forms", agree ? Status::Pass : Status::Info,
             agree ? "alpha*N_E/x equals alpha*N_E^2/N_Omega"
                   : "N_Omega/x is not an integer; the two forms differ by rounding of N_E"});
    }
    if (scenario.events)
        out.outputs["expected_utility"] = analytic::expected_utility(report.analytic, *scenario.events);
    if (scenario.multipurpose)
        out.outputs["multipurpose_total"] = analytic::multipurpose_total(*scenario.multipurpose);
    return out;
}

Report run_hetnet(const Scenario& scenario, const RunOptions&) {
    if (!scenario.hetnet) missing_section(Command::HetNet, "hetnet");
    const HetNetConfig& config = scenario.hetnet->config;
    const auto result = analytic::hetnet_capacity(config);

    Report out;
    out.command = to_string(Command::HetNet);
    out.inputs = hetnet_inputs(config);
    out.outputs = hetnet_json(result);
    out.outputs["preferred_share"] = result.total > 0.0 ? result.preferred_load / result.total
                                                        : config.coverage * config.coverage;
    out.outputs["normalized_total"] = result.total / config.default_capacity;
    const double smaller = std::min(config.default_capacity, config.preferred_capacity);
    out.outputs["dependent_capacity"] = analytic::dependent_capacity(smaller, config.coverage);
    if (result.binding == analytic::Binding::Preferred)
        out.diagnostics.push_back({"binding", Status::Info,
                                   "preferred network saturates before the default network"});
    return out;
}

Report run_plan_coverage(const Scenario& scenario, const RunOptions& options) {
    if (!scenario.hetnet) missing_section(Command::PlanCoverage, "hetnet");
    const auto target = options.target ? options.target : scenario.hetnet->target;
    if (!target) throw UsageError("command 'plan-coverage' needs --target or hetnet.target");
    const HetNetConfig& config = scenario.hetnet->config;
    const double coverage = analytic::plan_coverage(config.default_capacity, *target);

    HetNetConfig unlimited = config;
    unlimited.preferred_capacity = std::numeric_limits<double>::infinity();
    unlimited.coverage = coverage;
    const double achieved = analytic::hetnet_capacity(unlimited).total;
    HetNetConfig actual = config;
    actual.coverage = coverage;

    Report out;
    out.command = to_string(Command::PlanCoverage);
    out.inputs = ordered_json{{"default_capacity", config.default_capacity},
                              {"preferred_capacity", capacity_json(config.preferred_capacity)},
                              {"target", *target}};
    out.outputs["coverage"] = coverage;
    out.outputs["coverage_percent"] = 100.0 * coverage;
    out.outputs["achieved_total"] = achieved;
    out.outputs["with_preferred_capacity"] = hetnet_json(analytic::hetnet_capacity(actual));
    const bool round_trip = std::abs(achieved - *target) <= analytic::kRoundTripTolerance * *target;
    out.diagnostics.push_back({"round-trip", round_trip ? Status::Pass : Status::Fail,
                               "joint capacity at the planned coverage is " + format_number(achieved)});
    return out;
}

Report run_grow(const Scenario& scenario, const RunOptions&) {
    if (!scenario.trajectory) missing_section(Command::Grow, "trajectory");
    const double alpha = scenario.demand.rate;
    const auto points = analytic::growth_trajectory(alpha, *scenario.trajectory);

    Report out;
    out.command = to_string(Command::Grow);
    out.inputs = ordered_json{{"scenario", scenario.name}, {"alpha", alpha}, {"points", points.size()}};
    Series series{{"step", "n_e", "n_omega", "efficacy"}, {}};
    std::optional<std::size_t> saturation;
    for (const auto& p : points) {
        series.rows.push_back({p.step, p.n_effective, p.n_system, p.efficacy});
        if (!saturation && p.n_effective == p.n_system) saturation = p.step;
    }
    out.series = std::move(series);
    out.outputs["saturation_step"] = saturation ? ordered_json(*saturation) : ordered_json(nullptr);
    out.outputs["final_efficacy"] = points.back().efficacy;

    if (saturation) {
        const auto& at = points[*saturation];
        const bool continuous = at.efficacy == alpha * static_cast<double>(at.n_system);
        out.diagnostics.push_back({"saturation-continuity", continuous ? Status::Pass : Status::Fail,
                                   "efficacy at N_E = N_Omega = " + std::to_string(at.n_system) +
                                       " is " + format_number(at.efficacy)});
        bool linear = true;
        std::size_t checked = 0;
        for (std::size_t i = *saturation + 1; i < points.size(); ++i) {
            const auto& prev = points[i - 1];
            const auto& cur = points[i];
            if (cur.n_effective != cur.n_system || prev.n_effective != prev.n_system) continue;
            const double expected = alpha * (static_cast<double>(cur.n_system) -
                                             static_cast<double>(prev.n_system));
            linear = linear && exact_match(cur.efficacy - prev.efficacy, expected);
            ++checked;
        }
        if (checked > 0)
            out.diagnostics.push_back({"linear-after-saturation", linear ? Status::Pass : Status::Fail,
                                       std::to_string(checked) + " saturated steps grow by alpha*dN"});
    }
    return out;
}

ordered_json sim_json(const montecarlo::SimResult& r) {
    return ordered_json{{"n_effective", r.n_effective},
                        {"success_rate", r.success_rate},
                        {"throughput_hat", r.throughput_hat},
                        {"standard_error", r.standard_error},
                        {"satisfied_demand", r.satisfied_demand}};
}

Report run_simulate(const Scenario& scenario, const RunOptions& options) {
    const auto& named = select_overlay(Command::Simulate, scenario, options);
    const auto config = sim_config(scenario, options);
    const DemandModel demand = resolve_demand(scenario, options.seed);

    Report out;
    out.command = to_string(Command::Simulate);
    out.inputs = common_inputs(scenario);
    out.inputs["overlay"] = named.name;
    out.inputs["n_effective"] = named.overlay.effective_size();
    add_sim_inputs(out.inputs, config);

    NetworkOverlay simulated = named.overlay;
    if (options.shrink) {
        out.inputs["shrink"] = *options.shrink;
        simulated = montecarlo::disconnected_overlay(scenario.system, named.overlay, *options.shrink,
                                                     config.seed);
    }
    const auto result = montecarlo::simulate_contacts(scenario.system, simulated, demand, config);
    out.outputs = sim_json(result);
    out.outputs["closed_form"] = optional_json(closed_form(scenario, simulated));

    Series series{{"trial", "success_rate", "throughput"}, {}};
    const double scale = result.alpha * static_cast<double>(result.n_effective);
    for (std::size_t t = 0; t < result.per_trial.size(); ++t)
        series.rows.push_back({result.first_trial + t, result.per_trial[t], scale * result.per_trial[t]});
    out.series = std::move(series);

    if (scenario.hetnet && scenario.hetnet->overlay && !options.shrink) {
        const auto* preferred = scenario.find_overlay(*scenario.hetnet->overlay);
        const auto estimate = montecarlo::simulate_hetnet(scenario.system, preferred->overlay, demand,
                                                          scenario.hetnet->config, config);
        ordered_json h = hetnet_json(estimate.capacity);
        h["preferred_share"] = estimate.preferred_share;
        h["share_standard_error"] = estimate.share_standard_error;
        out.outputs["hetnet"] = std::move(h);
    }
    return out;
}

std::vector<std::uint64_t> size_grid(std::uint64_t n) {
    std::vector<std::uint64_t> grid;
    for (std::uint64_t decade = 1; decade <= n; decade *= 10) {
        for (std::uint64_t m : {1, 2, 5}) {
            if (decade * m <= n) grid.push_back(decade * m);
        }
        if (decade > n / 10) break;
    }
    if (grid.empty() || grid.back() != n) grid.push_back(n);
    return grid;
}

Report run_compare_models(const Scenario& scenario, const RunOptions& options) {
    const std::uint64_t n = scenario.system.size();
    const auto values = valuemodels::compare_value_models(n);

    Report out;
    out.command = to_string(Command::CompareModels);
    out.inputs = ordered_json{{"scenario", scenario.name}, {"n", n}, {"split", options.split}};
    out.outputs["value_models"] = ordered_json{{"node_value", values.node_value},
                                               {"link_value", values.link_value},
                                               {"per_user_link_value", values.link_value / values.node_value},
                                               {"link_share", optional_json(values.link_share)},
                                               {"density", optional_json(values.density)}};
    if (n >= 2) {
        const auto split = valuemodels::split_contradiction(n, options.split);
        out.outputs["split"] = ordered_json{{"link_ratio", split.link_ratio},
                                            {"resource_ratio", split.resource_ratio},
                                            {"per_resource_gain", split.per_resource_gain}};
        const bool conserved = split.resource_ratio == static_cast<double>(options.split);
        out.diagnostics.push_back({"split-conserves-nodes", conserved ? Status::Pass : Status::Fail,
                                   "splitting multiplies links by " + format_number(split.link_ratio) +
                                       " but node value only by " + format_number(split.resource_ratio)});
    }
    if (n >= 3) {
        const auto bridge = valuemodels::bridge_value_check(n);
        out.outputs["bridge"] = ordered_json{{"link_value", bridge.link_value},
                                             {"hub_node_value", bridge.hub_node_value},
                                             {"leaf_node_value", bridge.leaf_node_value}};
        out.diagnostics.push_back({"bridge-link-value", bridge.pass ? Status::Pass : Status::Fail,
                                   "solved per-link value " + format_number(bridge.link_value)});
    }

    Series series{{"n", "node_value", "link_value", "n_log_n", "density"}, {}};
    for (std::uint64_t m : size_grid(n)) {
        const auto v = valuemodels::compare_value_models(m);
        const double size = static_cast<double>(m);
        series.rows.push_back({m, v.node_value, v.link_value, size * std::log(size),
                               optional_json(v.density)});
    }
    out.series = std::move(series);
    return out;
}

Report run_verify(const Scenario& scenario, const RunOptions& options) {
    if (scenario.overlays.empty() && !scenario.verify_grid) missing_section(Command::Verify, "overlays");
    const auto config = sim_config(scenario, options);
    const DemandModel demand = resolve_demand(scenario, options.seed);

    Report out;
    out.command = to_string(Command::Verify);
    out.inputs = common_inputs(scenario);
    add_sim_inputs(out.inputs, config);
    out.outputs["overlays"] = ordered_json::object();

    const double nomega = static_cast<double>(scenario.system.size());
    for (const auto& named : scenario.overlays) {
        const auto& overlay = named.overlay;
        const auto form = closed_form(scenario, overlay);
        std::optional<double> enumerated;
        if (nomega * static_cast<double>(overlay.effective_size()) <= kEnumerationLimit)
            enumerated = montecarlo::exact_expectation(scenario.system, overlay, demand);
        const auto sim = montecarlo::simulate_contacts(scenario.system, overlay, demand, config);

        ordered_json entry = sim_json(sim);
        entry["closed_form"] = optional_json(form);
        entry["enumeration"] = optional_json(enumerated);

        if (form && enumerated) {
            const bool match = exact_match(*form, *enumerated);
            out.diagnostics.push_back({named.name + ": closed-form-vs-enumeration",
                                       match ? Status::Pass : Status::Fail,
                                       format_number(*form) + " vs " + format_number(*enumerated)});
        }
        const auto reference = enumerated ? enumerated : form;
        if (reference) {
            const double gap = std::abs(sim.throughput_hat - *reference);
            std::optional<double> sigmas;
            if (sim.standard_error > 0.0) sigmas = gap / sim.standard_error;
            entry["gap_sigma"] = optional_json(sigmas);
            Status status;
            std::string detail = "simulated " + format_number(sim.throughput_hat) + " vs exact " +
                                 format_number(*reference);
            if (sigmas) {
                status = *sigmas <= kSigmaThreshold ? Status::Pass : Status::Fail;
                detail += ", gap " + format_number(*sigmas) + " stderr";
            } else if (exact_match(sim.throughput_hat, *reference)) {
                status = Status::Pass;
                detail += ", no sampling variance";
            } else {
                status = config.trials < 2 ? Status::Info : Status::Fail;
                detail += config.trials < 2 ? ", one trial gives no standard error" : "";
            }
            out.diagnostics.push_back({named.name + ": monte-carlo", status, detail});
        }
        out.outputs["overlays"][named.name] = std::move(entry);
    }

    for (std::size_t i = 0; i < scenario.overlays.size(); ++i) {
        for (std::size_t j = i + 1; j < scenario.overlays.size(); ++j) {
            const auto& a = scenario.overlays[i];
            const auto& b = scenario.overlays[j];
            if (a.overlay.effective() != b.overlay.effective()) continue;
            const auto cmp = montecarlo::compare_topologies(scenario.system, a.overlay, b.overlay,
                                                            demand, config);
            const bool both_connected = is_connected(a.overlay) && is_connected(b.overlay);
            Status status = Status::Info;
            if (both_connected) status = cmp.bit_identical ? Status::Pass : Status::Fail;
            out.diagnostics.push_back(
                {"topology " + a.name + " (" + topology_name(a.overlay.topology()) + ") vs " + b.name +
                     " (" + topology_name(b.overlay.topology()) + ")",
                 status,
                 std::string(cmp.bit_identical ? "bit-identical" : "results differ") + ", max gap " +
                     format_number(cmp.max_gap)});
        }
    }

    if (scenario.hetnet && scenario.hetnet->overlay) {
        const auto* preferred = scenario.find_overlay(*scenario.hetnet->overlay);
        const auto& cfg = scenario.hetnet->config;
        const auto exact = analytic::hetnet_capacity(cfg);
        const auto est = montecarlo::simulate_hetnet(scenario.system, preferred->overlay, demand, cfg, config);
        ordered_json h = hetnet_json(est.capacity);
        h["preferred_share"] = est.preferred_share;
        h["share_standard_error"] = est.share_standard_error;
        h["analytic_total"] = exact.total;
        out.outputs["hetnet"] = std::move(h);

        if (!demand.contact_sets && scenario.demand.target_rule == TargetRule::UniformOverSystem &&
            is_connected(preferred->overlay)) {
            const double rel = exact.total > 0.0 ? std::abs(est.capacity.total - exact.total) / exact.total
                                                 : std::abs(est.capacity.total);
            out.diagnostics.push_back({"hetnet: total capacity",
                                       rel <= kHetNetRelativeTolerance ? Status::Pass : Status::Fail,
                                       "simulated " + format_number(est.capacity.total) + " vs " +
                                           format_number(exact.total)});
            const double n2 = cfg.coverage * cfg.coverage;
            const double share_gap = std::abs(est.preferred_share - n2);
            const bool share_ok = est.share_standard_error > 0.0
                                      ? share_gap <= kSigmaThreshold * est.share_standard_error
                                      : share_gap <= analytic::kExactTolerance;
            out.diagnostics.push_back({"hetnet: preferred share", share_ok ? Status::Pass : Status::Fail,
                                       "simulated " + format_number(est.preferred_share) +
                                           " vs n^2 = " + format_number(n2)});
        }
    }

    if (scenario.verify_grid) {
        const auto& grid = *scenario.verify_grid;
        const DemandModel grid_demand{grid.alpha, TargetRule::UniformOverSystem, std::nullopt};
        std::size_t points = 0;
        std::size_t mismatches = 0;
        for (std::size_t ns = 1; ns <= grid.max_n_system; ++ns) {
            const auto system = InformationSystem::of_size("grid", ns);
            for (std::size_t ne = 0; ne <= ns; ++ne) {
                const auto overlay = bind_overlay(system, ne == 0 ? NodeSet{} : NodeSet::range(1, ne));
                const double enumerated = montecarlo::exact_expectation(system, overlay, grid_demand);
                const double formula = analytic::efficacy(grid.alpha, ne, ns).analytic;
                if (!exact_match(enumerated, formula)) ++mismatches;
                ++points;
            }
        }
        out.outputs["grid"] = ordered_json{{"max_n_system", grid.max_n_system},
                                           {"points", points},
                                           {"mismatches", mismatches}};
        out.diagnostics.push_back({"grid: closed-form-vs-enumeration",
                                   mismatches == 0 ? Status::Pass : Status::Fail,
                                   std::to_string(mismatches) + " mismatches over " +
                                       std::to_string(points) + " points"});
    }
    return out;
}

}  // namespace

std::optional<Command> parse_command(std::string_view text) {
    for (Command c : {Command::Efficacy, Command::HetNet, Command::PlanCoverage, Command::Grow,
                      Command::Simulate, Command::CompareModels, Command::Verify})
        if (to_string(c) == text) return c;
    return std::nullopt;
}

std::string to_string(Command command) {
    switch (command) {
        case Command::Efficacy: return "efficacy";
        case Command::HetNet: return "hetnet";
        case Command::PlanCoverage: return "plan-coverage";
        case Command::Grow: return "grow";
        case Command::Simulate: return "simulate";
        case Command::CompareModels: return "compare-models";
        case Command::Verify: return "verify";
    }
    return "unknown";
}

Report run(Command command, const Scenario& scenario, const RunOptions& options) {
    switch (command) {
        case Command::Efficacy: return run_efficacy(scenario, options);
        case Command::HetNet: return run_hetnet(scenario, options);
        case Command::PlanCoverage: return run_plan_coverage(scenario, options);
        case Command::Grow: return run_grow(scenario, options);
        case Command::Simulate: return run_simulate(scenario, options);
        case Command::CompareModels: return run_compare_models(scenario, options);
        case Command::Verify: return run_verify(scenario, options);
    }
    throw UsageError("unknown command");
}

}  // namespace netefficacy
