#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "netefficacy/analytic.hpp"
#include "netefficacy/commands.hpp"
#include "netefficacy/montecarlo.hpp"
#include "netefficacy/report.hpp"
#include "netefficacy/scenario.hpp"
#include "netefficacy/valuemodels.hpp"

namespace py = pybind11;
namespace ne = netefficacy;

namespace {

ne::montecarlo::SimConfig make_config(std::uint64_t seed, std::uint64_t attempts,
                                      std::uint64_t trials, unsigned workers) {
    ne::montecarlo::SimConfig config;
    config.seed = seed;
    config.attempts = attempts;
    config.trials = trials;
    config.workers = workers;
    return config;
}

ne::DemandModel make_demand(double alpha, bool exclude_self) {
    ne::DemandModel demand;
    demand.rate = alpha;
    demand.target_rule = exclude_self ? ne::TargetRule::UniformOverSystemExcludingSelf
                                      : ne::TargetRule::UniformOverSystem;
    return demand;
}

// System 1..n_system with the first n_effective nodes networked.
std::pair<ne::InformationSystem, ne::NetworkOverlay> sized(std::size_t n_system,
                                                            std::size_t n_effective) {
    if (n_effective > n_system)
        throw ne::PreconditionError("n_effective exceeds n_system");
    auto system = ne::InformationSystem::of_size("python", n_system);
    auto overlay =
        ne::bind_overlay(system, n_effective == 0 ? ne::NodeSet{} : ne::NodeSet::range(1, n_effective));
    return {std::move(system), std::move(overlay)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Network efficacy models, heterogeneous capacity planning, and a seeded "
              "Monte Carlo contact simulator.";

    py::register_exception<ne::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ne::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ne::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ne::UsageError>(m, "UsageError", PyExc_RuntimeError);

    py::class_<ne::EfficacyReport>(m, "EfficacyReport")
        .def_readonly("analytic", &ne::EfficacyReport::analytic)
        .def_readonly("n_effective", &ne::EfficacyReport::n_effective)
        .def_property_readonly("per_node", &ne::EfficacyReport::per_node);

    py::class_<ne::analytic::DisconnectReport>(m, "DisconnectReport")
        .def_readonly("n_effective", &ne::analytic::DisconnectReport::n_effective)
        .def_readonly("shrink_form", &ne::analytic::DisconnectReport::shrink_form)
        .def_property_readonly("efficacy",
                               [](const ne::analytic::DisconnectReport& r) { return r.report.analytic; });

    py::class_<ne::analytic::HetNetResult>(m, "HetNetResult")
        .def_readonly("total", &ne::analytic::HetNetResult::total)
        .def_readonly("preferred_load", &ne::analytic::HetNetResult::preferred_load)
        .def_readonly("default_load", &ne::analytic::HetNetResult::default_load)
        .def_property_readonly("binding", [](const ne::analytic::HetNetResult& r) {
            return ne::analytic::to_string(r.binding);
        });

    py::class_<ne::analytic::TrajectoryPoint>(m, "TrajectoryPoint")
        .def_readonly("step", &ne::analytic::TrajectoryPoint::step)
        .def_readonly("n_effective", &ne::analytic::TrajectoryPoint::n_effective)
        .def_readonly("n_system", &ne::analytic::TrajectoryPoint::n_system)
        .def_readonly("efficacy", &ne::analytic::TrajectoryPoint::efficacy);

    py::class_<ne::valuemodels::ValueComparison>(m, "ValueComparison")
        .def_readonly("n", &ne::valuemodels::ValueComparison::n)
        .def_readonly("link_value", &ne::valuemodels::ValueComparison::link_value)
        .def_readonly("node_value", &ne::valuemodels::ValueComparison::node_value)
        .def_readonly("link_share", &ne::valuemodels::ValueComparison::link_share)
        .def_readonly("density", &ne::valuemodels::ValueComparison::density);

    py::class_<ne::valuemodels::SplitOutcome>(m, "SplitOutcome")
        .def_readonly("link_ratio", &ne::valuemodels::SplitOutcome::link_ratio)
        .def_readonly("resource_ratio", &ne::valuemodels::SplitOutcome::resource_ratio)
        .def_readonly("per_resource_gain", &ne::valuemodels::SplitOutcome::per_resource_gain);

    py::class_<ne::valuemodels::BridgeVerdict>(m, "BridgeVerdict")
        .def_readonly("n", &ne::valuemodels::BridgeVerdict::n)
        .def_readonly("link_value", &ne::valuemodels::BridgeVerdict::link_value)
        .def_readonly("passed", &ne::valuemodels::BridgeVerdict::pass);

    py::class_<ne::montecarlo::SimResult>(m, "SimResult")
        .def_readonly("n_effective", &ne::montecarlo::SimResult::n_effective)
        .def_readonly("n_system", &ne::montecarlo::SimResult::n_system)
        .def_readonly("success_rate", &ne::montecarlo::SimResult::success_rate)
        .def_readonly("throughput_hat", &ne::montecarlo::SimResult::throughput_hat)
        .def_readonly("standard_error", &ne::montecarlo::SimResult::standard_error)
        .def_readonly("satisfied_demand", &ne::montecarlo::SimResult::satisfied_demand)
        .def_readonly("per_trial", &ne::montecarlo::SimResult::per_trial);

    py::class_<ne::montecarlo::HetNetEstimate>(m, "HetNetEstimate")
        .def_readonly("preferred_share", &ne::montecarlo::HetNetEstimate::preferred_share)
        .def_readonly("default_share", &ne::montecarlo::HetNetEstimate::default_share)
        .def_readonly("share_standard_error", &ne::montecarlo::HetNetEstimate::share_standard_error)
        .def_readonly("capacity", &ne::montecarlo::HetNetEstimate::capacity);

    m.def(
        "expected_utility",
        [](double psi, const std::vector<std::pair<double, double>>& events) {
            ne::EventDistribution dist;
            for (std::size_t i = 0; i < events.size(); ++i)
                dist.events.push_back({"e" + std::to_string(i), events[i].first, events[i].second});
            return ne::analytic::expected_utility(psi, dist);
        },
        py::arg("psi"), py::arg("events"),
        "psi * sum(weight * probability) over (probability, weight) pairs.");

    m.def("efficacy", &ne::analytic::efficacy, py::arg("alpha"), py::arg("n_effective"),
          py::arg("n_system"));
    m.def("disconnect_experiment", &ne::analytic::disconnect_experiment, py::arg("alpha"),
          py::arg("n_system"), py::arg("shrink_x"));
    m.def(
        "hetnet_capacity",
        [](double default_capacity, double preferred_capacity, double coverage) {
            return ne::analytic::hetnet_capacity({default_capacity, preferred_capacity, coverage});
        },
        py::arg("default_capacity"), py::arg("preferred_capacity") = std::numeric_limits<double>::infinity(),
        py::arg("coverage"));
    m.def("dependent_capacity", &ne::analytic::dependent_capacity, py::arg("c_small"),
          py::arg("traffic_fraction"));
    m.def("plan_coverage", &ne::analytic::plan_coverage, py::arg("c_default"), py::arg("target_total"));
    m.def(
        "growth_trajectory",
        [](double alpha, const std::vector<std::pair<std::size_t, std::size_t>>& schedule) {
            std::vector<ne::analytic::SizePair> pairs;
            for (const auto& [ne_, nomega] : schedule) pairs.push_back({ne_, nomega});
            return ne::analytic::growth_trajectory(alpha, pairs);
        },
        py::arg("alpha"), py::arg("schedule"), "schedule: list of (n_effective, n_system)");
    m.def(
        "saturating_schedule",
        [](std::size_t n_system, std::size_t from, std::size_t to, std::size_t step) {
            std::vector<std::pair<std::size_t, std::size_t>> out;
            for (const auto& p : ne::analytic::saturating_schedule(n_system, from, to, step))
                out.emplace_back(p.n_effective, p.n_system);
            return out;
        },
        py::arg("n_system"), py::arg("start"), py::arg("stop"), py::arg("step") = 1);
    m.def(
        "multipurpose_total",
        [](const std::vector<std::tuple<double, std::size_t, std::size_t>>& systems) {
            std::vector<ne::analytic::SystemLoad> loads;
            for (const auto& [alpha, n_e, n_omega] : systems) loads.push_back({alpha, n_e, n_omega});
            return ne::analytic::multipurpose_total(loads);
        },
        py::arg("systems"), "systems: list of (alpha, n_effective, n_system)");

    m.def("compare_value_models", &ne::valuemodels::compare_value_models, py::arg("n"));
    m.def("split_contradiction", &ne::valuemodels::split_contradiction, py::arg("n"), py::arg("k"));
    m.def("information_density", &ne::valuemodels::information_density, py::arg("n"));
    m.def("bridge_value_check", &ne::valuemodels::bridge_value_check, py::arg("n"));

    m.def(
        "simulate_contacts",
        [](std::size_t n_system, std::size_t n_effective, double alpha, std::uint64_t seed,
           std::uint64_t attempts, std::uint64_t trials, bool exclude_self, unsigned workers) {
            const auto [system, overlay] = sized(n_system, n_effective);
            py::gil_scoped_release release;
            return ne::montecarlo::simulate_contacts(system, overlay, make_demand(alpha, exclude_self),
                                                     make_config(seed, attempts, trials, workers));
        },
        py::arg("n_system"), py::arg("n_effective"), py::arg("alpha") = 1.0, py::arg("seed") = 0,
        py::arg("attempts") = 100'000, py::arg("trials") = 10, py::arg("exclude_self") = false,
        py::arg("workers") = 0,
        "Simulates a system of nodes 1..n_system whose first n_effective nodes are networked.");
    m.def(
        "simulate_hetnet",
        [](std::size_t n_system, std::size_t n_effective, double default_capacity,
           double preferred_capacity, std::uint64_t seed, std::uint64_t attempts,
           std::uint64_t trials, unsigned workers) {
            const auto [system, overlay] = sized(n_system, n_effective);
            const ne::HetNetConfig config{default_capacity, preferred_capacity,
                                          static_cast<double>(n_effective) / static_cast<double>(n_system)};
            py::gil_scoped_release release;
            return ne::montecarlo::simulate_hetnet(system, overlay, make_demand(1.0, false), config,
                                                   make_config(seed, attempts, trials, workers));
        },
        py::arg("n_system"), py::arg("n_effective"), py::arg("default_capacity"),
        py::arg("preferred_capacity") = std::numeric_limits<double>::infinity(), py::arg("seed") = 0,
        py::arg("attempts") = 100'000, py::arg("trials") = 10, py::arg("workers") = 0);

    m.def(
        "run",
        [](const std::string& command, const std::string& scenario_path, const std::string& format,
           std::uint64_t seed, std::optional<std::uint64_t> attempts,
           std::optional<std::uint64_t> trials, std::optional<double> target) {
            const auto cmd = ne::parse_command(command);
            if (!cmd) throw ne::UsageError("unknown command '" + command + "'");
            const auto fmt = ne::parse_format(format);
            if (!fmt) throw ne::UsageError("unknown format '" + format + "'");
            ne::RunOptions options;
            options.seed = seed;
            options.attempts = attempts;
            options.trials = trials;
            options.target = target;
            const auto scenario = ne::parse_scenario(scenario_path);
            return ne::emit(ne::run(*cmd, scenario, options), *fmt);
        },
        py::arg("command"), py::arg("scenario"), py::arg("format") = "json", py::arg("seed") = 0,
        py::arg("attempts") = py::none(), py::arg("trials") = py::none(), py::arg("target") = py::none(),
        "Runs a CLI command on a scenario file and returns the rendered report.");
}
