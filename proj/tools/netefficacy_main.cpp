// netefficacy <command> --scenario <path> [options]
//
// Exit codes: 0 success, 2 usage, 3 validation, 4 runtime (including a
// verify run with failing checks, whose report is still written).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "netefficacy/commands.hpp"
#include "netefficacy/errors.hpp"
#include "netefficacy/report.hpp"
#include "netefficacy/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kRuntime = 4 };

int fail(ExitCode code, const std::string& kind, const std::string& message,
         nlohmann::ordered_json extra = nlohmann::ordered_json::object()) {
    nlohmann::ordered_json error{{"kind", kind}, {"exit_code", static_cast<int>(code)}, {"message", message}};
    error.update(extra);
    std::cerr << nlohmann::ordered_json{{"error", std::move(error)}}.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace netefficacy;

    CLI::App app{"Network efficacy models, capacity planning, and Monte Carlo verification",
                 "netefficacy"};
    std::string command_name;
    std::string scenario_path;
    std::string format_name = "human";
    std::optional<std::string> out_path;
    RunOptions options;

    app.add_option("command", command_name,
                   "efficacy | hetnet | plan-coverage | grow | simulate | compare-models | verify")
        ->required();
    app.add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    app.add_option("--format", format_name, "human | json | csv")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    app.add_option("--seed", options.seed, "Seed for every random draw (default 0)");
    app.add_option("--attempts", options.attempts, "Contact attempts per trial")->check(CLI::PositiveNumber);
    app.add_option("--trials", options.trials, "Independent trials")->check(CLI::PositiveNumber);
    app.add_option("--target", options.target, "Target joint capacity for plan-coverage");
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--overlay", options.overlay, "Overlay to analyse (default: the first)");
    app.add_option("--shrink", options.shrink, "Keep only 1/x of the effective nodes")
        ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
    app.add_option("--split", options.split, "Node split factor for compare-models")
        ->check(CLI::PositiveNumber);
    app.add_option("--workers", options.workers, "Simulation threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kUsage, "usage", e.what());
    }

    const auto command = parse_command(command_name);
    if (!command) return fail(kUsage, "usage", "unknown command '" + command_name + "'");
    const Format format = *parse_format(format_name);

    Report report;
    try {
        const Scenario scenario = parse_scenario(scenario_path);
        report = run(*command, scenario, options);
    } catch (const UsageError& e) {
        return fail(kUsage, "usage", e.what());
    } catch (const ParseError& e) {
        return fail(kValidation, "parse", e.what(), {{"line", e.line()}, {"column", e.column()}});
    } catch (const ValidationError& e) {
        nlohmann::ordered_json violations = nlohmann::ordered_json::array();
        for (const auto& v : e.violations()) violations.push_back({{"path", v.path}, {"message", v.message}});
        return fail(kValidation, "validation", e.what(), {{"violations", std::move(violations)}});
    } catch (const PreconditionError& e) {
        return fail(kValidation, "precondition", e.what());
    } catch (const std::exception& e) {
        return fail(kRuntime, "runtime", e.what());
    }

    const std::string text = emit(report, format);
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!(out << text)) return fail(kRuntime, "runtime", "cannot write '" + *out_path + "'");
    } else {
        std::cout << text;
    }
    if (!report.passed()) return fail(kRuntime, "verification", "one or more checks failed");
    return kOk;
}
