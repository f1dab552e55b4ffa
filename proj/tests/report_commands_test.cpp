#include "doctest.h"

#include <cmath>
#include <string>

#include "netefficacy/commands.hpp"

using namespace netefficacy;

namespace {

Scenario bundled(const std::string& name) {
    return parse_scenario(std::string(NETEFFICACY_SCENARIO_DIR) + "/" + name + ".scenario");
}

const Diagnostic* find_check(const Report& r, std::string_view check) {
    for (const auto& d : r.diagnostics)
        if (d.check == check) return &d;
    return nullptr;
}

RunOptions quick(unsigned workers = 0) {
    RunOptions o;
    o.seed = 7;
    o.attempts = 20'000;
    o.trials = 5;
    o.workers = workers;
    return o;
}

}  // namespace

TEST_SUITE("report") {
    TEST_CASE("json round trip") {
        Report r;
        r.command = "efficacy";
        r.inputs["n"] = 3;
        r.outputs["value"] = 1.5;
        r.diagnostics.push_back({"a", Status::Pass, "ok"});
        r.diagnostics.push_back({"b", Status::Info, "note"});
        r.series = Series{{"x", "y"}, {{1, 2.0}, {2, 4.0}}};
        const auto back = report_from_json(to_json(r));
        CHECK(emit(back, Format::Json) == emit(r, Format::Json));
        CHECK(back.passed());
        CHECK(to_json(r)["schema_version"] == 1);
        CHECK(to_json(r)["outputs"]["series"]["columns"][1] == "y");
    }

    TEST_CASE("failing diagnostics fail the report") {
        Report r;
        r.diagnostics.push_back({"a", Status::Fail, ""});
        CHECK_FALSE(r.passed());
    }

    TEST_CASE("csv renders the series or the flattened outputs") {
        Report r;
        r.command = "x";
        r.outputs["a"] = 1;
        r.outputs["nested"] = ordered_json{{"b", 2}};
        const std::string flat = emit(r, Format::Csv);
        CHECK(flat.rfind("key,value\n", 0) == 0);
        CHECK(flat.find("nested.b,2") != std::string::npos);
        r.series = Series{{"x", "y"}, {{1, 2}}};
        CHECK(emit(r, Format::Csv) == "x,y\n1,2\n");
    }

    TEST_CASE("unlimited capacity is spelled out") {
        CHECK(capacity_json(std::numeric_limits<double>::infinity()) == "unlimited");
        CHECK(capacity_json(2.0) == 2.0);
    }

    TEST_CASE("format and command names") {
        CHECK(parse_format("json") == Format::Json);
        CHECK_FALSE(parse_format("xml").has_value());
        for (auto c : {Command::Efficacy, Command::HetNet, Command::PlanCoverage, Command::Grow,
                       Command::Simulate, Command::CompareModels, Command::Verify})
            CHECK(parse_command(to_string(c)) == c);
        CHECK_FALSE(parse_command("nope").has_value());
    }
}

TEST_SUITE("commands") {
    TEST_CASE("hetnet on the cluster scenario") {
        const auto r = run(Command::HetNet, bundled("cluster"), quick());
        CHECK(std::abs(r.outputs["total"].get<double>() - 1.8) <= 1e-12);
        CHECK(std::abs(r.outputs["preferred_share"].get<double>() - 4.0 / 9.0) <= 1e-12);
        CHECK(std::abs(r.outputs["dependent_capacity"].get<double>() - 3.0) <= 1e-12);
        CHECK(emit(r, Format::Human).find("1.8") != std::string::npos);
    }

    TEST_CASE("plan coverage uses the scenario target or the option") {
        auto r = run(Command::PlanCoverage, bundled("cluster"), quick());
        CHECK(std::abs(r.outputs["coverage"].get<double>() - 0.816497) <= 5e-7);
        CHECK(r.passed());
        auto opts = quick();
        opts.target = 2.0;
        r = run(Command::PlanCoverage, bundled("cluster"), opts);
        CHECK(std::abs(r.outputs["coverage"].get<double>() - std::sqrt(0.5)) <= 1e-12);
    }

    TEST_CASE("efficacy with a shrink factor") {
        auto opts = quick();
        opts.shrink = 2.0;
        const auto r = run(Command::Efficacy, bundled("deficit"), opts);
        CHECK(std::abs(r.outputs["efficacy"].get<double>() - 90.0) <= 1e-12);
        CHECK(r.outputs["disconnect"]["n_effective"] == 500);
        CHECK(std::abs(r.outputs["expected_utility"].get<double>() - 90.0 * 3.4) <= 1e-9);
        CHECK(std::abs(r.outputs["multipurpose_total"].get<double>() - (90.0 + 18.0)) <= 1e-12);
    }

    TEST_CASE("grow reports saturation") {
        const auto r = run(Command::Grow, bundled("saturation"), quick());
        CHECK(r.outputs["saturation_step"] == 9);
        CHECK(r.outputs["final_efficacy"] == 150.0);
        REQUIRE(find_check(r, "saturation-continuity"));
        CHECK(find_check(r, "saturation-continuity")->status == Status::Pass);
        CHECK(find_check(r, "linear-after-saturation")->status == Status::Pass);
        CHECK(r.series->rows.size() == 15);
    }

    TEST_CASE("compare-models") {
        const auto r = run(Command::CompareModels, bundled("deficit"), quick());
        CHECK(r.outputs["value_models"]["link_value"] == 999000.0);
        CHECK(r.outputs["bridge"]["link_value"] == 0.0);
        CHECK(r.passed());
        CHECK(r.series->rows.back()[0] == 1000);
    }

    TEST_CASE("simulate is deterministic across worker counts") {
        const auto a = emit(run(Command::Simulate, bundled("cluster"), quick(1)), Format::Json);
        const auto b = emit(run(Command::Simulate, bundled("cluster"), quick(4)), Format::Json);
        CHECK(a == b);
    }

    TEST_CASE("verify passes on connected overlays and flags islands") {
        const auto r = run(Command::Verify, bundled("topology"), quick());
        CHECK(r.passed());
        bool saw_info = false;
        for (const auto& d : r.diagnostics)
            if (d.check.find("islands") != std::string::npos && d.status == Status::Info) saw_info = true;
        CHECK(saw_info);
    }

    TEST_CASE("verify grid") {
        auto opts = quick();
        const auto r = run(Command::Verify, bundled("small-grid"), opts);
        REQUIRE(find_check(r, "grid: closed-form-vs-enumeration"));
        CHECK(find_check(r, "grid: closed-form-vs-enumeration")->status == Status::Pass);
    }

    TEST_CASE("missing sections are usage errors") {
        CHECK_THROWS_AS(run(Command::HetNet, bundled("saturation"), quick()), UsageError);
        CHECK_THROWS_AS(run(Command::Grow, bundled("cluster"), quick()), UsageError);
        CHECK_THROWS_AS(run(Command::Simulate, bundled("saturation"), quick()), UsageError);
        CHECK_THROWS_AS(run(Command::Verify, bundled("saturation"), quick()), UsageError);
        auto opts = quick();
        opts.overlay = "nope";
        CHECK_THROWS_AS(run(Command::Efficacy, bundled("cluster"), opts), UsageError);
    }

    TEST_CASE("every bundled scenario runs every applicable command") {
        for (const char* name : {"cluster", "deficit", "saturation", "topology", "small-grid", "contacts"}) {
            const auto scenario = bundled(name);
            for (auto c : {Command::Efficacy, Command::HetNet, Command::PlanCoverage, Command::Grow,
                           Command::Simulate, Command::CompareModels, Command::Verify}) {
                CAPTURE(name);
                CAPTURE(to_string(c));
                try {
                    const auto r = run(c, scenario, quick());
                    for (auto f : {Format::Human, Format::Json, Format::Csv}) CHECK_FALSE(emit(r, f).empty());
                    CHECK(r.passed());
                } catch (const UsageError&) {
                }
            }
        }
    }
}
