#pragma once

// Command reports and their human, JSON, and CSV renderings.
//
// JSON layout (schema_version 1):
//   {"schema_version": 1, "command": ..., "inputs": {...},
//    "outputs": {...}, "diagnostics": [{"check", "status", "detail"}]}
// A report with a series carries it as outputs.series =
//   {"columns": [...], "rows": [[...], ...]}.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace netefficacy {

inline constexpr int kReportSchemaVersion = 1;

using ordered_json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Info };
std::string to_string(Status status);

struct Diagnostic {
    std::string check;
    Status status = Status::Info;
    std::string detail;
};

struct Series {
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;
};

struct Report {
    std::string command;
    ordered_json inputs = ordered_json::object();
    ordered_json outputs = ordered_json::object();
    std::vector<Diagnostic> diagnostics;
    std::optional<Series> series;

    bool passed() const;
};

enum class Format { Human, Json, Csv };
std::optional<Format> parse_format(std::string_view text);

std::string emit(const Report& report, Format format);

ordered_json to_json(const Report& report);

/// Rebuilds a report from its JSON rendering.
Report report_from_json(const ordered_json& doc);

/// Capacities may be unlimited; JSON has no infinity, so it is spelled out.
ordered_json capacity_json(double capacity);

}  // namespace netefficacy
