#include "netefficacy/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace netefficacy {
namespace {

std::string significant(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string human_scalar(const ordered_json& value) {
    if (value.is_null()) return "n/a";
    if (value.is_number_float()) return significant(value.get<double>());
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

void human_value(std::ostringstream& os, const ordered_json& value, int indent);

void human_object(std::ostringstream& os, const ordered_json& object, int indent) {
    for (const auto& [key, value] : object.items()) {
        os << std::string(indent, ' ') << key << ":";
        if (value.is_object() && !value.empty()) {
            os << "\n";
            human_object(os, value, indent + 2);
        } else {
            os << " ";
            human_value(os, value, indent);
            os << "\n";
        }
    }
}

void human_value(std::ostringstream& os, const ordered_json& value, int indent) {
    if (value.is_array()) {
        os << "[";
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (i) os << ", ";
            human_value(os, value[i], indent);
        }
        os << "]";
    } else if (value.is_object()) {
        os << "{}";
    } else {
        os << human_scalar(value);
    }
}

std::string csv_field(const ordered_json& value) {
    if (value.is_null()) return "";
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (text.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : text) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return text;
}

void flatten(const ordered_json& value, const std::string& prefix,
             std::vector<std::pair<std::string, ordered_json>>& out) {
    if (value.is_object()) {
        for (const auto& [key, child] : value.items())
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    } else {
        out.emplace_back(prefix, value);
    }
}

ordered_json series_json(const Series& series) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : series.rows) rows.push_back(ordered_json(row));
    return ordered_json{{"columns", series.columns}, {"rows", std::move(rows)}};
}

}  // namespace

std::string to_string(Status status) {
    switch (status) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Info: return "INFO";
    }
    return "INFO";
}

bool Report::passed() const {
    for (const auto& d : diagnostics)
        if (d.status == Status::Fail) return false;
    return true;
}

std::optional<Format> parse_format(std::string_view text) {
    if (text == "human") return Format::Human;
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    return std::nullopt;
}

ordered_json capacity_json(double capacity) {
    if (std::isinf(capacity)) return "unlimited";
    return capacity;
}

ordered_json to_json(const Report& report) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["command"] = report.command;
    doc["inputs"] = report.inputs;
    doc["outputs"] = report.outputs;
    if (report.series) doc["outputs"]["series"] = series_json(*report.series);
    ordered_json diagnostics = ordered_json::array();
    for (const auto& d : report.diagnostics)
        diagnostics.push_back({{"check", d.check}, {"status", to_string(d.status)}, {"detail", d.detail}});
    doc["diagnostics"] = std::move(diagnostics);
    return doc;
}

Report report_from_json(const ordered_json& doc) {
    Report report;
    report.command = doc.at("command").get<std::string>();
    report.inputs = doc.at("inputs");
    report.outputs = doc.at("outputs");
    if (auto it = report.outputs.find("series"); it != report.outputs.end()) {
        Series series;
        series.columns = it->at("columns").get<std::vector<std::string>>();
        for (const auto& row : it->at("rows")) series.rows.emplace_back(row.begin(), row.end());
        report.series = std::move(series);
        report.outputs.erase("series");
    }
    for (const auto& d : doc.at("diagnostics")) {
        const std::string status = d.at("status").get<std::string>();
        report.diagnostics.push_back(
            {d.at("check").get<std::string>(),
             status == "PASS" ? Status::Pass : status == "FAIL" ? Status::Fail : Status::Info,
             d.at("detail").get<std::string>()});
    }
    return report;
}

std::string emit(const Report& report, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Json:
            os << to_json(report).dump(2) << "\n";
            break;

        case Format::Csv:
            if (report.series) {
                for (std::size_t i = 0; i < report.series->columns.size(); ++i)
                    os << (i ? "," : "") << report.series->columns[i];
                os << "\n";
                for (const auto& row : report.series->rows) {
                    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
                    os << "\n";
                }
            } else {
                std::vector<std::pair<std::string, ordered_json>> rows;
                flatten(report.outputs, "", rows);
                os << "key,value\n";
                for (const auto& [key, value] : rows) os << key << "," << csv_field(value) << "\n";
            }
            break;

        case Format::Human:
            os << "command: " << report.command << "\n";
            if (!report.inputs.empty()) {
                os << "inputs:\n";
                human_object(os, report.inputs, 2);
            }
            if (!report.outputs.empty()) {
                os << "outputs:\n";
                human_object(os, report.outputs, 2);
            }
            if (report.series) {
                os << "series:\n  ";
                for (std::size_t i = 0; i < report.series->columns.size(); ++i)
                    os << (i ? "\t" : "") << report.series->columns[i];
                os << "\n";
                for (const auto& row : report.series->rows) {
                    os << "  ";
                    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << human_scalar(row[i]);
                    os << "\n";
                }
            }
            if (!report.diagnostics.empty()) {
                os << "diagnostics:\n";
                for (const auto& d : report.diagnostics)
                    os << "  [" << to_string(d.status) << "] " << d.check << ": " << d.detail << "\n";
            }
            break;
    }
    return os.str();
}

}  // namespace netefficacy
