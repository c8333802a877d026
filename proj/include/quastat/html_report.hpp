// Copyright 2026 the quastat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUASTAT_HTML_REPORT_HPP
#define QUASTAT_HTML_REPORT_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quastat/core.hpp"

namespace quastat {

namespace detail {

inline std::string html_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string cell(const nlohmann::json& v) {
    if (v.is_null()) return "&ndash;";
    if (v.is_string()) return html_escape(v.get<std::string>());
    if (v.is_array()) {  // grade interval
        std::ostringstream os;
        os << "[" << v[0].dump() << "&ndash;" << v[1].dump() << "]";
        return os.str();
    }
    return v.dump();
}

inline const char* arrow(const std::string& dir) {
    if (dir == "up") return "&#8599;";
    if (dir == "down") return "&#8600;";
    return "&#8594;";
}

}  // namespace detail

/// Static single-page render of an emitted run index; same data as the JSON.
inline std::string render_html_report(const nlohmann::json& index,
                                      const std::vector<nlohmann::json>& artifacts) {
    using nlohmann::json;
    std::ostringstream os;
    os << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>"
       << detail::html_escape(index.value("project", "quastat report"))
       << "</title>\n<style>\n"
          "body { font-family: sans-serif; margin: 2em; color: #222; }\n"
          "table { border-collapse: collapse; margin: 1em 0; }\n"
          "th, td { border: 1px solid #999; padding: 4px 10px; text-align: right; }\n"
          "th { background: #eee; }\n"
          "td.name, th.name { text-align: left; }\n"
          ".pass { color: #07700f; } .warn { color: #9a6700; } .fail { color: #b00020; }\n"
          ".error { color: #b00020; font-weight: bold; }\n"
          "</style>\n</head>\n<body>\n";
    os << "<h1>" << detail::html_escape(index.value("project", "")) << " &mdash; static quality report</h1>\n";

    // clone metrics table, one row per version
    os << "<h2>Code clones</h2>\n<table>\n<tr><th class=\"name\">Version</th>"
          "<th>Analysed units</th><th>Cloned units</th><th>Blow-up [%]</th>"
          "<th>Unit coverage [%]</th><th>Longest clone</th><th>Most instances</th></tr>\n";
    for (const json& a : artifacts) {
        const json& c = a["clones"];
        os << "<tr><td class=\"name\">" << detail::cell(a["version"]) << "</td>";
        if (c.is_null()) {
            os << "<td colspan=\"6\">skipped</td>";
        } else {
            os << "<td>" << detail::cell(c["analysed_units"]) << "</td><td>"
               << detail::cell(c["cloned_units"]) << "</td><td>" << detail::cell(c["blow_up"])
               << "</td><td>" << detail::cell(c["unit_coverage"]) << "</td><td>"
               << detail::cell(c["longest_clone"]) << "</td><td>"
               << detail::cell(c["most_instances"]) << "</td>";
        }
        os << "</tr>\n";
    }
    os << "</table>\n";

    bool any_gapped = false;
    for (const json& a : artifacts)
        if (!a["clones_gapped"].is_null()) any_gapped = true;
    if (any_gapped) {
        os << "<h2>Gapped clones</h2>\n<table>\n<tr><th class=\"name\">Version</th>"
              "<th>Analysed units</th><th>Cloned units</th><th>Blow-up [%]</th>"
              "<th>Unit coverage [%]</th><th>Longest clone</th><th>Most instances</th></tr>\n";
        for (const json& a : artifacts) {
            const json& c = a["clones_gapped"];
            os << "<tr><td class=\"name\">" << detail::cell(a["version"]) << "</td>";
            if (c.is_null()) {
                os << "<td colspan=\"6\">skipped</td>";
            } else {
                os << "<td>" << detail::cell(c["analysed_units"]) << "</td><td>"
                   << detail::cell(c["cloned_units"]) << "</td><td>" << detail::cell(c["blow_up"])
                   << "</td><td>" << detail::cell(c["unit_coverage"]) << "</td><td>"
                   << detail::cell(c["longest_clone"]) << "</td><td>"
                   << detail::cell(c["most_instances"]) << "</td>";
            }
            os << "</tr>\n";
        }
        os << "</table>\n";
    }

    // trend arrows when the index carries a multi-version trend
    if (index.contains("trend") && !index["trend"].is_null()) {
        os << "<h2>Trend</h2>\n<table>\n<tr><th class=\"name\">Metric</th>";
        for (const auto& v : index["trend"]["versions"])
            os << "<th>" << detail::cell(v) << "</th>";
        os << "<th>Overall</th></tr>\n";
        for (const auto& entry : index["trend"]["metrics"]) {
            os << "<tr><td class=\"name\">" << detail::cell(entry["metric"]) << "</td>";
            for (const auto& v : entry["values"]) os << "<td>" << detail::cell(v) << "</td>";
            os << "<td>" << detail::arrow(entry["overall"].get<std::string>()) << "</td></tr>\n";
        }
        os << "</table>\n";
    }

    // architecture and findings summary
    os << "<h2>Architecture conformance and findings</h2>\n<table>\n"
          "<tr><th class=\"name\">Version</th><th>Component violations</th>"
          "<th>Class violations</th><th>Findings</th><th>Findings / kLoC</th>"
          "<th>Critical findings</th></tr>\n";
    for (const json& a : artifacts) {
        const json& arch = a["arch"];
        const json& f = a["findings"];
        os << "<tr><td class=\"name\">" << detail::cell(a["version"]) << "</td>";
        if (arch.is_null())
            os << "<td>&ndash;</td><td>&ndash;</td>";
        else
            os << "<td>" << detail::cell(arch["component_violations"]) << "</td><td>"
               << detail::cell(arch["class_violations"]) << "</td>";
        if (f.is_null())
            os << "<td>&ndash;</td><td>&ndash;</td><td>&ndash;</td>";
        else
            os << "<td>" << detail::cell(f["total"]) << "</td><td>"
               << detail::cell(f["density_per_kloc"]) << "</td><td>"
               << detail::cell(f["critical_count"]) << "</td>";
        os << "</tr>\n";
    }
    os << "</table>\n";

    // quality grades
    bool any_assessment = false;
    for (const json& a : artifacts)
        if (!a["assessment"].is_null()) any_assessment = true;
    if (any_assessment) {
        os << "<h2>Quality grades</h2>\n<table>\n<tr><th class=\"name\">Characteristic</th>";
        for (const json& a : artifacts) os << "<th>" << detail::cell(a["version"]) << "</th>";
        os << "</tr>\n";
        std::vector<std::string> ids;
        for (const json& a : artifacts)
            if (!a["assessment"].is_null())
                for (const auto& [id, node] : a["assessment"]["characteristics"].items()) {
                    (void)node;
                    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
                }
        for (const auto& id : ids) {
            os << "<tr><td class=\"name\">" << detail::html_escape(id) << "</td>";
            for (const json& a : artifacts) {
                if (a["assessment"].is_null() ||
                    !a["assessment"]["characteristics"].contains(id)) {
                    os << "<td>&ndash;</td>";
                } else {
                    os << "<td>" << detail::cell(a["assessment"]["characteristics"][id]["grade"])
                       << "</td>";
                }
            }
            os << "</tr>\n";
        }
        os << "</table>\n";
    }

    // gate verdicts
    bool any_gates = false;
    for (const json& a : artifacts)
        if (!a["gates"].empty()) any_gates = true;
    if (any_gates) {
        os << "<h2>Quality gates</h2>\n<table>\n<tr><th class=\"name\">Version</th>"
              "<th class=\"name\">Gate</th><th class=\"name\">Condition</th>"
              "<th>Observed</th><th class=\"name\">Verdict</th></tr>\n";
        for (const json& a : artifacts) {
            for (const auto& g : a["gates"]) {
                std::string verdict = g["verdict"].get<std::string>();
                os << "<tr><td class=\"name\">" << detail::cell(a["version"])
                   << "</td><td class=\"name\">" << detail::cell(g["id"])
                   << "</td><td class=\"name\">" << detail::cell(g["metric"]) << " "
                   << detail::cell(g["op"]) << " " << detail::cell(g["bound"]) << "</td><td>"
                   << detail::cell(g["observed"]) << "</td><td class=\"name " << verdict << "\">"
                   << verdict << "</td></tr>\n";
            }
        }
        os << "</table>\n";
    }

    os << "</body>\n</html>\n";
    return os.str();
}

}  // namespace quastat

#endif  // QUASTAT_HTML_REPORT_HPP
