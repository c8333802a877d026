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

#ifndef QUASTAT_FINDINGS_HPP
#define QUASTAT_FINDINGS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quastat/core.hpp"

namespace quastat {

// ---------------------------------------------------------------------------
// Rule catalog: bug / smell / pedantry classification
// ---------------------------------------------------------------------------

enum class RuleClass { Bug, Smell, Pedantry };

inline const char* to_string(RuleClass c) {
    switch (c) {
        case RuleClass::Bug: return "bug";
        case RuleClass::Smell: return "smell";
        case RuleClass::Pedantry: return "pedantry";
    }
    return "?";
}

inline RuleClass rule_class_from_string(const std::string& s) {
    std::string l = to_lower(s);
    if (l == "bug") return RuleClass::Bug;
    if (l == "smell") return RuleClass::Smell;
    if (l == "pedantry") return RuleClass::Pedantry;
    throw ConfigError("rule classification must be bug/smell/pedantry, got " + s);
}

struct RuleDescriptor {
    std::string tool;
    std::string rule_id;
    std::string category;  // tool category, e.g. "correctness"
    RuleClass classification = RuleClass::Smell;
    int default_severity = 3;  // 1..5
    std::string description;
};

struct RuleCatalog {
    std::map<std::pair<std::string, std::string>, RuleDescriptor> rules;
    // per-tool native severity -> normalized 1..5
    std::map<std::string, std::map<std::string, int>> severity_maps;

    const RuleDescriptor* find(const std::string& tool, const std::string& rule_id) const {
        auto it = rules.find({tool, rule_id});
        return it == rules.end() ? nullptr : &it->second;
    }
    void add(RuleDescriptor rule) {
        auto key = std::make_pair(rule.tool, rule.rule_id);
        if (rules.count(key)) throw ConfigError("duplicate rule " + rule.tool + "/" + rule.rule_id);
        rules.emplace(std::move(key), std::move(rule));
    }
};

inline RuleCatalog load_rule_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read rule catalog: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("rule catalog is not valid JSON: " + std::string(e.what()));
    }
    RuleCatalog catalog;
    for (const auto& r : doc.value("rules", nlohmann::json::array())) {
        RuleDescriptor rule;
        rule.tool = r.at("tool").get<std::string>();
        rule.rule_id = r.at("rule_id").get<std::string>();
        rule.category = r.value("category", "");
        rule.classification = rule_class_from_string(r.value("classification", "smell"));
        rule.default_severity = r.value("default_severity", 3);
        rule.description = r.value("description", "");
        if (rule.default_severity < 1 || rule.default_severity > 5)
            throw ConfigError("default_severity out of 1..5 for rule " + rule.rule_id);
        catalog.add(std::move(rule));
    }
    if (doc.contains("severity_maps"))
        for (const auto& [tool, m] : doc["severity_maps"].items())
            for (const auto& [native, norm] : m.items())
                catalog.severity_maps[tool][native] = norm.get<int>();
    return catalog;
}

// ---------------------------------------------------------------------------
// Findings
// ---------------------------------------------------------------------------

struct Finding {
    std::string tool;
    std::string rule_id;
    std::string file;
    int line = 0;
    std::string message;
    int severity = 3;        // 1..5
    double confidence = 1.0;  // 0..1

    /// Stable across runs and platforms; suppression lists key on this.
    std::string fingerprint() const {
        std::uint64_t h = fnv1a64(rule_id);
        h = fnv1a64(normalize_path(file), h);
        h = fnv1a64(message, h);
        return to_hex(h);
    }
};

struct ImportResult {
    std::vector<Finding> findings;
    Warnings warnings;  // skipped lines, unknown rules, range clamps
};

/// Reads the JSON-Lines interchange format, one finding object per line.
/// Malformed lines are skipped with a line-numbered warning; rules absent
/// from the catalog are classified Smell with a warning.
inline ImportResult import_findings(const std::filesystem::path& path,
                                    const RuleCatalog& catalog) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read findings file: " + path.string());
    ImportResult result;
    std::string line;
    int line_no = 0;
    std::set<std::pair<std::string, std::string>> warned_rules;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty()) continue;
        nlohmann::json obj = nlohmann::json::parse(trimmed, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            result.warnings.push_back(
                {path.string(), line_no, "malformed finding line, skipped"});
            continue;
        }
        if (!obj.contains("rule_id") || !obj.contains("tool") || !obj.contains("file")) {
            result.warnings.push_back(
                {path.string(), line_no, "finding missing tool/rule_id/file, skipped"});
            continue;
        }
        Finding f;
        try {
            f.tool = obj.at("tool").get<std::string>();
            f.rule_id = obj.at("rule_id").get<std::string>();
            f.file = obj.at("file").get<std::string>();
            f.line = obj.value("line", 0);
            f.message = obj.value("message", "");
            if (obj.contains("severity") && obj["severity"].is_string()) {
                // native severity string, mapped via the catalog's tables
                auto tool_map = catalog.severity_maps.find(f.tool);
                std::string native = obj["severity"].get<std::string>();
                if (tool_map != catalog.severity_maps.end() &&
                    tool_map->second.count(native)) {
                    f.severity = tool_map->second.at(native);
                } else {
                    const RuleDescriptor* rule = catalog.find(f.tool, f.rule_id);
                    f.severity = rule ? rule->default_severity : 3;
                }
            } else {
                f.severity = obj.value("severity", 3);
            }
            f.confidence = obj.value("confidence", 1.0);
        } catch (const nlohmann::json::exception&) {
            result.warnings.push_back(
                {path.string(), line_no, "finding has wrongly typed fields, skipped"});
            continue;
        }
        if (f.severity < 1 || f.severity > 5) {
            result.warnings.push_back({path.string(), line_no, "severity clamped into 1..5"});
            f.severity = std::clamp(f.severity, 1, 5);
        }
        if (f.confidence < 0.0 || f.confidence > 1.0) {
            result.warnings.push_back({path.string(), line_no, "confidence clamped into 0..1"});
            f.confidence = std::clamp(f.confidence, 0.0, 1.0);
        }
        if (!catalog.find(f.tool, f.rule_id) &&
            warned_rules.emplace(f.tool, f.rule_id).second) {
            result.warnings.push_back({path.string(), line_no,
                                       "rule " + f.tool + "/" + f.rule_id +
                                           " not in catalog, classified as smell"});
        }
        result.findings.push_back(std::move(f));
    }
    return result;
}

inline RuleClass classification_of(const Finding& f, const RuleCatalog& catalog) {
    const RuleDescriptor* rule = catalog.find(f.tool, f.rule_id);
    return rule ? rule->classification : RuleClass::Smell;  // unknown rules default to smell
}

// ---------------------------------------------------------------------------
// Rule selection and findings filtering
// ---------------------------------------------------------------------------

struct RuleSelector {
    enum class Mode { AllRules, SelectedCategories, SelectedRules };
    Mode mode = Mode::AllRules;
    std::vector<std::string> categories;  // matched case-insensitively
    std::vector<std::string> rules;       // "tool/rule_id" or bare rule_id
    std::vector<std::string> exclusions;  // rules dropped regardless of mode

    void validate() const {
        if (mode == Mode::SelectedCategories && categories.empty())
            throw ConfigError("selector mode selected_categories needs categories");
        if (mode == Mode::SelectedRules && rules.empty())
            throw ConfigError("selector mode selected_rules needs rules");
    }
};

struct FindingsFilter {
    int min_severity = 1;
    double min_confidence = 0.0;
    std::set<std::string> suppressed_fingerprints;
    std::vector<std::string> path_excludes;  // regexes
};

struct FilterStats {
    std::size_t input = 0;
    std::size_t selector_removed = 0;
    std::size_t severity_removed = 0;
    std::size_t confidence_removed = 0;
    std::size_t path_removed = 0;
    std::size_t suppressed_removed = 0;
    std::size_t output = 0;
};

/// Selector first, then severity, confidence, path and suppression filters in
/// that order. `stats` accounts for every removal stage.
inline std::vector<Finding> select_and_filter(const std::vector<Finding>& findings,
                                              const RuleCatalog& catalog,
                                              const RuleSelector& selector,
                                              const FindingsFilter& filter,
                                              FilterStats* stats = nullptr) {
    selector.validate();
    FilterStats local;
    local.input = findings.size();

    auto rule_matches = [](const std::string& pattern, const Finding& f) {
        if (pattern.find('/') != std::string::npos)
            return pattern == f.tool + "/" + f.rule_id;
        return pattern == f.rule_id;
    };

    std::vector<Finding> out;
    for (const Finding& f : findings) {
        bool selected = true;
        if (selector.mode == RuleSelector::Mode::SelectedCategories) {
            const RuleDescriptor* rule = catalog.find(f.tool, f.rule_id);
            std::string cat = to_lower(rule ? rule->category : "");
            selected = false;
            for (const auto& want : selector.categories)
                if (cat == to_lower(want)) {
                    selected = true;
                    break;
                }
        } else if (selector.mode == RuleSelector::Mode::SelectedRules) {
            selected = false;
            for (const auto& want : selector.rules)
                if (rule_matches(want, f)) {
                    selected = true;
                    break;
                }
        }
        for (const auto& excl : selector.exclusions)
            if (rule_matches(excl, f)) selected = false;
        if (!selected) {
            ++local.selector_removed;
            continue;
        }
        if (f.severity < filter.min_severity) {
            ++local.severity_removed;
            continue;
        }
        if (f.confidence < filter.min_confidence) {
            ++local.confidence_removed;
            continue;
        }
        bool path_hit = false;
        for (const auto& pat : filter.path_excludes) {
            std::regex re(pat);
            if (std::regex_search(normalize_path(f.file), re)) {
                path_hit = true;
                break;
            }
        }
        if (path_hit) {
            ++local.path_removed;
            continue;
        }
        if (filter.suppressed_fingerprints.count(f.fingerprint())) {
            ++local.suppressed_removed;
            continue;
        }
        out.push_back(f);
    }
    local.output = out.size();
    if (stats) *stats = local;
    return out;
}

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

struct FindingsReport {
    std::size_t total = 0;
    std::map<std::string, std::size_t> per_rule;            // "tool/rule_id"
    std::map<std::string, std::size_t> per_classification;  // bug/smell/pedantry
    std::optional<double> density_per_kloc;  // null when corpus_loc == 0
    std::size_t critical_count = 0;
    std::size_t corpus_loc = 0;
};

/// Density is findings per 1000 LoC, two decimals. Criticality is a human
/// judgment supplied as a fingerprint set, never inferred.
inline FindingsReport summarize(const std::vector<Finding>& findings, const RuleCatalog& catalog,
                                std::size_t corpus_loc,
                                const std::set<std::string>& criticality_marks = {},
                                Warnings* warnings = nullptr) {
    FindingsReport report;
    report.total = findings.size();
    report.corpus_loc = corpus_loc;
    report.per_classification = {{"bug", 0}, {"smell", 0}, {"pedantry", 0}};
    for (const Finding& f : findings) {
        ++report.per_rule[f.tool + "/" + f.rule_id];
        ++report.per_classification[to_string(classification_of(f, catalog))];
        if (criticality_marks.count(f.fingerprint())) ++report.critical_count;
    }
    if (corpus_loc == 0) {
        if (warnings)
            warnings->push_back({"", 0, "corpus LoC is 0, findings density undefined"});
    } else {
        report.density_per_kloc = round2(1000.0 * static_cast<double>(report.total) /
                                         static_cast<double>(corpus_loc));
    }
    return report;
}

/// Reads one fingerprint per line; '#' starts a comment.
inline std::set<std::string> load_fingerprint_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read fingerprint list: " + path.string());
    std::set<std::string> marks;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (!line.empty()) marks.insert(line);
    }
    return marks;
}

}  // namespace quastat

#endif  // QUASTAT_FINDINGS_HPP
