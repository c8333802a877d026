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
//
// Report serialization. Keys come out sorted and numbers are rounded to the
// documented precision (percentages 1 decimal, densities 2, grades 1), so
// identical inputs produce byte-identical files.

#ifndef QUASTAT_JSON_IO_HPP
#define QUASTAT_JSON_IO_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quastat/architecture.hpp"
#include "quastat/clone_detection.hpp"
#include "quastat/code_metrics.hpp"
#include "quastat/core.hpp"
#include "quastat/findings.hpp"
#include "quastat/quality_model.hpp"
#include "quastat/ranking.hpp"
#include "quastat/source_model.hpp"

namespace quastat {

using json = nlohmann::json;

inline json warnings_json(const Warnings& warnings) {
    json arr = json::array();
    for (const auto& w : warnings) {
        json o;
        o["file"] = w.file;
        o["line"] = w.line;
        o["message"] = w.message;
        arr.push_back(o);
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Clone reports
// ---------------------------------------------------------------------------

inline json clone_report_json(const CloneReport& report,
                              const std::vector<std::string>& file_paths) {
    json doc;
    doc["kind"] = report.gapped ? "gapped_clone_report" : "clone_report";
    doc["analysed_units"] = report.analysed_units;
    doc["cloned_units"] = report.cloned_units;
    doc["unit_coverage"] = round1(report.unit_coverage);
    doc["blow_up"] = round1(report.blow_up);
    doc["longest_clone"] = report.longest_clone;
    doc["most_instances"] = report.most_instances;
    json classes = json::array();
    for (const CloneClass& c : report.classes) {
        json jc;
        jc["id"] = c.id;
        jc["length_units"] = c.length_units;
        jc["fingerprint"] = to_hex(c.fingerprint);
        json instances = json::array();
        for (const CloneInstance& inst : c.instances) {
            json ji;
            ji["file"] = file_paths[static_cast<std::size_t>(inst.file_index)];
            ji["start_line"] = inst.start_line;
            ji["end_line"] = inst.end_line;
            ji["begin_unit"] = inst.begin_unit;
            ji["end_unit"] = inst.end_unit;
            ji["length_units"] = inst.length_units();
            if (report.gapped) ji["gap_units"] = inst.gap_positions;
            instances.push_back(ji);
        }
        jc["instances"] = instances;
        classes.push_back(jc);
    }
    doc["classes"] = classes;
    return doc;
}

inline std::vector<std::string> file_paths_of(const CorpusUnits& corpus) {
    std::vector<std::string> paths;
    paths.reserve(corpus.files.size());
    for (const auto& f : corpus.files) paths.push_back(f.path);
    return paths;
}

inline json trend_json(const TrendTable& trend) {
    json doc;
    doc["versions"] = trend.versions;
    json entries = json::array();
    for (const TrendEntry& e : trend.entries) {
        json je;
        je["metric"] = e.metric;
        json values = json::array();
        for (double v : e.values) values.push_back(round2(v));
        je["values"] = values;
        json deltas = json::array();
        for (double d : e.deltas) deltas.push_back(round2(d));
        je["deltas"] = deltas;
        json dirs = json::array();
        for (TrendDirection d : e.step_dir)
            dirs.push_back(d == TrendDirection::Increasing   ? "up"
                           : d == TrendDirection::Decreasing ? "down"
                                                             : "flat");
        je["directions"] = dirs;
        je["overall"] = e.overall == TrendDirection::Increasing   ? "up"
                        : e.overall == TrendDirection::Decreasing ? "down"
                                                                  : "flat";
        entries.push_back(je);
    }
    doc["metrics"] = entries;
    return doc;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

inline json metrics_profile_json(const MetricsProfile& profile,
                                 const std::vector<ThresholdViolation>& violations = {}) {
    json doc;
    doc["kind"] = "metrics_profile";
    doc["loc"] = profile.loc;
    doc["sloc"] = profile.sloc;
    doc["comment_lines"] = profile.comment_lines;
    doc["comment_ratio"] = round3(profile.comment_ratio);
    doc["n_files"] = profile.n_files;
    doc["n_types"] = profile.n_types;
    doc["n_methods"] = profile.n_methods;
    doc["n_statements"] = profile.n_statements;
    doc["max_cyclomatic"] = profile.max_cyclomatic;
    doc["max_nested_depth"] = profile.max_nested_depth;
    json methods = json::array();
    for (const MethodMetrics& m : profile.per_method) {
        json jm;
        jm["file"] = m.file;
        jm["name"] = m.name;
        jm["line"] = m.line;
        jm["cc"] = m.cyclomatic;
        jm["depth"] = m.max_depth;
        jm["statements"] = m.statements;
        methods.push_back(jm);
    }
    doc["per_method"] = methods;
    json viols = json::array();
    for (const ThresholdViolation& v : violations) {
        json jv;
        jv["metric"] = v.metric;
        jv["subject"] = v.subject;
        jv["observed"] = round2(v.observed);
        jv["bound"] = round2(v.bound);
        viols.push_back(jv);
    }
    doc["threshold_violations"] = viols;
    return doc;
}

// ---------------------------------------------------------------------------
// Architecture
// ---------------------------------------------------------------------------

inline json conformance_report_json(const ConformanceReport& report,
                                    const ExtractionResult& extraction) {
    json doc;
    doc["kind"] = "conformance_report";
    doc["entities"] = extraction.entities.size();
    doc["facts"] = extraction.facts.size();
    doc["unresolved_references"] = extraction.unresolved;
    doc["class_violations"] = report.class_relationships;
    doc["component_violations"] = report.component_relationships;
    doc["tolerated"] = report.tolerated;
    doc["allowed"] = report.allowed;
    doc["intra_component"] = report.intra_component;
    doc["coverage_gaps"] = report.coverage_gaps;
    doc["model_errors"] = report.model_errors;
    json pairs = json::array();
    for (const auto& [from, to] : report.component_pairs) {
        json jp;
        jp["from"] = from;
        jp["to"] = to;
        pairs.push_back(jp);
    }
    doc["component_pairs"] = pairs;
    json viols = json::array();
    for (const Violation& v : report.violations) {
        json jv;
        jv["file"] = v.fact.file;
        jv["line"] = v.fact.line;
        jv["from"] = v.fact.from;
        jv["to"] = v.fact.to;
        jv["dependency"] = to_string(v.fact.kind);
        jv["from_component"] = v.from_component;
        jv["to_component"] = v.to_component;
        jv["taxonomy"] = to_string(v.taxonomy);
        viols.push_back(jv);
    }
    doc["violations"] = viols;
    return doc;
}

inline ReflexionModel load_reflexion_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read reflexion model: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("reflexion model is not valid JSON: " + std::string(e.what()));
    }
    ReflexionModel model;
    for (const auto& c : doc.value("components", json::array())) {
        Component comp;
        comp.name = c.at("name").get<std::string>();
        comp.parent = c.value("parent", "");
        for (const auto& p : c.value("map", json::array()))
            comp.map.push_back(p.get<std::string>());
        comp.library = c.value("library", false);
        model.components.push_back(std::move(comp));
    }
    for (const auto& r : doc.value("rules", json::array())) {
        PolicyRule rule;
        rule.from = r.at("from").get<std::string>();
        rule.to = r.at("to").get<std::string>();
        rule.effect = rule_effect_from_string(r.value("effect", "allow"));
        model.rules.push_back(std::move(rule));
    }
    for (const auto& l : doc.value("layers", json::array()))
        model.layers.push_back(l.get<std::string>());
    for (const auto& e : doc.value("exclude", json::array()))
        model.exclude.push_back(e.get<std::string>());
    model.validate();
    return model;
}

// ---------------------------------------------------------------------------
// Findings
// ---------------------------------------------------------------------------

inline json findings_report_json(const FindingsReport& report, const FilterStats& stats) {
    json doc;
    doc["kind"] = "findings_report";
    doc["total"] = report.total;
    doc["per_rule"] = report.per_rule;
    doc["per_classification"] = report.per_classification;
    if (report.density_per_kloc.has_value())
        doc["density_per_kloc"] = round2(*report.density_per_kloc);
    else
        doc["density_per_kloc"] = nullptr;
    doc["critical_count"] = report.critical_count;
    doc["corpus_loc"] = report.corpus_loc;
    json js;
    js["input"] = stats.input;
    js["selector_removed"] = stats.selector_removed;
    js["severity_removed"] = stats.severity_removed;
    js["confidence_removed"] = stats.confidence_removed;
    js["path_removed"] = stats.path_removed;
    js["suppressed_removed"] = stats.suppressed_removed;
    js["output"] = stats.output;
    doc["filter_stages"] = js;
    return doc;
}

// ---------------------------------------------------------------------------
// Assessment
// ---------------------------------------------------------------------------

inline json interval_json(const Interval& iv, int decimals) {
    if (iv.is_point()) return round_to(iv.lo, decimals);
    json arr = json::array();
    arr.push_back(round_to(iv.lo, decimals));
    arr.push_back(round_to(iv.hi, decimals));
    return arr;
}

inline json assessment_json(const Assessment& assessment) {
    json doc;
    doc["kind"] = "assessment";
    doc["root"] = assessment.root;
    json measures;
    for (const auto& [id, v] : assessment.per_measure) {
        if (v.has_value())
            measures[id] = round_to(*v, 4);
        else
            measures[id] = nullptr;
    }
    doc["measures"] = measures;
    json factors;
    for (const auto& [id, node] : assessment.per_factor) {
        json jf;
        jf["utility"] = interval_json(node.utility, 3);
        jf["grade"] = interval_json(node.grade, 1);
        jf["missing"] = node.all_missing;
        factors[id] = jf;
    }
    doc["factors"] = factors;
    json chars;
    for (const auto& [id, node] : assessment.per_characteristic) {
        json jc;
        jc["utility"] = interval_json(node.utility, 3);
        jc["grade"] = interval_json(node.grade, 1);
        jc["missing"] = node.all_missing;
        chars[id] = jc;
    }
    doc["characteristics"] = chars;
    doc["overall_grade"] = interval_json(assessment.overall_grade, 1);
    return doc;
}

// ---------------------------------------------------------------------------
// Rank tables
// ---------------------------------------------------------------------------

inline json rank_table_json(const RankTable& table) {
    json doc;
    doc["criterion"] = table.criterion;
    json entries = json::array();
    for (const auto& e : table.entries) {
        json je;
        je["rank"] = e.rank;
        je["systems"] = e.systems;
        je["value"] = round2(e.value);
        entries.push_back(je);
    }
    doc["entries"] = entries;
    doc["excluded"] = table.excluded;
    return doc;
}

inline json agreement_json(const AgreementReport& report) {
    json doc;
    doc["shared_systems"] = report.shared_systems;
    doc["concordant"] = report.concordant;
    doc["discordant"] = report.discordant;
    doc["tied"] = report.tied;
    json shifts = json::array();
    for (const auto& s : report.strong_shifts) {
        json js;
        js["system"] = s.system;
        js["rank_a"] = s.rank_a;
        js["rank_b"] = s.rank_b;
        shifts.push_back(js);
    }
    doc["strong_shifts"] = shifts;
    return doc;
}

// ---------------------------------------------------------------------------
// Corpus manifest
// ---------------------------------------------------------------------------

inline json corpus_manifest_json(const Corpus& corpus, const CorpusUnits& units) {
    json doc;
    doc["kind"] = "corpus_manifest";
    doc["language"] = to_string(corpus.language);
    json files = json::array();
    for (std::size_t i = 0; i < corpus.files.size(); ++i) {
        json jf;
        jf["path"] = corpus.files[i].path;
        jf["lines"] = corpus.files[i].line_count();
        jf["units"] = units.files[i].units.size();
        jf["methods"] = units.files[i].methods.size();
        files.push_back(jf);
    }
    doc["files"] = files;
    doc["skipped"] = corpus.skipped;
    doc["total_loc"] = corpus.total_loc();
    doc["total_units"] = units.total_units();
    return doc;
}

// ---------------------------------------------------------------------------
// Report readers (for assessing from previously emitted files)
// ---------------------------------------------------------------------------

inline CloneReport clone_report_from_json(const json& doc) {
    CloneReport r;
    r.gapped = doc.value("kind", "") == "gapped_clone_report";
    r.analysed_units = doc.value("analysed_units", 0u);
    r.cloned_units = doc.value("cloned_units", 0u);
    r.unit_coverage = doc.value("unit_coverage", 0.0);
    r.blow_up = doc.value("blow_up", 100.0);
    r.longest_clone = doc.value("longest_clone", 0);
    r.most_instances = doc.value("most_instances", 0);
    return r;
}

inline FindingsReport findings_report_from_json(const json& doc) {
    FindingsReport r;
    r.total = doc.value("total", 0u);
    if (doc.contains("per_rule"))
        for (const auto& [k, v] : doc["per_rule"].items()) r.per_rule[k] = v.get<std::size_t>();
    r.per_classification = {{"bug", 0}, {"smell", 0}, {"pedantry", 0}};
    if (doc.contains("per_classification"))
        for (const auto& [k, v] : doc["per_classification"].items())
            r.per_classification[k] = v.get<std::size_t>();
    if (doc.contains("density_per_kloc") && !doc["density_per_kloc"].is_null())
        r.density_per_kloc = doc["density_per_kloc"].get<double>();
    r.critical_count = doc.value("critical_count", 0u);
    r.corpus_loc = doc.value("corpus_loc", 0u);
    return r;
}

inline MetricsProfile metrics_profile_from_json(const json& doc) {
    MetricsProfile p;
    p.loc = doc.value("loc", 0u);
    p.sloc = doc.value("sloc", 0u);
    p.comment_lines = doc.value("comment_lines", 0u);
    p.comment_ratio = doc.value("comment_ratio", 0.0);
    p.n_files = doc.value("n_files", 0u);
    p.n_types = doc.value("n_types", 0u);
    p.n_methods = doc.value("n_methods", 0u);
    p.n_statements = doc.value("n_statements", 0u);
    p.max_cyclomatic = doc.value("max_cyclomatic", 0);
    p.max_nested_depth = doc.value("max_nested_depth", 0);
    return p;
}

inline ConformanceReport conformance_report_from_json(const json& doc) {
    ConformanceReport r;
    r.class_relationships = doc.value("class_violations", 0u);
    r.component_relationships = doc.value("component_violations", 0u);
    if (doc.contains("violations"))
        for (const auto& v : doc["violations"]) {
            Violation viol;
            viol.fact.file = v.value("file", "");
            viol.fact.line = v.value("line", 0);
            viol.fact.from = v.value("from", "");
            viol.fact.to = v.value("to", "");
            viol.from_component = v.value("from_component", "");
            viol.to_component = v.value("to_component", "");
            r.violations.push_back(std::move(viol));
        }
    r.tolerated = doc.value("tolerated", 0u);
    return r;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + " is not valid JSON: " + std::string(e.what()));
    }
    return doc;
}

}  // namespace quastat

#endif  // QUASTAT_JSON_IO_HPP
