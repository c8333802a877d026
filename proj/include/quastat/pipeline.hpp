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

#ifndef QUASTAT_PIPELINE_HPP
#define QUASTAT_PIPELINE_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "quastat/html_report.hpp"
#include "quastat/json_io.hpp"

namespace quastat {

// ---------------------------------------------------------------------------
// Quality gates
// ---------------------------------------------------------------------------

enum class GateAction { Fail, Warn };
enum class GateVerdict { Pass, Warn, Fail, Error };

inline const char* to_string(GateVerdict v) {
    switch (v) {
        case GateVerdict::Pass: return "pass";
        case GateVerdict::Warn: return "warn";
        case GateVerdict::Fail: return "fail";
        case GateVerdict::Error: return "error";
    }
    return "?";
}

/// A gate passes when `observed op bound` holds, e.g.
/// {"metric": "clones.unit_coverage", "op": "lt", "bound": 25.0}.
/// A scope pattern restricts clone coverage gates to matching paths.
struct QualityGate {
    std::string id;
    std::string metric;  // dotted path into the run artifact
    std::string op;      // lt, le, gt, ge, eq, ne
    double bound = 0.0;
    std::string scope;   // optional path regex
    GateAction action = GateAction::Fail;

    bool holds(double observed) const {
        if (op == "lt") return observed < bound;
        if (op == "le") return observed <= bound;
        if (op == "gt") return observed > bound;
        if (op == "ge") return observed >= bound;
        if (op == "eq") return observed == bound;
        if (op == "ne") return observed != bound;
        throw ConfigError("gate op must be lt/le/gt/ge/eq/ne, got " + op);
    }
};

struct GateResult {
    QualityGate gate;
    std::optional<double> observed;
    GateVerdict verdict = GateVerdict::Error;
    std::string detail;
};

// ---------------------------------------------------------------------------
// Project configuration
// ---------------------------------------------------------------------------

struct ProjectConfig {
    std::string name;
    Language language = Language::JavaLike;
    struct Version {
        std::string label;
        std::filesystem::path root;
    };
    std::vector<Version> versions;
    ExclusionFilter exclusion;
    CloneConfig clones;
    bool run_gapped = false;
    std::vector<Threshold> thresholds;
    std::optional<std::filesystem::path> arch_model;
    std::optional<std::filesystem::path> rule_catalog;
    std::map<std::string, std::vector<std::filesystem::path>> findings_files;  // per label
    std::optional<std::filesystem::path> quality_model;
    std::map<std::string, double> manual_measures;
    std::optional<std::filesystem::path> critical_findings;
    std::optional<std::filesystem::path> suppressions;
    RuleSelector selector;
    FindingsFilter findings_filter;
    std::vector<QualityGate> gates;

    void validate() const {
        if (versions.empty()) throw ConfigError("project config needs at least one version");
        std::set<std::string> labels;
        for (const auto& v : versions)
            if (!labels.insert(v.label).second)
                throw ConfigError("duplicate version label: " + v.label);
    }
};

inline ProjectConfig load_project_config(const std::filesystem::path& path) {
    json doc = read_json_file(path);
    std::filesystem::path base = path.parent_path();
    auto rel = [&](const std::string& p) { return base / p; };

    ProjectConfig config;
    config.name = doc.value("name", "project");
    config.language = language_from_string(doc.value("language", "java"));
    for (const auto& v : doc.value("versions", json::array()))
        config.versions.push_back(
            {v.at("label").get<std::string>(), rel(v.at("root").get<std::string>())});
    for (const auto& e : doc.value("exclude", json::array()))
        config.exclusion.patterns.push_back(e.get<std::string>());

    if (doc.contains("clones")) {
        const auto& c = doc["clones"];
        config.clones.min_length = c.value("min_length", 10);
        config.run_gapped = c.value("gapped", false);
        config.clones.max_gaps_per_clone = c.value("max_gaps", 1);
        config.clones.max_gap_ratio = c.value("max_gap_ratio", 0.30);
        config.clones.validate();
    }
    for (const auto& t : doc.value("thresholds", json::array()))
        config.thresholds.push_back(Threshold::parse(t.get<std::string>()));
    if (doc.contains("arch_model")) config.arch_model = rel(doc["arch_model"].get<std::string>());
    if (doc.contains("rule_catalog"))
        config.rule_catalog = rel(doc["rule_catalog"].get<std::string>());
    if (doc.contains("findings_files"))
        for (const auto& [label, files] : doc["findings_files"].items())
            for (const auto& f : files)
                config.findings_files[label].push_back(rel(f.get<std::string>()));
    if (doc.contains("quality_model"))
        config.quality_model = rel(doc["quality_model"].get<std::string>());
    if (doc.contains("manual_measures"))
        for (const auto& [id, v] : doc["manual_measures"].items())
            config.manual_measures[id] = v.get<double>();
    if (doc.contains("critical_findings"))
        config.critical_findings = rel(doc["critical_findings"].get<std::string>());
    if (doc.contains("suppressions"))
        config.suppressions = rel(doc["suppressions"].get<std::string>());
    if (doc.contains("selector")) {
        const auto& s = doc["selector"];
        std::string mode = to_lower(s.value("mode", "all_rules"));
        if (mode == "all_rules") config.selector.mode = RuleSelector::Mode::AllRules;
        else if (mode == "selected_categories")
            config.selector.mode = RuleSelector::Mode::SelectedCategories;
        else if (mode == "selected_rules")
            config.selector.mode = RuleSelector::Mode::SelectedRules;
        else throw ConfigError("unknown selector mode: " + mode);
        for (const auto& c : s.value("categories", json::array()))
            config.selector.categories.push_back(c.get<std::string>());
        for (const auto& r : s.value("rules", json::array()))
            config.selector.rules.push_back(r.get<std::string>());
        for (const auto& r : s.value("exclusions", json::array()))
            config.selector.exclusions.push_back(r.get<std::string>());
    }
    if (doc.contains("findings_filter")) {
        const auto& f = doc["findings_filter"];
        config.findings_filter.min_severity = f.value("min_severity", 1);
        config.findings_filter.min_confidence = f.value("min_confidence", 0.0);
        for (const auto& p : f.value("path_excludes", json::array()))
            config.findings_filter.path_excludes.push_back(p.get<std::string>());
    }
    for (const auto& g : doc.value("gates", json::array())) {
        QualityGate gate;
        gate.id = g.at("id").get<std::string>();
        gate.metric = g.at("metric").get<std::string>();
        gate.op = to_lower(g.at("op").get<std::string>());
        gate.bound = g.at("bound").get<double>();
        gate.scope = g.value("scope", "");
        gate.action = to_lower(g.value("action", "fail")) == "warn" ? GateAction::Warn
                                                                    : GateAction::Fail;
        config.gates.push_back(std::move(gate));
    }
    config.validate();
    return config;
}

// ---------------------------------------------------------------------------
// Run artifacts
// ---------------------------------------------------------------------------

struct RunArtifact {
    std::string version;
    std::vector<std::string> skipped;  // analyses not configured
    std::vector<std::string> errors;   // fatal module errors for this version
    Warnings warnings;                 // non-fatal oddities worth surfacing

    std::optional<CloneReport> clones;
    std::optional<CloneReport> clones_gapped;
    std::optional<MetricsProfile> metrics;
    std::vector<ThresholdViolation> threshold_violations;
    std::optional<ConformanceReport> arch;
    std::optional<ExtractionResult> extraction;
    std::optional<FindingsReport> findings;
    FilterStats filter_stats;
    std::optional<Assessment> assessment;
    std::vector<GateResult> gates;

    // per-file unit totals, kept for scoped gate evaluation
    struct FileStat {
        std::string path;
        std::size_t units = 0;
        std::size_t method_units = 0;
    };
    std::vector<FileStat> file_stats;
};

namespace detail {

inline std::optional<double> scoped_clone_coverage(const CloneReport& report,
                                                   const std::vector<RunArtifact::FileStat>& files,
                                                   const std::string& scope, bool gapped) {
    std::regex re(scope);
    std::vector<bool> in_scope(files.size());
    std::size_t analysed = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        in_scope[i] = std::regex_search(files[i].path, re);
        if (in_scope[i]) analysed += gapped ? files[i].method_units : files[i].units;
    }
    if (analysed == 0) return std::nullopt;
    std::map<int, std::set<int>> covered;
    for (const CloneClass& c : report.classes)
        for (const CloneInstance& inst : c.instances) {
            if (!in_scope[static_cast<std::size_t>(inst.file_index)]) continue;
            std::set<int> gaps(inst.gap_positions.begin(), inst.gap_positions.end());
            for (int u = inst.begin_unit; u < inst.end_unit; ++u)
                if (gaps.count(u) == 0) covered[inst.file_index].insert(u);
        }
    std::size_t cloned = 0;
    for (const auto& [f, units] : covered) cloned += units.size();
    return 100.0 * static_cast<double>(cloned) / static_cast<double>(analysed);
}

}  // namespace detail

/// Resolves a dotted metric path ("clones.unit_coverage", "findings.density",
/// "assessment.grade.maintainability") against a run artifact. Grade intervals
/// resolve to their worst end.
inline std::optional<double> resolve_metric(const RunArtifact& artifact, const std::string& path,
                                            const std::string& scope = "") {
    auto parts = split(path, '.');
    if (parts.size() < 2) return std::nullopt;
    const std::string& head = parts[0];
    const std::string& field = parts[1];

    if (head == "clones" || head == "clones_gapped") {
        const auto& report = head == "clones" ? artifact.clones : artifact.clones_gapped;
        if (!report.has_value()) return std::nullopt;
        if (field == "unit_coverage") {
            if (!scope.empty())
                return detail::scoped_clone_coverage(*report, artifact.file_stats, scope,
                                                     report->gapped);
            return report->unit_coverage;
        }
        if (field == "blow_up") return report->blow_up;
        if (field == "longest_clone") return report->longest_clone;
        if (field == "most_instances") return report->most_instances;
        if (field == "cloned_units") return static_cast<double>(report->cloned_units);
        if (field == "analysed_units") return static_cast<double>(report->analysed_units);
        return std::nullopt;
    }
    if (head == "metrics") {
        if (!artifact.metrics.has_value()) return std::nullopt;
        const MetricsProfile& p = *artifact.metrics;
        if (field == "loc") return static_cast<double>(p.loc);
        if (field == "sloc") return static_cast<double>(p.sloc);
        if (field == "comment_ratio") return p.comment_ratio;
        if (field == "n_types") return static_cast<double>(p.n_types);
        if (field == "n_methods") return static_cast<double>(p.n_methods);
        if (field == "n_statements") return static_cast<double>(p.n_statements);
        if (field == "max_cyclomatic") return p.max_cyclomatic;
        if (field == "max_nested_depth") return p.max_nested_depth;
        return std::nullopt;
    }
    if (head == "findings") {
        if (!artifact.findings.has_value()) return std::nullopt;
        const FindingsReport& r = *artifact.findings;
        if (field == "total") return static_cast<double>(r.total);
        if (field == "density" || field == "density_per_kloc") {
            if (!r.density_per_kloc.has_value()) return std::nullopt;
            return *r.density_per_kloc;
        }
        if (field == "critical" || field == "critical_count")
            return static_cast<double>(r.critical_count);
        return std::nullopt;
    }
    if (head == "arch") {
        if (!artifact.arch.has_value()) return std::nullopt;
        const ConformanceReport& r = *artifact.arch;
        if (field == "class_violations") return static_cast<double>(r.class_relationships);
        if (field == "component_violations")
            return static_cast<double>(r.component_relationships);
        if (field == "violations") return static_cast<double>(r.violations.size());
        if (field == "tolerated") return static_cast<double>(r.tolerated);
        return std::nullopt;
    }
    if (head == "assessment") {
        if (!artifact.assessment.has_value()) return std::nullopt;
        const Assessment& a = *artifact.assessment;
        if (field == "overall_grade") return a.overall_grade.hi;
        if (field == "grade" && parts.size() >= 3) {
            auto it = a.per_characteristic.find(parts[2]);
            if (it == a.per_characteristic.end()) return std::nullopt;
            return it->second.grade.hi;  // worst case of the interval
        }
        return std::nullopt;
    }
    return std::nullopt;
}

inline std::vector<GateResult> evaluate_gates(const RunArtifact& artifact,
                                              const std::vector<QualityGate>& gates) {
    std::vector<GateResult> results;
    for (const QualityGate& gate : gates) {
        GateResult r;
        r.gate = gate;
        r.observed = resolve_metric(artifact, gate.metric, gate.scope);
        if (!r.observed.has_value()) {
            r.verdict = GateVerdict::Error;
            r.detail = "metric path not resolvable: " + gate.metric;
        } else if (gate.holds(*r.observed)) {
            r.verdict = GateVerdict::Pass;
        } else {
            r.verdict = gate.action == GateAction::Warn ? GateVerdict::Warn : GateVerdict::Fail;
        }
        results.push_back(std::move(r));
    }
    return results;
}

/// 0 = all pass, 1 = gate warnings only, 2 = gate failure, 3 = analysis error.
inline int exit_code_for(const std::vector<RunArtifact>& artifacts) {
    int worst = 0;
    for (const RunArtifact& a : artifacts) {
        if (!a.errors.empty()) worst = std::max(worst, 3);
        for (const GateResult& g : a.gates) {
            if (g.verdict == GateVerdict::Error) worst = std::max(worst, 3);
            if (g.verdict == GateVerdict::Fail) worst = std::max(worst, 2);
            if (g.verdict == GateVerdict::Warn) worst = std::max(worst, 1);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

/// Per version: corpus -> metrics -> clones (+gapped) -> arch -> findings ->
/// assessment -> gates. Partial configurations run partially and record what
/// was skipped; a fatal error aborts that version and continues with others.
inline std::vector<RunArtifact> run_pipeline(const ProjectConfig& config) {
    config.validate();
    std::vector<RunArtifact> artifacts;

    std::optional<RuleCatalog> catalog;
    if (config.rule_catalog.has_value()) catalog = load_rule_catalog(*config.rule_catalog);
    std::optional<ReflexionModel> arch_model;
    if (config.arch_model.has_value()) arch_model = load_reflexion_model(*config.arch_model);
    std::optional<QualityModelSpec> quality_model;
    if (config.quality_model.has_value()) quality_model = load_model(*config.quality_model);
    std::set<std::string> critical_marks;
    if (config.critical_findings.has_value())
        critical_marks = load_fingerprint_list(*config.critical_findings);
    FindingsFilter filter = config.findings_filter;
    if (config.suppressions.has_value())
        filter.suppressed_fingerprints = load_fingerprint_list(*config.suppressions);

    for (const auto& version : config.versions) {
        RunArtifact artifact;
        artifact.version = version.label;
        try {
            Corpus corpus = load_corpus(version.root, config.exclusion, config.language);
            CorpusUnits units = build_units(corpus);
            for (std::size_t i = 0; i < units.files.size(); ++i) {
                RunArtifact::FileStat fs;
                fs.path = units.files[i].path;
                fs.units = units.files[i].units.size();
                for (const auto& m : units.files[i].methods)
                    fs.method_units += static_cast<std::size_t>(m.end_unit - m.begin_unit);
                artifact.file_stats.push_back(std::move(fs));
            }

            artifact.metrics = compute_profile(corpus);
            if (!config.thresholds.empty())
                artifact.threshold_violations =
                    check_thresholds(*artifact.metrics, config.thresholds);

            CloneConfig conventional = config.clones;
            conventional.gapped = false;
            artifact.clones = detect_clones(units, conventional);
            if (config.run_gapped) {
                CloneConfig gapped = config.clones;
                gapped.gapped = true;
                artifact.clones_gapped = detect_gapped_clones(units, gapped);
            } else {
                artifact.skipped.push_back("clones_gapped");
            }

            if (arch_model.has_value()) {
                ExtractionResult extraction = extract_dependencies(corpus);
                EntityMapping mapping = map_entities(*arch_model, extraction.entities);
                ConformanceReport conformance =
                    check_conformance(*arch_model, extraction.facts, mapping);
                classify_violations(conformance, *arch_model, extraction.facts, mapping);
                artifact.extraction = std::move(extraction);
                artifact.arch = std::move(conformance);
            } else {
                artifact.skipped.push_back("arch");
            }

            auto files_it = config.findings_files.find(version.label);
            if (catalog.has_value() && files_it != config.findings_files.end()) {
                std::vector<Finding> findings;
                for (const auto& path : files_it->second) {
                    ImportResult imported = import_findings(path, *catalog);
                    for (auto& w : imported.warnings) artifact.warnings.push_back(std::move(w));
                    findings.insert(findings.end(), imported.findings.begin(),
                                    imported.findings.end());
                }
                // tools may report generated or otherwise absent files; flag them
                std::set<std::string> known_paths;
                for (const auto& f : corpus.files) known_paths.insert(f.path);
                std::size_t outside = 0;
                for (const Finding& f : findings)
                    if (known_paths.count(normalize_path(f.file)) == 0) ++outside;
                if (outside > 0)
                    artifact.warnings.push_back(
                        {"", 0,
                         std::to_string(outside) + " finding(s) reference files outside the corpus"});
                std::vector<Finding> kept = select_and_filter(findings, *catalog, config.selector,
                                                              filter, &artifact.filter_stats);
                artifact.findings =
                    summarize(kept, *catalog, corpus.total_loc(), critical_marks);
            } else {
                artifact.skipped.push_back("findings");
            }

            if (quality_model.has_value()) {
                MeasurementInputs inputs;
                inputs.clones = artifact.clones.has_value() ? &*artifact.clones : nullptr;
                inputs.findings = artifact.findings.has_value() ? &*artifact.findings : nullptr;
                inputs.metrics = artifact.metrics.has_value() ? &*artifact.metrics : nullptr;
                inputs.arch = artifact.arch.has_value() ? &*artifact.arch : nullptr;
                inputs.manual = config.manual_measures;
                MeasurementSet measurements = collect_measurements(*quality_model, inputs);
                artifact.assessment = evaluate(*quality_model, measurements);
            } else {
                artifact.skipped.push_back("assessment");
            }

            artifact.gates = evaluate_gates(artifact, config.gates);
        } catch (const Error& e) {
            artifact.errors.push_back(e.what());
        }
        artifacts.push_back(std::move(artifact));
    }
    return artifacts;
}

// ---------------------------------------------------------------------------
// Artifact serialization
// ---------------------------------------------------------------------------

inline json gate_results_json(const std::vector<GateResult>& results) {
    json arr = json::array();
    for (const GateResult& r : results) {
        json jg;
        jg["id"] = r.gate.id;
        jg["metric"] = r.gate.metric;
        jg["op"] = r.gate.op;
        jg["bound"] = round2(r.gate.bound);
        jg["scope"] = r.gate.scope;
        jg["action"] = r.gate.action == GateAction::Warn ? "warn" : "fail";
        if (r.observed.has_value())
            jg["observed"] = round2(*r.observed);
        else
            jg["observed"] = nullptr;
        jg["verdict"] = to_string(r.verdict);
        jg["detail"] = r.detail;
        arr.push_back(jg);
    }
    return arr;
}

inline json run_artifact_json(const RunArtifact& artifact, const ProjectConfig& config) {
    json doc;
    doc["kind"] = "run_artifact";
    doc["project"] = config.name;
    doc["version"] = artifact.version;
    doc["language"] = to_string(config.language);
    doc["skipped"] = artifact.skipped;
    doc["errors"] = artifact.errors;
    doc["warnings"] = warnings_json(artifact.warnings);

    std::vector<std::string> paths;
    paths.reserve(artifact.file_stats.size());
    for (const auto& fs : artifact.file_stats) paths.push_back(fs.path);

    doc["clones"] = artifact.clones.has_value() ? clone_report_json(*artifact.clones, paths)
                                                : json(nullptr);
    doc["clones_gapped"] = artifact.clones_gapped.has_value()
                               ? clone_report_json(*artifact.clones_gapped, paths)
                               : json(nullptr);
    doc["metrics"] = artifact.metrics.has_value()
                         ? metrics_profile_json(*artifact.metrics, artifact.threshold_violations)
                         : json(nullptr);
    doc["arch"] = (artifact.arch.has_value() && artifact.extraction.has_value())
                      ? conformance_report_json(*artifact.arch, *artifact.extraction)
                      : json(nullptr);
    doc["findings"] = artifact.findings.has_value()
                          ? findings_report_json(*artifact.findings, artifact.filter_stats)
                          : json(nullptr);
    doc["assessment"] =
        artifact.assessment.has_value() ? assessment_json(*artifact.assessment) : json(nullptr);
    doc["gates"] = gate_results_json(artifact.gates);
    doc["content_hash"] = to_hex(fnv1a64(doc.dump()));
    return doc;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

enum class ReportFormat { Json, Html };

/// Writes one JSON per artifact plus index.json; HTML is a static render of
/// the same data. Identical inputs produce byte-identical files.
inline std::vector<std::filesystem::path> emit_reports(
    const std::vector<RunArtifact>& artifacts, const ProjectConfig& config,
    const std::filesystem::path& out_dir,
    const std::vector<ReportFormat>& formats = {ReportFormat::Json}) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw IoError("cannot create output directory: " + out_dir.string());

    std::vector<fs::path> written;
    std::vector<json> artifact_docs;
    json index;
    index["kind"] = "run_index";
    index["project"] = config.name;
    json versions = json::array();
    json files;
    for (const RunArtifact& artifact : artifacts) {
        json doc = run_artifact_json(artifact, config);
        fs::path path = out_dir / (artifact.version + ".json");
        write_json_file(path, doc);
        written.push_back(path);
        versions.push_back(artifact.version);
        files[artifact.version] = artifact.version + ".json";
        artifact_docs.push_back(std::move(doc));
    }
    index["versions"] = versions;
    index["artifacts"] = files;

    std::vector<CloneReport> clone_reports;
    std::vector<std::string> labels;
    for (const RunArtifact& artifact : artifacts)
        if (artifact.clones.has_value()) {
            clone_reports.push_back(*artifact.clones);
            labels.push_back(artifact.version);
        }
    if (clone_reports.size() >= 2)
        index["trend"] = trend_json(clone_trend(clone_reports, labels));
    else
        index["trend"] = nullptr;

    fs::path index_path = out_dir / "index.json";
    write_json_file(index_path, index);
    written.push_back(index_path);

    bool want_html = std::find(formats.begin(), formats.end(), ReportFormat::Html) != formats.end();
    if (want_html) {
        fs::path html_path = out_dir / "index.html";
        std::ofstream out(html_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + html_path.string());
        out << render_html_report(index, artifact_docs);
        written.push_back(html_path);
    }
    return written;
}

}  // namespace quastat

#endif  // QUASTAT_PIPELINE_HPP
