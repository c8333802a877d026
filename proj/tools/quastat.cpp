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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quastat/pipeline.hpp"

namespace fs = std::filesystem;
using quastat::json;

namespace {

struct GlobalOpts {
    std::string out;     // directory; empty = stdout
    std::string format = "json";
};

void emit(const GlobalOpts& opts, const std::string& name, const json& doc) {
    if (opts.out.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    fs::create_directories(opts.out);
    quastat::write_json_file(fs::path(opts.out) / name, doc);
}

quastat::ExclusionFilter make_filter(const std::vector<std::string>& patterns) {
    quastat::ExclusionFilter filter;
    filter.patterns = patterns;
    return filter;
}

void print_warnings(const quastat::Warnings& warnings) {
    for (const auto& w : warnings) {
        std::cerr << "warning: ";
        if (!w.file.empty()) {
            std::cerr << w.file;
            if (w.line > 0) std::cerr << ":" << w.line;
            std::cerr << ": ";
        }
        std::cerr << w.message << "\n";
    }
}

int cmd_clones(const GlobalOpts& opts, const std::string& root, const std::string& language,
               const std::vector<std::string>& exclude, int min_length, bool gapped, int max_gaps,
               double max_gap_ratio) {
    quastat::Corpus corpus =
        quastat::load_corpus(root, make_filter(exclude), quastat::language_from_string(language));
    print_warnings(corpus.warnings);
    quastat::CorpusUnits units = quastat::build_units(corpus);
    print_warnings(units.warnings);

    quastat::CloneConfig config;
    config.min_length = min_length;
    config.gapped = gapped;
    config.max_gaps_per_clone = max_gaps;
    config.max_gap_ratio = max_gap_ratio;
    config.validate();

    quastat::CloneReport report = gapped ? quastat::detect_gapped_clones(units, config)
                                         : quastat::detect_clones(units, config);
    emit(opts, gapped ? "clones_gapped.json" : "clones.json",
         quastat::clone_report_json(report, quastat::file_paths_of(units)));
    return 0;
}

int cmd_metrics(const GlobalOpts& opts, const std::string& root, const std::string& language,
                const std::vector<std::string>& exclude,
                const std::vector<std::string>& threshold_specs, bool manifest) {
    quastat::Corpus corpus =
        quastat::load_corpus(root, make_filter(exclude), quastat::language_from_string(language));
    print_warnings(corpus.warnings);
    quastat::MetricsProfile profile = quastat::compute_profile(corpus);
    std::vector<quastat::Threshold> thresholds;
    for (const auto& spec : threshold_specs)
        thresholds.push_back(quastat::Threshold::parse(spec));
    auto violations = quastat::check_thresholds(profile, thresholds);
    emit(opts, "metrics.json", quastat::metrics_profile_json(profile, violations));
    if (manifest) {
        quastat::CorpusUnits units = quastat::build_units(corpus);
        emit(opts, "manifest.json", quastat::corpus_manifest_json(corpus, units));
    }
    return 0;
}

int cmd_arch(const GlobalOpts& opts, const std::string& root, const std::string& language,
             const std::vector<std::string>& exclude, const std::string& model_path) {
    quastat::Corpus corpus =
        quastat::load_corpus(root, make_filter(exclude), quastat::language_from_string(language));
    print_warnings(corpus.warnings);
    quastat::ReflexionModel model = quastat::load_reflexion_model(model_path);
    quastat::ExtractionResult extraction = quastat::extract_dependencies(corpus);
    quastat::EntityMapping mapping = quastat::map_entities(model, extraction.entities);
    quastat::ConformanceReport report =
        quastat::check_conformance(model, extraction.facts, mapping);
    quastat::classify_violations(report, model, extraction.facts, mapping);
    emit(opts, "arch.json", quastat::conformance_report_json(report, extraction));
    return report.model_errors.empty() ? 0 : 3;
}

int cmd_findings(const GlobalOpts& opts, const std::string& catalog_path,
                 const std::vector<std::string>& inputs, const std::string& categories,
                 const std::vector<std::string>& rules, int min_severity, double min_confidence,
                 const std::string& critical_path, const std::string& suppress_path,
                 std::size_t loc, const std::string& root, const std::string& language) {
    quastat::RuleCatalog catalog = quastat::load_rule_catalog(catalog_path);
    std::vector<quastat::Finding> findings;
    for (const auto& in : inputs) {
        quastat::ImportResult imported = quastat::import_findings(in, catalog);
        print_warnings(imported.warnings);
        findings.insert(findings.end(), imported.findings.begin(), imported.findings.end());
    }
    quastat::RuleSelector selector;
    if (!categories.empty()) {
        selector.mode = quastat::RuleSelector::Mode::SelectedCategories;
        selector.categories = quastat::split(categories, ',');
    } else if (!rules.empty()) {
        selector.mode = quastat::RuleSelector::Mode::SelectedRules;
        selector.rules = rules;
    }
    quastat::FindingsFilter filter;
    filter.min_severity = min_severity;
    filter.min_confidence = min_confidence;
    if (!suppress_path.empty())
        filter.suppressed_fingerprints = quastat::load_fingerprint_list(suppress_path);

    quastat::FilterStats stats;
    std::vector<quastat::Finding> kept =
        quastat::select_and_filter(findings, catalog, selector, filter, &stats);

    std::set<std::string> critical;
    if (!critical_path.empty()) critical = quastat::load_fingerprint_list(critical_path);

    std::size_t corpus_loc = loc;
    if (corpus_loc == 0 && !root.empty()) {
        quastat::Corpus corpus = quastat::load_corpus(
            root, quastat::ExclusionFilter{}, quastat::language_from_string(language));
        corpus_loc = corpus.total_loc();
    }
    quastat::Warnings warnings;
    quastat::FindingsReport report =
        quastat::summarize(kept, catalog, corpus_loc, critical, &warnings);
    print_warnings(warnings);
    emit(opts, "findings.json", quastat::findings_report_json(report, stats));
    return 0;
}

int cmd_assess(const GlobalOpts& opts, const std::string& model_path, const std::string& clones,
               const std::string& findings, const std::string& metrics, const std::string& arch,
               const std::string& manual_path) {
    quastat::QualityModelSpec model = quastat::load_model(model_path);

    std::optional<quastat::CloneReport> clone_report;
    std::optional<quastat::FindingsReport> findings_report;
    std::optional<quastat::MetricsProfile> metrics_profile;
    std::optional<quastat::ConformanceReport> arch_report;
    if (!clones.empty())
        clone_report = quastat::clone_report_from_json(quastat::read_json_file(clones));
    if (!findings.empty())
        findings_report = quastat::findings_report_from_json(quastat::read_json_file(findings));
    if (!metrics.empty())
        metrics_profile = quastat::metrics_profile_from_json(quastat::read_json_file(metrics));
    if (!arch.empty())
        arch_report = quastat::conformance_report_from_json(quastat::read_json_file(arch));

    quastat::MeasurementInputs inputs;
    inputs.clones = clone_report.has_value() ? &*clone_report : nullptr;
    inputs.findings = findings_report.has_value() ? &*findings_report : nullptr;
    inputs.metrics = metrics_profile.has_value() ? &*metrics_profile : nullptr;
    inputs.arch = arch_report.has_value() ? &*arch_report : nullptr;
    if (!manual_path.empty()) {
        json manual = quastat::read_json_file(manual_path);
        for (const auto& [id, v] : manual.items()) inputs.manual[id] = v.get<double>();
    }
    quastat::MeasurementSet measurements = quastat::collect_measurements(model, inputs);
    quastat::Assessment assessment = quastat::evaluate(model, measurements);
    emit(opts, "assessment.json", quastat::assessment_json(assessment));
    return 0;
}

int cmd_rank(const GlobalOpts& opts, const std::vector<std::string>& inputs,
             const std::string& criteria) {
    std::vector<quastat::SystemResult> systems;
    for (const auto& path : inputs) {
        json doc = quastat::read_json_file(path);
        quastat::SystemResult r;
        r.id = doc.value("system", fs::path(path).stem().string());
        auto opt = [&](const char* key) -> std::optional<double> {
            if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
            return doc[key].get<double>();
        };
        r.clone_coverage = opt("clone_coverage");
        r.findings_density = opt("findings_density");
        r.critical_findings = opt("critical_findings");
        r.arch_class_violations = opt("arch_class_violations");
        r.overall_grade = opt("overall_grade");
        systems.push_back(std::move(r));
    }

    std::vector<std::string> names = quastat::split(criteria, ',');
    json doc;
    doc["kind"] = "rank_report";
    json tables = json::array();
    std::vector<quastat::RankTable> rank_tables;
    for (const auto& name : names) {
        quastat::RankTable table = quastat::rank_by(systems, name);
        tables.push_back(quastat::rank_table_json(table));
        rank_tables.push_back(std::move(table));
    }
    doc["tables"] = tables;

    // agreement of every non-grade ranking against the grade ranking
    json agreements = json::array();
    for (std::size_t i = 0; i < rank_tables.size(); ++i) {
        if (rank_tables[i].criterion == "grade" || rank_tables[i].criterion == "overall_grade")
            continue;
        for (std::size_t j = 0; j < rank_tables.size(); ++j) {
            if (rank_tables[j].criterion != "grade" &&
                rank_tables[j].criterion != "overall_grade")
                continue;
            json ja = quastat::agreement_json(quastat::compare_rankings(rank_tables[i],
                                                                        rank_tables[j]));
            ja["a"] = rank_tables[i].criterion;
            ja["b"] = rank_tables[j].criterion;
            agreements.push_back(ja);
        }
    }
    doc["agreements"] = agreements;
    emit(opts, "rank.json", doc);

    // text matrix: one row per rank position, one column per criterion
    int max_rank = 0;
    for (const auto& t : rank_tables)
        for (const auto& e : t.entries) max_rank = std::max(max_rank, e.rank);
    std::cout << "rank";
    for (const auto& t : rank_tables) std::cout << "\t" << t.criterion;
    std::cout << "\n";
    for (int rank = 1; rank <= max_rank; ++rank) {
        std::cout << rank;
        for (const auto& t : rank_tables) {
            std::cout << "\t";
            for (const auto& e : t.entries) {
                if (e.rank != rank) continue;
                for (std::size_t s = 0; s < e.systems.size(); ++s)
                    std::cout << (s ? "," : "") << e.systems[s];
                std::cout << " (" << quastat::round2(e.value) << ")";
            }
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out, const std::string& format) {
    quastat::ProjectConfig config = quastat::load_project_config(config_path);
    std::vector<quastat::RunArtifact> artifacts = quastat::run_pipeline(config);
    std::vector<quastat::ReportFormat> formats = {quastat::ReportFormat::Json};
    if (format == "html") formats.push_back(quastat::ReportFormat::Html);
    quastat::emit_reports(artifacts, config, out.empty() ? "quastat-out" : out, formats);
    for (const auto& a : artifacts) {
        for (const auto& e : a.errors)
            std::cerr << "error [" << a.version << "]: " << e << "\n";
        for (const auto& g : a.gates)
            std::cout << "gate [" << a.version << "] " << g.gate.id << ": "
                      << quastat::to_string(g.verdict) << "\n";
    }
    return quastat::exit_code_for(artifacts);
}

int cmd_report(const std::string& in_dir, const std::string& format) {
    json index = quastat::read_json_file(fs::path(in_dir) / "index.json");
    std::vector<json> artifacts;
    for (const auto& label : index["versions"]) {
        std::string file = index["artifacts"][label.get<std::string>()].get<std::string>();
        artifacts.push_back(quastat::read_json_file(fs::path(in_dir) / file));
    }
    if (format == "html") {
        fs::path path = fs::path(in_dir) / "index.html";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw quastat::IoError("cannot write " + path.string());
        out << quastat::render_html_report(index, artifacts);
        std::cout << path.string() << "\n";
    } else {
        std::cout << index.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quastat - static quality analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts opts;
    app.add_option("--out", opts.out, "output directory (default: print to stdout)");
    app.add_option("--format", opts.format, "report format: json or html")
        ->check(CLI::IsMember({"json", "html"}));

    std::string config_path;
    if (const char* env = std::getenv("QUASTAT_CONFIG")) config_path = env;
    app.add_option("--config", config_path, "project config file (or $QUASTAT_CONFIG)");

    std::string root, language = "java", model_path, catalog_path, categories, critical_path,
                suppress_path, manual_path, clones_path, findings_path, metrics_path, arch_path,
                criteria = "clones,density,critical,arch,grade", in_dir;
    std::vector<std::string> exclude, threshold_specs, inputs, rules;
    int min_length = 10, max_gaps = 1, min_severity = 1;
    double max_gap_ratio = 0.30, min_confidence = 0.0;
    bool gapped = false;
    std::size_t loc = 0;

    auto* clones = app.add_subcommand("clones", "detect code clones");
    clones->add_option("root", root, "source root")->required();
    clones->add_option("--language", language, "java or csharp");
    clones->add_option("--exclude", exclude, "path exclusion regex (repeatable)");
    clones->add_option("--min-length", min_length, "minimal clone length in units");
    clones->add_flag("--gapped", gapped, "gapped detection");
    clones->add_option("--max-gaps", max_gaps, "max gaps per clone instance");
    clones->add_option("--max-gap-ratio", max_gap_ratio, "max gap units / instance units");

    auto* metrics = app.add_subcommand("metrics", "compute code metrics");
    metrics->add_option("root", root, "source root")->required();
    metrics->add_option("--language", language, "java or csharp");
    metrics->add_option("--exclude", exclude, "path exclusion regex (repeatable)");
    metrics->add_option("--threshold", threshold_specs, "metric:op:value (repeatable)");
    bool manifest = false;
    metrics->add_flag("--manifest", manifest, "also emit the corpus manifest");

    auto* arch = app.add_subcommand("arch", "check architecture conformance");
    arch->add_option("root", root, "source root")->required();
    arch->add_option("--model", model_path, "reflexion model JSON")->required();
    arch->add_option("--language", language, "java or csharp");
    arch->add_option("--exclude", exclude, "path exclusion regex (repeatable)");

    auto* findings = app.add_subcommand("findings", "import and summarize findings");
    findings->add_option("--catalog", catalog_path, "rule catalog JSON")->required();
    findings->add_option("--in", inputs, "findings JSON-Lines file (repeatable)")->required();
    findings->add_option("--categories", categories, "comma-separated category selector");
    findings->add_option("--rules", rules, "rule selector (repeatable)");
    findings->add_option("--min-severity", min_severity, "filter: minimum severity 1..5");
    findings->add_option("--min-confidence", min_confidence, "filter: minimum confidence 0..1");
    findings->add_option("--critical", critical_path, "file of critical fingerprints");
    findings->add_option("--suppress", suppress_path, "file of suppressed fingerprints");
    findings->add_option("--loc", loc, "corpus size in lines for density");
    findings->add_option("--root", root, "source root to compute LoC from");
    findings->add_option("--language", language, "java or csharp");

    auto* assess = app.add_subcommand("assess", "evaluate a quality model");
    assess->add_option("--model", model_path, "quality model JSON")->required();
    assess->add_option("--clones", clones_path, "clone report JSON");
    assess->add_option("--findings", findings_path, "findings report JSON");
    assess->add_option("--metrics", metrics_path, "metrics profile JSON");
    assess->add_option("--arch", arch_path, "conformance report JSON");
    assess->add_option("--manual", manual_path, "manual measure values JSON");

    auto* rank = app.add_subcommand("rank", "rank analyzed systems");
    rank->add_option("--in", inputs, "system result JSON (repeatable)")->required();
    rank->add_option("--criteria", criteria, "comma-separated criteria");

    auto* run = app.add_subcommand("run", "run the full pipeline from a project config");
    run->add_option("--config", config_path, "project config file");

    auto* report = app.add_subcommand("report", "re-render reports from emitted artifacts");
    report->add_option("--in", in_dir, "directory with index.json")->required();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (clones->parsed())
            return cmd_clones(opts, root, language, exclude, min_length, gapped, max_gaps,
                              max_gap_ratio);
        if (metrics->parsed())
            return cmd_metrics(opts, root, language, exclude, threshold_specs, manifest);
        if (arch->parsed()) return cmd_arch(opts, root, language, exclude, model_path);
        if (findings->parsed())
            return cmd_findings(opts, catalog_path, inputs, categories, rules, min_severity,
                                min_confidence, critical_path, suppress_path, loc, root, language);
        if (assess->parsed())
            return cmd_assess(opts, model_path, clones_path, findings_path, metrics_path,
                              arch_path, manual_path);
        if (rank->parsed()) return cmd_rank(opts, inputs, criteria);
        if (run->parsed()) {
            if (config_path.empty())
                throw quastat::ConfigError("run needs --config or $QUASTAT_CONFIG");
            return cmd_run(config_path, opts.out, opts.format);
        }
        if (report->parsed()) return cmd_report(in_dir, opts.format);
    } catch (const quastat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
