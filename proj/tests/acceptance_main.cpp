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
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "quastat/pipeline.hpp"

using namespace quastat;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

static const fs::path kFixtures = QUASTAT_FIXTURE_DIR;
static const char* kCli = QUASTAT_CLI_PATH;
static const fs::path kDemoModel =
    fs::path(QUASTAT_FIXTURE_DIR).parent_path().parent_path() / "models" /
    "demo_quality_model.json";

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    int extra_failures = 0;

    void fail(const std::string& why) {
        pass = false;
        if (detail.size() > 240) {  // keep the line readable
            ++extra_failures;
            return;
        }
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void require(bool condition, const std::string& why) {
        if (!condition) fail(why);
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CorpusUnits synthetic_corpus(const std::vector<std::vector<std::uint64_t>>& files) {
    CorpusUnits corpus;
    for (std::size_t f = 0; f < files.size(); ++f) {
        FileUnits fu;
        fu.path = "file" + std::to_string(f) + ".java";
        for (std::size_t u = 0; u < files[f].size(); ++u) {
            Unit unit;
            unit.start_line = static_cast<int>(u) + 1;
            unit.end_line = static_cast<int>(u) + 1;
            unit.normalized_hash = files[f][u];
            fu.units.push_back(unit);
        }
        fu.methods.push_back({0, static_cast<int>(files[f].size()), "whole", 1});
        corpus.files.push_back(std::move(fu));
    }
    return corpus;
}

// --- criterion 1: clone metric arithmetic over the published table ----------

Outcome criterion_clone_arithmetic() {
    Outcome out;
    auto start = Clock::now();
    struct Row {
        const char* so;
        const char* ver;
        double analysed_k, cloned_k, blow_up, coverage;
    };
    const std::vector<Row> rows = {
        {"SO1", "I", 15.9, 3.5, 119.5, 22.2},   {"SO1", "II", 25.3, 5.8, 118.9, 23.0},
        {"SO1", "III", 32.3, 7.8, 119.2, 24.0}, {"SO2", "I", 35.4, 14.3, 143.1, 40.5},
        {"SO2", "II", 41.6, 18.9, 150.2, 45.4}, {"SO2", "III", 39.9, 14.6, 137.4, 36.7},
        {"SO3", "I", 51.7, 9.4, 114.5, 18.2},   {"SO3", "II", 56.8, 8.6, 111.2, 15.1},
        {"SO3", "III", 61.6, 8.4, 110.0, 13.7}, {"SO4", "I", 8.9, 6.0, 238.8, 68.0},
        {"SO4", "II", 22.4, 17.3, 309.6, 77.6}, {"SO4", "III", 38.3, 30.4, 336.0, 79.4},
        {"SO5", "I", 196.3, 48.7, 122.3, 24.8}, {"SO5", "II", 211.3, 53.4, 122.7, 25.3},
        {"SO5", "III", 208.6, 53.2, 122.8, 25.5},
    };

    std::map<std::string, std::vector<std::pair<double, double>>> per_so;  // (coverage, blow_up)
    for (const Row& row : rows) {
        auto analysed = static_cast<std::size_t>(row.analysed_k * 1000.0 + 0.5);
        auto cloned = static_cast<std::size_t>(row.cloned_k * 1000.0 + 0.5);
        // one class, two disjoint instances whose union is the cloned count
        CloneClass cls;
        cls.length_units = static_cast<int>(cloned / 2);
        CloneInstance a, b;
        a.file_index = 0;
        a.begin_unit = 0;
        a.end_unit = cls.length_units;
        b.file_index = 0;
        b.begin_unit = cls.length_units;
        b.end_unit = 2 * cls.length_units;
        cls.instances = {a, b};
        CloneMetrics m = compute_metrics({cls}, analysed);

        double delta = std::abs(m.unit_coverage - row.coverage);
        if (delta > 0.5) {
            std::ostringstream os;
            os << row.so << " ver " << row.ver << ": computed " << m.unit_coverage
               << "% vs table " << row.coverage << "% (|delta| " << delta << " > 0.5)";
            out.fail(os.str());
        }
        if (m.blow_up < 100.0) out.fail(std::string(row.so) + " blow-up below 100");
        per_so[row.so].push_back({m.unit_coverage, m.blow_up});
    }
    // directional consistency per study object
    for (auto& [so, points] : per_so) {
        std::sort(points.begin(), points.end());
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i].second < points[i - 1].second - 0.5)
                out.fail(so + ": higher coverage with materially lower blow-up");
    }
    out.require(seconds_since(start) < 1.0, "exceeded 1 s");
    return out;
}

// --- criterion 2: oracle equivalence on randomized corpora ------------------

Outcome criterion_oracle_equivalence() {
    Outcome out;
    auto start = Clock::now();
    std::mt19937 rng(20260808);
    int runs = 0, matches = 0;
    for (int run = 0; run < 20; ++run) {
        std::uniform_int_distribution<int> n_files(1, 4);
        std::uniform_int_distribution<std::uint64_t> symbol(0, 60);
        std::uniform_int_distribution<int> plant_len(10, 30);
        std::uniform_int_distribution<int> plants(1, 4);

        int files = n_files(rng);
        std::vector<std::vector<std::uint64_t>> content(static_cast<std::size_t>(files));
        int budget = 900;
        for (auto& f : content) {
            std::uniform_int_distribution<int> len(40, std::max(41, budget / files));
            int n = len(rng);
            budget -= n;
            for (int i = 0; i < n; ++i) f.push_back(symbol(rng));
        }
        for (int p = plants(rng); p > 0; --p) {
            int len = plant_len(rng);
            std::vector<std::uint64_t> snippet;
            for (int i = 0; i < len; ++i) snippet.push_back(symbol(rng));
            std::uniform_int_distribution<int> copies(2, 3);
            for (int c = copies(rng); c > 0; --c) {
                auto& f = content[static_cast<std::size_t>(
                    std::uniform_int_distribution<int>(0, files - 1)(rng))];
                std::uniform_int_distribution<int> at(0, static_cast<int>(f.size()));
                f.insert(f.begin() + at(rng), snippet.begin(), snippet.end());
            }
        }

        CloneReport report = detect_clones(synthetic_corpus(content), CloneConfig{});
        std::vector<oracle::RepeatClass> got;
        for (const CloneClass& c : report.classes) {
            oracle::RepeatClass r;
            r.length = c.length_units;
            for (const CloneInstance& inst : c.instances)
                r.occurrences.push_back({inst.file_index, inst.begin_unit});
            std::sort(r.occurrences.begin(), r.occurrences.end());
            got.push_back(std::move(r));
        }
        std::sort(got.begin(), got.end());
        ++runs;
        if (got == oracle::conventional_classes(content, 10)) ++matches;
    }
    out.require(matches == runs,
                std::to_string(matches) + "/" + std::to_string(runs) + " runs matched");
    double elapsed = seconds_since(start);
    out.require(elapsed < 30.0, "exceeded 30 s (" + std::to_string(elapsed) + ")");
    if (out.pass)
        out.detail = std::to_string(runs) + " corpora matched the brute-force oracle in " +
                     std::to_string(elapsed).substr(0, 4) + " s";
    return out;
}

// --- criterion 3: gapped parameter semantics ---------------------------------

Outcome criterion_gapped_semantics() {
    Outcome out;
    CloneConfig config;
    config.gapped = true;  // min 10, max_gaps 1, ratio 0.30

    // (a) pair differing in 1 of 20 units is found
    {
        std::vector<std::uint64_t> a, b;
        for (int i = 0; i < 20; ++i) a.push_back(100 + static_cast<std::uint64_t>(i));
        b = a;
        b[9] = 999;
        CloneReport report = detect_gapped_clones(synthetic_corpus({a, b}), config);
        bool found = false;
        for (const CloneClass& c : report.classes)
            if (c.instances.size() == 2 && c.instances[0].length_units() == 20 &&
                c.instances[1].length_units() == 20)
                found = true;
        out.require(found, "1-edit pair of 20 units not reported as one gapped class");
    }
    // (b) two separated edits never merge into one clone with max_gaps=1
    {
        std::vector<std::uint64_t> a, b;
        for (int i = 0; i < 30; ++i) a.push_back(500 + static_cast<std::uint64_t>(i));
        b = a;
        b[10] = 901;
        b[20] = 902;
        CloneReport report = detect_gapped_clones(synthetic_corpus({a, b}), config);
        for (const CloneClass& c : report.classes)
            for (const CloneInstance& inst : c.instances) {
                std::size_t runs = 0;
                for (std::size_t i = 0; i < inst.gap_positions.size(); ++i)
                    if (i == 0 || inst.gap_positions[i] != inst.gap_positions[i - 1] + 1) ++runs;
                if (runs > 1 || inst.length_units() >= 30)
                    out.fail("2-edit pair reported as a single gapped clone");
            }
    }
    // (c) a clone straddling a method boundary is never reported
    {
        std::vector<std::uint64_t> shared;
        for (int i = 0; i < 24; ++i) shared.push_back(3000 + static_cast<std::uint64_t>(i));
        CorpusUnits corpus = synthetic_corpus({shared, shared});
        corpus.files[1].methods.clear();
        corpus.files[1].methods.push_back({0, 12, "first", 1});
        corpus.files[1].methods.push_back({12, 24, "second", 13});
        CloneReport report = detect_gapped_clones(corpus, config);
        for (const CloneClass& c : report.classes)
            for (const CloneInstance& inst : c.instances) {
                bool inside = false;
                for (const MethodSpan& m :
                     corpus.files[static_cast<std::size_t>(inst.file_index)].methods)
                    if (inst.begin_unit >= m.begin_unit && inst.end_unit <= m.end_unit)
                        inside = true;
                if (!inside) out.fail("instance crosses a method boundary");
            }
    }
    if (out.pass) out.detail = "3 deterministic fixtures behaved as configured";
    return out;
}

// --- criterion 4: architecture conformance at the published scale -----------

Outcome criterion_architecture() {
    Outcome out;
    ReflexionModel model = load_reflexion_model(kFixtures / "arch" / "big_model.json");
    out.require(model.components.size() == 12, "model must have 12 components");
    out.require(model.rules.size() == 20, "model must have 20 rules");

    // seeded facts: 5 distinct class pairs inside one forbidden component pair
    // (the 1-component / 5-class shape), plus allowed and tolerated traffic
    std::vector<CodeEntity> entities;
    std::vector<DependencyFact> facts;
    auto entity = [&](const std::string& name) {
        entities.push_back({name, EntityKind::Type, "x.java"});
    };
    for (int i = 1; i <= 5; ++i) {
        std::string from = "app.ui.widgets.W" + std::to_string(i);
        std::string to = "app.data.jdbc.D" + std::to_string(i);
        entity(from);
        entity(to);
        facts.push_back({from, to, DependencyKind::TypeReference, "x.java", i});
    }
    entity("app.ui.Screen");
    entity("app.core.Service");
    entity("app.monitor.Probe");
    entity("app.gateway.Bridge");
    facts.push_back({"app.ui.Screen", "app.core.Service", DependencyKind::Call, "x.java", 20});
    facts.push_back(
        {"app.core.Service", "app.data.jdbc.D1", DependencyKind::Call, "x.java", 21});
    facts.push_back(
        {"app.monitor.Probe", "app.gateway.Bridge", DependencyKind::Call, "x.java", 22});

    EntityMapping mapping = map_entities(model, entities);
    ConformanceReport report = check_conformance(model, facts, mapping);
    out.require(report.class_relationships == 5,
                "expected 5 class violations, got " +
                    std::to_string(report.class_relationships));
    out.require(report.component_relationships == 1,
                "expected 1 component violation, got " +
                    std::to_string(report.component_relationships));
    out.require(report.tolerated == 1, "tolerated dependency not counted");
    out.require(report.allowed == 2, "allowed dependencies miscounted");

    // the Table 6 relation plus default-deny and monotonicity over random models
    std::mt19937 rng(10101);
    for (int run = 0; run < 100; ++run) {
        std::uniform_int_distribution<int> n_components(2, 6);
        int n = n_components(rng);
        ReflexionModel random_model;
        for (int c = 0; c < n; ++c) {
            std::string name = "c" + std::to_string(c);
            random_model.components.push_back({name, "", {name + ".*"}, false});
        }
        std::uniform_int_distribution<int> comp(0, n - 1);
        std::uniform_int_distribution<int> n_rules(0, 5), n_facts(1, 15);
        for (int k = n_rules(rng); k > 0; --k)
            random_model.rules.push_back({"c" + std::to_string(comp(rng)),
                                          "c" + std::to_string(comp(rng)), RuleEffect::Allow});
        std::vector<CodeEntity> random_entities;
        std::vector<DependencyFact> random_facts;
        for (int k = n_facts(rng); k > 0; --k) {
            int a = comp(rng), b = comp(rng);
            if (a == b) continue;
            std::string from = "c" + std::to_string(a) + ".T" + std::to_string(k);
            std::string to = "c" + std::to_string(b) + ".U" + std::to_string(k);
            random_entities.push_back({from, EntityKind::Type, "x.java"});
            random_entities.push_back({to, EntityKind::Type, "x.java"});
            random_facts.push_back({from, to, DependencyKind::Call, "x.java", k});
        }
        EntityMapping m2 = map_entities(random_model, random_entities);

        ConformanceReport with_rules = check_conformance(random_model, random_facts, m2);
        std::set<std::pair<std::string, std::string>> pairs;
        for (const Violation& v : with_rules.violations)
            pairs.emplace(v.from_component, v.to_component);
        if (with_rules.component_relationships != pairs.size())
            out.fail("component count != distinct violating pairs");

        ReflexionModel no_rules = random_model;
        no_rules.rules.clear();
        if (check_conformance(no_rules, random_facts, m2).violations.size() !=
            random_facts.size())
            out.fail("default deny must flag every inter-component fact");

        ReflexionModel more = random_model;
        more.rules.push_back({"c" + std::to_string(comp(rng)), "c" + std::to_string(comp(rng)),
                              RuleEffect::Allow});
        if (check_conformance(more, random_facts, m2).violations.size() >
            with_rules.violations.size())
            out.fail("adding an allow rule increased violations");
    }
    if (out.pass)
        out.detail = "seeded 1 component / 5 class shape and 100 random-model properties held";
    return out;
}

// --- criterion 5: findings density and filter monotonicity ------------------

Outcome criterion_findings_density() {
    Outcome out;
    RuleCatalog catalog = load_rule_catalog(kFixtures / "findings" / "rules.json");
    std::vector<Finding> findings;
    for (int i = 0; i < 49; ++i) {
        Finding f;
        f.tool = "fixlint";
        f.rule_id = "UNUSED_FIELD";
        f.file = "a.java";
        f.line = i;
        f.message = "m" + std::to_string(i);
        f.severity = 2;
        f.confidence = 0.9;
        findings.push_back(std::move(f));
    }
    FindingsReport report = summarize(findings, catalog, 100000);
    out.require(report.density_per_kloc.has_value() && *report.density_per_kloc == 0.49,
                "density of 49 findings over 100,000 LoC must be exactly 0.49");

    ImportResult imported = import_findings(kFixtures / "findings" / "findings.jsonl", catalog);
    std::mt19937 rng(515151);
    std::uniform_int_distribution<int> sev(1, 5);
    std::uniform_real_distribution<double> conf(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        FindingsFilter weak;
        weak.min_severity = sev(rng);
        weak.min_confidence = conf(rng);
        FindingsFilter strong = weak;
        strong.min_severity = std::min(5, weak.min_severity + sev(rng) % 3);
        strong.min_confidence = std::min(1.0, weak.min_confidence + conf(rng) * 0.4);
        auto kept_weak = select_and_filter(imported.findings, catalog, RuleSelector{}, weak);
        auto kept_strong = select_and_filter(imported.findings, catalog, RuleSelector{}, strong);
        if (kept_strong.size() > kept_weak.size())
            out.fail("strengthening a filter grew the surviving set");
    }
    if (out.pass) out.detail = "density 0.49 exact; 100 filter strengthenings monotone";
    return out;
}

// --- criterion 6: ranking reproduction ---------------------------------------

Outcome criterion_ranking() {
    Outcome out;
    std::vector<SystemResult> systems(5);
    systems[0] = {"SO1", 24.0, 4.68, 3.0, 9.0, 2.8};
    systems[1] = {"SO2", 36.7, 0.67, 0.0, std::nullopt, 1.5};
    systems[2] = {"SO3", 13.7, 2.41, 0.0, std::nullopt, 2.5};
    systems[3] = {"SO4", 79.4, 0.49, 0.0, 4.0, 2.0};
    systems[4] = {"SO5", 25.5, 1.69, 6.0, std::nullopt, 4.5};

    auto order_of = [](const RankTable& t) {
        std::vector<std::string> out_order;
        for (const auto& e : t.entries)
            for (const auto& s : e.systems) out_order.push_back(s);
        return out_order;
    };
    auto expect_order = [&](const char* criterion, std::vector<std::string> expected) {
        RankTable t = rank_by(systems, criterion);
        if (order_of(t) != expected) out.fail(std::string(criterion) + " order wrong");
        return t;
    };
    RankTable clones = expect_order("clones", {"SO3", "SO1", "SO5", "SO2", "SO4"});
    expect_order("density", {"SO4", "SO2", "SO5", "SO3", "SO1"});
    RankTable critical = expect_order("critical", {"SO2", "SO3", "SO4", "SO1", "SO5"});
    expect_order("arch", {"SO4", "SO1"});
    RankTable grades = expect_order("grade", {"SO2", "SO4", "SO3", "SO1", "SO5"});

    // the published shared first place on critical findings
    bool tie_ok = critical.entries.size() == 3 && critical.entries[0].rank == 1 &&
                  critical.entries[0].systems ==
                      std::vector<std::string>{"SO2", "SO3", "SO4"} &&
                  critical.entries[1].rank == 4 && critical.entries[2].rank == 5;
    out.require(tie_ok, "critical-findings tie {SO2,SO3,SO4} at rank 1 not reproduced");

    AgreementReport agreement = compare_rankings(clones, grades);
    bool so4 = false;
    for (const RankShift& s : agreement.strong_shifts)
        if (s.system == "SO4" && std::abs(s.rank_a - s.rank_b) >= 2) so4 = true;
    out.require(so4, "SO4 shift between clone rank 5 and grade rank 2 not flagged");
    if (out.pass) out.detail = "all five orderings, the rank-1 tie and the SO4 shift reproduced";
    return out;
}

// --- criterion 7: quality model property suite -------------------------------

std::map<std::string, double> spreadsheet_factor_utilities(const nlohmann::json& doc,
                                                           const MeasurementSet& values) {
    std::map<std::string, double> utilities;
    for (const auto& f : doc["factors"]) {
        double wsum = 0, vsum = 0;
        for (const auto& mw : f["measures"]) {
            auto it = values.find(mw["measure"].get<std::string>());
            if (it == values.end() || !it->second.has_value()) continue;
            double w = mw.value("weight", 1.0);
            vsum += w * *it->second;
            wsum += w;
        }
        double value = wsum > 0 ? vsum / wsum : 0.0;
        double lo = f["eval"]["t_low"].get<double>(), hi = f["eval"]["t_high"].get<double>();
        double t = std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
        bool better = f["eval"].value("direction", "higher_is_worse") == "higher_is_better";
        utilities[f["id"].get<std::string>()] = better ? t : 1.0 - t;
    }
    return utilities;
}

double spreadsheet_utility(const nlohmann::json& doc,
                           const std::map<std::string, double>& factor_utilities,
                           const std::string& id, std::map<std::string, double>& memo) {
    if (memo.count(id)) return memo.at(id);
    for (const auto& c : doc["characteristics"]) {
        if (c["id"].get<std::string>() != id) continue;
        double wsum = 0, vsum = 0;
        for (const auto& imp : c.value("impacts", nlohmann::json::array())) {
            double w = imp.value("weight", 1.0);
            vsum += w * factor_utilities.at(imp["factor"].get<std::string>());
            wsum += w;
        }
        for (const auto& child : c.value("children", nlohmann::json::array())) {
            double w = child.value("weight", 1.0);
            vsum += w * spreadsheet_utility(doc, factor_utilities,
                                            child["id"].get<std::string>(), memo);
            wsum += w;
        }
        memo[id] = vsum / wsum;
        return memo.at(id);
    }
    return 0.0;
}

Outcome criterion_quality_model() {
    Outcome out;
    QualityModelSpec model = load_model(kDemoModel);

    // boundary grades
    MeasurementSet best, worst;
    for (const ProductFactor& f : model.factors)
        for (const auto& [mid, w] : f.measures) {
            bool worse = f.eval.direction == EvalDirection::HigherIsWorse;
            best[mid] = worse ? f.eval.t_low : f.eval.t_high;
            worst[mid] = worse ? f.eval.t_high : f.eval.t_low;
        }
    Assessment top = evaluate(model, best);
    Assessment bottom = evaluate(model, worst);
    out.require(std::abs(top.overall_grade.lo - 1.0) < 1e-9 &&
                    std::abs(top.overall_grade.hi - 1.0) < 1e-9,
                "utility 1 must grade 1.0");
    out.require(std::abs(bottom.overall_grade.lo - 6.0) < 1e-9 &&
                    std::abs(bottom.overall_grade.hi - 6.0) < 1e-9,
                "utility 0 must grade 6.0");

    MeasurementSet base;
    base["clone_coverage"] = 0.222;
    base["blow_up"] = 1.195;
    base["findings_total"] = 30.0;
    base["findings_critical"] = 1.0;
    base["findings_bug"] = 2.0;
    base["findings_smell"] = 20.0;
    base["findings_pedantry"] = 8.0;
    base["max_cyclomatic"] = 14.0;
    base["max_nested_depth"] = 4.0;
    base["comment_ratio"] = 0.12;
    base["n_statements"] = 6.5;
    base["arch_class_violations"] = 5.0;
    base["review_score"] = 0.8;

    // monotonicity under 200 random worsenings of higher-is-worse measures
    std::set<std::string> worse_measures;
    for (const ProductFactor& f : model.factors)
        if (f.eval.direction == EvalDirection::HigherIsWorse)
            for (const auto& [mid, w] : f.measures) worse_measures.insert(mid);
    for (const ProductFactor& f : model.factors)
        if (f.eval.direction == EvalDirection::HigherIsBetter)
            for (const auto& [mid, w] : f.measures) worse_measures.erase(mid);
    Assessment base_assessment = evaluate(model, base);
    std::mt19937 rng(321);
    std::vector<std::string> pool(worse_measures.begin(), worse_measures.end());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_real_distribution<double> bump(0.01, 8.0);
    for (int i = 0; i < 200; ++i) {
        MeasurementSet perturbed = base;
        const std::string& target = pool[pick(rng)];
        perturbed[target] = *perturbed[target] + bump(rng);
        Assessment worse = evaluate(model, perturbed);
        for (const auto& [cid, node] : worse.per_characteristic)
            if (node.grade.hi < base_assessment.per_characteristic.at(cid).grade.hi - 1e-9)
                out.fail("a grade improved after worsening " + cid);
    }

    // weight-scale invariance
    QualityModelSpec scaled = model;
    for (auto& c : scaled.characteristics)
        if (c.id == "maintainability")
            for (auto& imp : c.impacts) imp.weight *= 4.0;
    Assessment scaled_assessment = evaluate(scaled, base);
    out.require(std::abs(scaled_assessment.per_characteristic.at("maintainability").utility.lo -
                         base_assessment.per_characteristic.at("maintainability").utility.lo) <
                    1e-9,
                "scaling all weights of one characteristic changed its utility");

    // spreadsheet oracle to three decimals
    std::ifstream in(kDemoModel);
    nlohmann::json doc;
    in >> doc;
    auto factor_utilities = spreadsheet_factor_utilities(doc, base);
    std::map<std::string, double> memo;
    for (const auto& [cid, node] : base_assessment.per_characteristic) {
        double expected = 6.0 - 5.0 * spreadsheet_utility(doc, factor_utilities, cid, memo);
        if (std::abs(node.grade.lo - expected) > 0.0005)
            out.fail(cid + " grade deviates from the spreadsheet oracle");
    }

    // intervals contain the point result when one source is withheld
    MeasurementSet withheld = base;
    withheld["arch_class_violations"] = std::nullopt;
    Assessment interval = evaluate(model, withheld);
    for (const auto& [cid, node] : interval.per_characteristic) {
        const NodeResult& exact = base_assessment.per_characteristic.at(cid);
        if (node.grade.lo > exact.grade.lo + 1e-9 || node.grade.hi < exact.grade.hi - 1e-9)
            out.fail(cid + " interval does not contain the point result");
    }
    if (out.pass)
        out.detail =
            "boundaries, 200 monotone perturbations, weight invariance, spreadsheet oracle, "
            "interval containment";
    return out;
}

// --- criterion 8: pipeline determinism and compose-equivalence ---------------

Outcome criterion_pipeline() {
    Outcome out;
    auto start = Clock::now();
    fs::path out1 = fs::temp_directory_path() / "quastat_acc_run1";
    fs::path out2 = fs::temp_directory_path() / "quastat_acc_run2";
    fs::path sub = fs::temp_directory_path() / "quastat_acc_sub";
    fs::remove_all(out1);
    fs::remove_all(out2);
    fs::remove_all(sub);
    fs::create_directories(sub);

    std::string cli = kCli;
    fs::path config_path = kFixtures / "project" / "project.json";
    auto shell = [&](const std::string& cmd) { return std::system(cmd.c_str()); };

    int rc1 = shell(cli + " run --config " + config_path.string() + " --out " + out1.string() +
                    " >/dev/null 2>&1");
    int rc2 = shell(cli + " run --config " + config_path.string() + " --out " + out2.string() +
                    " >/dev/null 2>&1");
    out.require(WEXITSTATUS(rc1) == WEXITSTATUS(rc2), "exit codes differ between runs");

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
    };
    for (const char* name : {"I.json", "II.json", "III.json", "index.json"}) {
        std::string a = slurp(out1 / name), b = slurp(out2 / name);
        if (a.empty() || a != b) out.fail(std::string(name) + " not byte-identical");
    }

    // compose-equivalence on version III
    fs::path corpus = kFixtures / "project" / "v3";
    fs::path arch_model = kFixtures / "project" / "arch.json";
    fs::path catalog = kFixtures / "findings" / "rules.json";
    fs::path findings_file = kFixtures / "project" / "findings_v3.jsonl";
    shell(cli + " clones " + corpus.string() + " --exclude 'gen/.*' --out " + sub.string() +
          " >/dev/null 2>&1");
    shell(cli + " clones " + corpus.string() + " --exclude 'gen/.*' --gapped --out " +
          sub.string() + " >/dev/null 2>&1");
    shell(cli + " metrics " + corpus.string() +
          " --exclude 'gen/.*' --threshold cc:gt:10 --threshold depth:gt:5 --out " +
          sub.string() + " >/dev/null 2>&1");
    shell(cli + " arch " + corpus.string() + " --model " + arch_model.string() +
          " --exclude 'gen/.*' --out " + sub.string() + " >/dev/null 2>&1");
    shell(cli + " findings --catalog " + catalog.string() + " --in " + findings_file.string() +
          " --root " + corpus.string() + " --out " + sub.string() + " >/dev/null 2>&1");

    json artifact = read_json_file(out1 / "III.json");
    auto section_equal = [&](const char* file, const char* key) {
        json a = read_json_file(sub / file);
        if (a != artifact[key]) out.fail(std::string(key) + " differs from subcommand output");
    };
    section_equal("clones.json", "clones");
    section_equal("clones_gapped.json", "clones_gapped");
    section_equal("metrics.json", "metrics");
    section_equal("arch.json", "arch");
    section_equal("findings.json", "findings");

    double elapsed = seconds_since(start);
    out.require(elapsed < 60.0, "exceeded 60 s");
    if (out.pass)
        out.detail = "byte-identical runs and subcommand-equal sections in " +
                     std::to_string(elapsed).substr(0, 4) + " s";
    return out;
}

// --- criterion 9: effort sanity on a 100 kLoC corpus -------------------------

void write_synthetic_corpus(const fs::path& root, int files, int methods_per_file) {
    std::mt19937 rng(4242);
    const std::vector<std::string> components = {"ui",     "ui.widgets", "core", "core.pricing",
                                                 "core.orders", "data",  "data.jdbc", "common",
                                                 "report", "gateway",    "batch", "monitor"};
    // varied statement shapes keep the unit stream from degenerating
    const std::vector<std::string> statements = {
        "        int v@ = base + @;\n",
        "        total = total * 3 + v@;\n",
        "        if (total > @) {\n            total -= v@;\n        }\n",
        "        helper.accept(\"tag@\", v@);\n",
        "        while (v@ > 0) {\n            v@--;\n        }\n",
        "        log.note(\"step @\");\n",
        "        for (int k@ = 0; k@ < @; k@++) {\n            total += k@;\n        }\n",
        "        long w@ = total % (@ + 7);\n",
        "        flags[@ % flags.length] = total > w@;\n",
        "        switch (v@ % 3) {\n            case 0: total++; break;\n            "
        "case 1: total--; break;\n            default: totalstay();\n        }\n",
    };
    std::uniform_int_distribution<int> stmt(0, static_cast<int>(statements.size()) - 1);
    std::uniform_int_distribution<int> num(1, 997);

    // a cloned block planted into three files
    std::string cloned_block;
    for (int i = 0; i < 14; ++i) {
        std::string s = statements[static_cast<std::size_t>(stmt(rng))];
        std::string n = std::to_string(100 + i);
        std::string expanded;
        for (char c : s)
            if (c == '@') expanded += n; else expanded += c;
        cloned_block += expanded;
    }

    for (int f = 0; f < files; ++f) {
        const std::string& comp = components[static_cast<std::size_t>(f) % components.size()];
        std::string pkg = "app." + comp;
        fs::path dir = root;
        for (const auto& part : split(pkg, '.')) dir /= part;
        fs::create_directories(dir);
        std::ostringstream src;
        src << "package " << pkg << ";\n\n";
        int target = (f * 7) % files;
        const std::string& target_comp =
            components[static_cast<std::size_t>(target) % components.size()];
        src << "import app." << target_comp << ".C" << target << ";\n\n";
        src << "public class C" << f << " {\n";
        src << "    private long total;\n";
        src << "    private boolean[] flags = new boolean[16];\n\n";
        for (int m = 0; m < methods_per_file; ++m) {
            src << "    public long run" << m << "(int base) {\n";
            int n_statements = 8 + (m * 3) % 9;
            for (int s = 0; s < n_statements; ++s) {
                std::string text = statements[static_cast<std::size_t>(stmt(rng))];
                std::string n = std::to_string(num(rng));
                for (char c : text)
                    if (c == '@') src << n; else src << c;
            }
            if (m == 1 && f % 83 == 0) src << cloned_block;
            src << "        return total;\n    }\n\n";
        }
        src << "    public C" << target << " partner() {\n        return new C" << target
            << "();\n    }\n";
        src << "}\n";
        std::ofstream file(dir / ("C" + std::to_string(f) + ".java"));
        file << src.str();
    }
}

Outcome criterion_effort() {
    Outcome out;
    fs::path root = fs::temp_directory_path() / "quastat_big_corpus";
    fs::remove_all(root);
    write_synthetic_corpus(root, 280, 14);

    Corpus corpus = load_corpus(root, ExclusionFilter{}, Language::JavaLike);
    std::size_t loc = corpus.total_loc();
    out.require(loc >= 100000, "synthetic corpus too small: " + std::to_string(loc) + " lines");

    auto cd_start = Clock::now();
    CorpusUnits units = build_units(corpus);
    CloneReport clones = detect_clones(units, CloneConfig{});
    double cd_seconds = seconds_since(cd_start);
    out.require(cd_seconds <= 300.0,
                "clone detection took " + std::to_string(cd_seconds) + " s (> 5 min)");
    out.require(!clones.classes.empty(), "planted clones not found in the synthetic corpus");

    auto ac_start = Clock::now();
    ExtractionResult extraction = extract_dependencies(corpus);
    ReflexionModel model = load_reflexion_model(kFixtures / "arch" / "big_model.json");
    EntityMapping mapping = map_entities(model, extraction.entities);
    ConformanceReport conformance = check_conformance(model, extraction.facts, mapping);
    classify_violations(conformance, model, extraction.facts, mapping);
    double ac_seconds = seconds_since(ac_start);
    out.require(ac_seconds <= 10.0,
                "conformance checking took " + std::to_string(ac_seconds) + " s (> 10 s)");

    std::ostringstream os;
    os << loc << " LoC: clone detection " << cd_seconds << " s, conformance " << ac_seconds
       << " s";
    if (out.pass) out.detail = os.str();
    fs::remove_all(root);
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "clone metric arithmetic over the 15 reference rows", criterion_clone_arithmetic},
        {2, "clone detection equals the brute-force oracle", criterion_oracle_equivalence},
        {3, "gapped parameter semantics", criterion_gapped_semantics},
        {4, "architecture conformance counts and properties", criterion_architecture},
        {5, "findings density and filter monotonicity", criterion_findings_density},
        {6, "ranking reproduction including ties and the SO4 shift", criterion_ranking},
        {7, "quality model property suite", criterion_quality_model},
        {8, "pipeline determinism and compose-equivalence", criterion_pipeline},
        {9, "effort sanity on a 100 kLoC corpus", criterion_effort},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        if (!outcome.pass) ++failures;
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
                  << c.name;
        if (!outcome.detail.empty()) std::cout << " -- " << outcome.detail;
        if (outcome.extra_failures > 0)
            std::cout << " (+" << outcome.extra_failures << " similar)";
        std::cout << "\n";
    }
    if (failures > 0)
        std::cout << failures << " criterion(s) failed\n";
    else
        std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
