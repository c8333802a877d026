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

#ifndef QUASTAT_QUALITY_MODEL_HPP
#define QUASTAT_QUALITY_MODEL_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quastat/architecture.hpp"
#include "quastat/clone_detection.hpp"
#include "quastat/code_metrics.hpp"
#include "quastat/core.hpp"
#include "quastat/findings.hpp"

namespace quastat {

// ---------------------------------------------------------------------------
// Model structure
// ---------------------------------------------------------------------------

enum class MeasureSource { CloneDetection, Findings, Metrics, ArchConformance, Manual };
enum class MeasureNormalization { PerKLoc, PerEntity, Absolute, Ratio };
enum class EvalDirection { HigherIsWorse, HigherIsBetter };

inline MeasureSource measure_source_from_string(const std::string& s) {
    std::string l = to_lower(s);
    if (l == "clone_detection" || l == "clones") return MeasureSource::CloneDetection;
    if (l == "findings") return MeasureSource::Findings;
    if (l == "metrics") return MeasureSource::Metrics;
    if (l == "arch_conformance" || l == "arch") return MeasureSource::ArchConformance;
    if (l == "manual") return MeasureSource::Manual;
    throw ConfigError("unknown measure source: " + s);
}

inline const char* to_string(MeasureSource s) {
    switch (s) {
        case MeasureSource::CloneDetection: return "clone_detection";
        case MeasureSource::Findings: return "findings";
        case MeasureSource::Metrics: return "metrics";
        case MeasureSource::ArchConformance: return "arch_conformance";
        case MeasureSource::Manual: return "manual";
    }
    return "?";
}

struct Measure {
    std::string id;
    MeasureSource source = MeasureSource::Manual;
    MeasureNormalization normalization = MeasureNormalization::Absolute;
    std::string entity_kind;  // required for PerEntity: method/type/file
};

struct EvaluationSpec {
    double t_low = 0.0;
    double t_high = 1.0;
    EvalDirection direction = EvalDirection::HigherIsWorse;
};

struct ProductFactor {
    std::string id;
    std::string description;
    std::vector<std::pair<std::string, double>> measures;  // (measure id, weight)
    EvaluationSpec eval;
};

enum class ImpactPolarity { Positive, Negative };

struct QualityCharacteristic {
    std::string id;
    // (factor id, weight, polarity). Factors evaluate to goodness utilities,
    // so polarity documents the direction of influence and does not flip the
    // arithmetic; the flip lives in the factor's evaluation direction.
    struct Impact {
        std::string factor;
        double weight = 1.0;
        ImpactPolarity polarity = ImpactPolarity::Negative;
    };
    std::vector<Impact> impacts;
    std::vector<std::pair<std::string, double>> children;  // (characteristic id, weight)
};

struct QualityModelSpec {
    std::string name;
    std::string root;
    std::vector<Measure> measures;
    std::vector<ProductFactor> factors;
    std::vector<QualityCharacteristic> characteristics;

    const Measure* find_measure(const std::string& id) const {
        for (const auto& m : measures)
            if (m.id == id) return &m;
        return nullptr;
    }
    const ProductFactor* find_factor(const std::string& id) const {
        for (const auto& f : factors)
            if (f.id == id) return &f;
        return nullptr;
    }
    const QualityCharacteristic* find_characteristic(const std::string& id) const {
        for (const auto& c : characteristics)
            if (c.id == id) return &c;
        return nullptr;
    }
};

namespace detail {

// Measure ids resolvable per source; unknown ids are load-time errors so
// typos surface before any analysis runs.
inline const std::set<std::string>& known_measures(MeasureSource source) {
    static const std::set<std::string> clones = {"clone_coverage", "blow_up",  "longest_clone",
                                                 "most_instances", "cloned_units",
                                                 "analysed_units"};
    static const std::set<std::string> findings = {"findings_total", "findings_critical",
                                                   "findings_bug",   "findings_smell",
                                                   "findings_pedantry"};
    static const std::set<std::string> metrics = {
        "loc",       "sloc",          "comment_ratio",  "n_types",
        "n_methods", "n_statements",  "max_cyclomatic", "max_nested_depth"};
    static const std::set<std::string> arch = {"arch_class_violations",
                                               "arch_component_violations",
                                               "arch_violation_facts"};
    static const std::set<std::string> none = {};
    switch (source) {
        case MeasureSource::CloneDetection: return clones;
        case MeasureSource::Findings: return findings;
        case MeasureSource::Metrics: return metrics;
        case MeasureSource::ArchConformance: return arch;
        case MeasureSource::Manual: return none;  // any id accepted
    }
    return none;
}

}  // namespace detail

inline void validate_model(const QualityModelSpec& model) {
    std::set<std::string> measure_ids, factor_ids, char_ids;
    for (const auto& m : model.measures) {
        if (!measure_ids.insert(m.id).second)
            throw ConfigError("duplicate measure id: " + m.id);
        if (m.source != MeasureSource::Manual &&
            detail::known_measures(m.source).count(m.id) == 0)
            throw ConfigError("measure " + m.id + " is not resolvable from source " +
                              to_string(m.source));
        if (m.normalization == MeasureNormalization::PerEntity && m.entity_kind.empty())
            throw ConfigError("measure " + m.id + " uses per_entity but has no entity_kind");
    }
    for (const auto& f : model.factors) {
        if (!factor_ids.insert(f.id).second) throw ConfigError("duplicate factor id: " + f.id);
        if (f.measures.empty()) throw ConfigError("factor " + f.id + " has no measures");
        double sum = 0;
        for (const auto& [mid, w] : f.measures) {
            if (measure_ids.count(mid) == 0)
                throw ConfigError("factor " + f.id + " references unknown measure " + mid);
            if (w < 0) throw ConfigError("factor " + f.id + " has negative weight");
            sum += w;
        }
        if (sum <= 0) throw ConfigError("factor " + f.id + " weights sum to zero");
        if (!(f.eval.t_low < f.eval.t_high))
            throw ConfigError("factor " + f.id + " needs t_low < t_high");
    }
    for (const auto& c : model.characteristics) {
        if (!char_ids.insert(c.id).second)
            throw ConfigError("duplicate characteristic id: " + c.id);
    }
    for (const auto& c : model.characteristics) {
        double sum = 0;
        for (const auto& imp : c.impacts) {
            if (factor_ids.count(imp.factor) == 0)
                throw ConfigError("characteristic " + c.id + " references unknown factor " +
                                  imp.factor);
            if (imp.weight < 0) throw ConfigError("characteristic " + c.id + " negative weight");
            sum += imp.weight;
        }
        for (const auto& [cid, w] : c.children) {
            if (char_ids.count(cid) == 0)
                throw ConfigError("characteristic " + c.id +
                                  " references unknown characteristic " + cid);
            if (w < 0) throw ConfigError("characteristic " + c.id + " negative child weight");
            sum += w;
        }
        if (c.impacts.empty() && c.children.empty())
            throw ConfigError("characteristic " + c.id + " has no impacts or children");
        if (sum <= 0) throw ConfigError("characteristic " + c.id + " weights sum to zero");
    }
    if (model.root.empty() || char_ids.count(model.root) == 0)
        throw ConfigError("model root characteristic missing: " + model.root);

    // cycle check over the children graph
    std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::vector<std::string> stack;
    auto dfs = [&](auto&& self, const std::string& id) -> void {
        state[id] = 1;
        stack.push_back(id);
        const QualityCharacteristic* c = model.find_characteristic(id);
        for (const auto& [child, w] : c->children) {
            (void)w;
            if (state[child] == 1) {
                std::string msg = "characteristic cycle: ";
                auto it = std::find(stack.begin(), stack.end(), child);
                for (; it != stack.end(); ++it) msg += *it + " -> ";
                msg += child;
                throw ConfigError(msg);
            }
            if (state[child] == 0) self(self, child);
        }
        stack.pop_back();
        state[id] = 2;
    };
    for (const auto& c : model.characteristics)
        if (state[c.id] == 0) dfs(dfs, c.id);
}

inline QualityModelSpec load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read quality model: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("quality model is not valid JSON: " + std::string(e.what()));
    }
    QualityModelSpec model;
    model.name = doc.value("name", "");
    model.root = doc.value("root", "");
    for (const auto& m : doc.value("measures", nlohmann::json::array())) {
        Measure measure;
        measure.id = m.at("id").get<std::string>();
        measure.source = measure_source_from_string(m.at("source").get<std::string>());
        std::string norm = to_lower(m.value("normalization", "absolute"));
        if (norm == "per_kloc") measure.normalization = MeasureNormalization::PerKLoc;
        else if (norm == "per_entity") measure.normalization = MeasureNormalization::PerEntity;
        else if (norm == "ratio") measure.normalization = MeasureNormalization::Ratio;
        else if (norm == "absolute") measure.normalization = MeasureNormalization::Absolute;
        else throw ConfigError("unknown normalization: " + norm);
        measure.entity_kind = to_lower(m.value("entity_kind", ""));
        model.measures.push_back(std::move(measure));
    }
    for (const auto& f : doc.value("factors", nlohmann::json::array())) {
        ProductFactor factor;
        factor.id = f.at("id").get<std::string>();
        factor.description = f.value("description", "");
        for (const auto& mw : f.value("measures", nlohmann::json::array()))
            factor.measures.emplace_back(mw.at("measure").get<std::string>(),
                                         mw.value("weight", 1.0));
        const auto& ev = f.at("eval");
        factor.eval.t_low = ev.at("t_low").get<double>();
        factor.eval.t_high = ev.at("t_high").get<double>();
        std::string dir = to_lower(ev.value("direction", "higher_is_worse"));
        factor.eval.direction = dir == "higher_is_better" ? EvalDirection::HigherIsBetter
                                                          : EvalDirection::HigherIsWorse;
        model.factors.push_back(std::move(factor));
    }
    for (const auto& c : doc.value("characteristics", nlohmann::json::array())) {
        QualityCharacteristic ch;
        ch.id = c.at("id").get<std::string>();
        for (const auto& imp : c.value("impacts", nlohmann::json::array())) {
            QualityCharacteristic::Impact impact;
            impact.factor = imp.at("factor").get<std::string>();
            impact.weight = imp.value("weight", 1.0);
            impact.polarity = to_lower(imp.value("polarity", "negative")) == "positive"
                                  ? ImpactPolarity::Positive
                                  : ImpactPolarity::Negative;
            ch.impacts.push_back(std::move(impact));
        }
        for (const auto& child : c.value("children", nlohmann::json::array()))
            ch.children.emplace_back(child.at("id").get<std::string>(),
                                     child.value("weight", 1.0));
        model.characteristics.push_back(std::move(ch));
    }
    validate_model(model);
    return model;
}

// ---------------------------------------------------------------------------
// Measurement collection
// ---------------------------------------------------------------------------

/// Normalized value per measure; absent key or nullopt means Missing.
/// Missing never silently becomes zero.
using MeasurementSet = std::map<std::string, std::optional<double>>;

struct MeasurementInputs {
    const CloneReport* clones = nullptr;
    const FindingsReport* findings = nullptr;
    const MetricsProfile* metrics = nullptr;
    const ConformanceReport* arch = nullptr;
    std::map<std::string, double> manual;
};

inline MeasurementSet collect_measurements(const QualityModelSpec& model,
                                           const MeasurementInputs& in) {
    MeasurementSet values;
    auto raw = [&](const Measure& m) -> std::optional<double> {
        switch (m.source) {
            case MeasureSource::CloneDetection: {
                if (!in.clones) return std::nullopt;
                const CloneReport& r = *in.clones;
                if (m.id == "clone_coverage") return r.unit_coverage / 100.0;
                if (m.id == "blow_up") return r.blow_up / 100.0;
                if (m.id == "longest_clone") return static_cast<double>(r.longest_clone);
                if (m.id == "most_instances") return static_cast<double>(r.most_instances);
                if (m.id == "cloned_units") return static_cast<double>(r.cloned_units);
                if (m.id == "analysed_units") return static_cast<double>(r.analysed_units);
                return std::nullopt;
            }
            case MeasureSource::Findings: {
                if (!in.findings) return std::nullopt;
                const FindingsReport& r = *in.findings;
                if (m.id == "findings_total") return static_cast<double>(r.total);
                if (m.id == "findings_critical") return static_cast<double>(r.critical_count);
                if (m.id == "findings_bug")
                    return static_cast<double>(r.per_classification.at("bug"));
                if (m.id == "findings_smell")
                    return static_cast<double>(r.per_classification.at("smell"));
                if (m.id == "findings_pedantry")
                    return static_cast<double>(r.per_classification.at("pedantry"));
                return std::nullopt;
            }
            case MeasureSource::Metrics: {
                if (!in.metrics) return std::nullopt;
                const MetricsProfile& p = *in.metrics;
                if (m.id == "loc") return static_cast<double>(p.loc);
                if (m.id == "sloc") return static_cast<double>(p.sloc);
                if (m.id == "comment_ratio") return p.comment_ratio;
                if (m.id == "n_types") return static_cast<double>(p.n_types);
                if (m.id == "n_methods") return static_cast<double>(p.n_methods);
                if (m.id == "n_statements") return static_cast<double>(p.n_statements);
                if (m.id == "max_cyclomatic") return static_cast<double>(p.max_cyclomatic);
                if (m.id == "max_nested_depth") return static_cast<double>(p.max_nested_depth);
                return std::nullopt;
            }
            case MeasureSource::ArchConformance: {
                if (!in.arch) return std::nullopt;
                const ConformanceReport& r = *in.arch;
                if (m.id == "arch_class_violations")
                    return static_cast<double>(r.class_relationships);
                if (m.id == "arch_component_violations")
                    return static_cast<double>(r.component_relationships);
                if (m.id == "arch_violation_facts")
                    return static_cast<double>(r.violations.size());
                return std::nullopt;
            }
            case MeasureSource::Manual: {
                auto it = in.manual.find(m.id);
                if (it == in.manual.end()) return std::nullopt;
                return it->second;
            }
        }
        return std::nullopt;
    };

    for (const Measure& m : model.measures) {
        std::optional<double> v = raw(m);
        if (v.has_value()) {
            switch (m.normalization) {
                case MeasureNormalization::PerKLoc: {
                    if (!in.metrics || in.metrics->loc == 0) {
                        v = std::nullopt;
                        break;
                    }
                    v = *v * 1000.0 / static_cast<double>(in.metrics->loc);
                    break;
                }
                case MeasureNormalization::PerEntity: {
                    std::optional<double> denom;
                    if (in.metrics) {
                        if (m.entity_kind == "method")
                            denom = static_cast<double>(in.metrics->n_methods);
                        else if (m.entity_kind == "type")
                            denom = static_cast<double>(in.metrics->n_types);
                        else if (m.entity_kind == "file")
                            denom = static_cast<double>(in.metrics->n_files);
                    }
                    if (!denom.has_value() || *denom == 0.0)
                        v = std::nullopt;
                    else
                        v = *v / *denom;
                    break;
                }
                case MeasureNormalization::Absolute:
                case MeasureNormalization::Ratio:
                    break;
            }
        }
        values[m.id] = v;
    }
    return values;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Grades map linearly: 1.0 is the best, 6.0 the worst.
inline double to_grade(double utility) {
    if (utility < -1e-9 || utility > 1.0 + 1e-9)
        throw Error("utility out of [0,1]: " + std::to_string(utility));
    utility = std::clamp(utility, 0.0, 1.0);
    return 6.0 - 5.0 * utility;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool is_point() const { return lo == hi; }
};

struct NodeResult {
    Interval utility;        // [best-case, worst-case] when inputs are missing
    Interval grade;          // grade(utility), bounds swapped accordingly
    bool all_missing = false;
};

struct Assessment {
    MeasurementSet per_measure;
    std::map<std::string, NodeResult> per_factor;
    std::map<std::string, NodeResult> per_characteristic;
    std::string root;
    Interval overall_grade;
};

namespace detail {

inline Interval grade_interval(const Interval& utility) {
    return {to_grade(utility.hi), to_grade(utility.lo)};
}

}  // namespace detail

/// Factor utility: piecewise-linear interpolation of the weighted mean
/// measure value between t_low and t_high, clamped to [0,1]. Missing measures
/// drop out of the mean with their weight; a factor with every measure
/// missing contributes the full [0,1] interval, which propagates upward as
/// grade intervals mirroring assessments with missing manual reviews.
inline Assessment evaluate(const QualityModelSpec& model, const MeasurementSet& measurements) {
    Assessment assessment;
    assessment.per_measure = measurements;
    assessment.root = model.root;

    for (const ProductFactor& f : model.factors) {
        double weight_sum = 0.0, value_sum = 0.0;
        bool any = false;
        for (const auto& [mid, w] : f.measures) {
            auto it = measurements.find(mid);
            if (it == measurements.end() || !it->second.has_value()) continue;
            value_sum += w * *it->second;
            weight_sum += w;
            any = true;
        }
        NodeResult node;
        if (!any || weight_sum == 0.0) {
            node.all_missing = true;
            node.utility = {0.0, 1.0};
        } else {
            double value = value_sum / weight_sum;
            double t = (value - f.eval.t_low) / (f.eval.t_high - f.eval.t_low);
            t = std::clamp(t, 0.0, 1.0);
            double utility =
                f.eval.direction == EvalDirection::HigherIsWorse ? 1.0 - t : t;
            node.utility = {utility, utility};
        }
        node.grade = detail::grade_interval(node.utility);
        assessment.per_factor[f.id] = node;
    }

    // characteristics in dependency order (children first)
    auto eval_char = [&](auto&& self, const std::string& id) -> NodeResult {
        auto done = assessment.per_characteristic.find(id);
        if (done != assessment.per_characteristic.end()) return done->second;
        const QualityCharacteristic* c = model.find_characteristic(id);
        double weight_sum = 0.0, lo_sum = 0.0, hi_sum = 0.0;
        bool all_missing = true;
        for (const auto& imp : c->impacts) {
            const NodeResult& f = assessment.per_factor.at(imp.factor);
            lo_sum += imp.weight * f.utility.lo;
            hi_sum += imp.weight * f.utility.hi;
            weight_sum += imp.weight;
            if (!f.all_missing) all_missing = false;
        }
        for (const auto& [child, w] : c->children) {
            NodeResult sub = self(self, child);
            lo_sum += w * sub.utility.lo;
            hi_sum += w * sub.utility.hi;
            weight_sum += w;
            if (!sub.all_missing) all_missing = false;
        }
        NodeResult node;
        node.all_missing = all_missing;
        node.utility = {lo_sum / weight_sum, hi_sum / weight_sum};
        node.grade = detail::grade_interval(node.utility);
        assessment.per_characteristic[id] = node;
        return node;
    };
    for (const auto& c : model.characteristics) eval_char(eval_char, c.id);

    assessment.overall_grade = assessment.per_characteristic.at(model.root).grade;
    return assessment;
}

}  // namespace quastat

#endif  // QUASTAT_QUALITY_MODEL_HPP
