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

#ifndef QUASTAT_CODE_METRICS_HPP
#define QUASTAT_CODE_METRICS_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "quastat/core.hpp"
#include "quastat/source_model.hpp"

namespace quastat {

struct MethodMetrics {
    std::string file;
    std::string name;
    int line = 0;
    int cyclomatic = 1;   // McCabe-approximate, token-counted
    int max_depth = 0;    // brace nesting inside the body
    int statements = 0;   // units in the body, signature unit excluded
};

struct MetricsProfile {
    std::size_t loc = 0;            // total lines
    std::size_t sloc = 0;           // lines with at least one code token
    std::size_t comment_lines = 0;  // lines carrying comment content
    double comment_ratio = 0.0;     // comment_lines / loc
    std::size_t n_files = 0;
    std::size_t n_types = 0;
    std::size_t n_methods = 0;
    std::size_t n_statements = 0;
    int max_cyclomatic = 0;
    int max_nested_depth = 0;
    std::vector<MethodMetrics> per_method;
    Warnings warnings;
};

namespace detail {

inline bool is_branch_token(const Token& t) {
    if (t.kind == TokenKind::Keyword)
        return t.text == "if" || t.text == "for" || t.text == "foreach" || t.text == "while" ||
               t.text == "do" || t.text == "case" || t.text == "catch";
    if (t.kind == TokenKind::Operator)
        return t.text == "&&" || t.text == "||" || t.text == "?";
    return false;
}

}  // namespace detail

/// Token-heuristic metrics: cc(method) = 1 + branch tokens in the span,
/// depth(method) = max brace nesting inside the body relative to the body
/// start. `default` labels and operators inside string literals never count.
inline MetricsProfile compute_profile(const Corpus& corpus) {
    MetricsProfile profile;
    profile.n_files = corpus.files.size();

    for (const SourceFile& file : corpus.files) {
        FileAnalysis fa = analyze_file(file);
        const std::vector<Token>& tokens = fa.stream.tokens;
        for (auto& w : fa.stream.warnings) profile.warnings.push_back(w);
        for (auto& w : fa.warnings) profile.warnings.push_back(w);

        profile.loc += file.line_count();
        profile.n_types += static_cast<std::size_t>(fa.type_count);
        profile.n_methods += fa.methods.size();

        std::set<int> code_lines, comment_lines;
        for (const Token& t : tokens) {
            int span_lines = static_cast<int>(std::count(t.text.begin(), t.text.end(), '\n'));
            if (t.is_comment()) {
                for (int l = t.line; l <= t.line + span_lines; ++l) comment_lines.insert(l);
            } else if (t.is_significant()) {
                for (int l = t.line; l <= t.line + span_lines; ++l) code_lines.insert(l);
            }
        }
        profile.sloc += code_lines.size();
        profile.comment_lines += comment_lines.size();

        for (const MethodSpan& span : fa.methods) {
            MethodMetrics mm;
            mm.file = file.path;
            mm.name = span.name;
            mm.line = span.signature_line;
            mm.statements = std::max(0, span.end_unit - span.begin_unit - 1);

            const Unit& sig_unit = fa.units[static_cast<std::size_t>(span.begin_unit)];
            int tok_begin = sig_unit.token_begin;
            int tok_end = span.end_unit > span.begin_unit
                              ? fa.units[static_cast<std::size_t>(span.end_unit - 1)].token_end
                              : sig_unit.token_end;

            int cc = 1;
            for (int k = tok_begin; k < tok_end; ++k)
                if (detail::is_branch_token(tokens[static_cast<std::size_t>(k)])) ++cc;
            mm.cyclomatic = cc;

            int depth = 0, max_depth = 0;
            for (int k = sig_unit.token_end; k < tok_end; ++k) {
                const Token& t = tokens[static_cast<std::size_t>(k)];
                if (t.text == "{" && t.kind == TokenKind::Punctuation) {
                    ++depth;
                    max_depth = std::max(max_depth, depth);
                } else if (t.text == "}" && t.kind == TokenKind::Punctuation) {
                    --depth;
                }
            }
            mm.max_depth = max_depth;

            profile.n_statements += static_cast<std::size_t>(mm.statements);
            profile.max_cyclomatic = std::max(profile.max_cyclomatic, mm.cyclomatic);
            profile.max_nested_depth = std::max(profile.max_nested_depth, mm.max_depth);
            profile.per_method.push_back(std::move(mm));
        }
    }
    profile.comment_ratio =
        profile.loc == 0 ? 0.0
                         : static_cast<double>(profile.comment_lines) /
                               static_cast<double>(profile.loc);
    return profile;
}

// ---------------------------------------------------------------------------
// Threshold checks
// ---------------------------------------------------------------------------

struct Threshold {
    enum class Op { GT, GE, LT, LE };
    enum class Scope { Method, Corpus };

    std::string metric;
    Op op = Op::GT;
    double value = 0.0;
    Scope scope = Scope::Method;

    /// Parses "cc:gt:10" / "depth:gt:5" / "comment_ratio:lt:0.1".
    static Threshold parse(const std::string& text) {
        auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("threshold must be metric:op:value, got " + text);
        Threshold t;
        t.metric = to_lower(parts[0]);
        std::string op = to_lower(parts[1]);
        if (op == "gt")
            t.op = Op::GT;
        else if (op == "ge")
            t.op = Op::GE;
        else if (op == "lt")
            t.op = Op::LT;
        else if (op == "le")
            t.op = Op::LE;
        else
            throw ConfigError("threshold op must be gt/ge/lt/le, got " + parts[1]);
        try {
            t.value = std::stod(parts[2]);
        } catch (const std::exception&) {
            throw ConfigError("threshold value is not a number: " + parts[2]);
        }
        static const std::set<std::string> method_metrics = {"cc", "depth", "statements"};
        static const std::set<std::string> corpus_metrics = {
            "loc",       "sloc",      "comment_ratio", "n_types",       "n_methods",
            "n_statements", "max_cyclomatic", "max_nested_depth"};
        if (method_metrics.count(t.metric)) {
            t.scope = Scope::Method;
        } else if (corpus_metrics.count(t.metric)) {
            t.scope = Scope::Corpus;
        } else {
            std::string valid = "cc, depth, statements";
            for (const auto& m : corpus_metrics) valid += ", " + m;
            throw ConfigError("unknown metric '" + t.metric + "' (valid: " + valid + ")");
        }
        return t;
    }

    bool exceeded(double observed) const {
        switch (op) {
            case Op::GT: return observed > value;
            case Op::GE: return observed >= value;
            case Op::LT: return observed < value;
            case Op::LE: return observed <= value;
        }
        return false;
    }
};

struct ThresholdViolation {
    std::string metric;
    std::string subject;  // "file:line name" for methods, "corpus" otherwise
    double observed = 0.0;
    double bound = 0.0;
};

inline std::vector<ThresholdViolation> check_thresholds(const MetricsProfile& profile,
                                                        const std::vector<Threshold>& thresholds) {
    std::vector<ThresholdViolation> out;
    for (const Threshold& t : thresholds) {
        if (t.scope == Threshold::Scope::Method) {
            for (const MethodMetrics& m : profile.per_method) {
                double observed = t.metric == "cc"        ? m.cyclomatic
                                  : t.metric == "depth"   ? m.max_depth
                                                          : m.statements;
                if (t.exceeded(observed))
                    out.push_back({t.metric,
                                   m.file + ":" + std::to_string(m.line) + " " + m.name, observed,
                                   t.value});
            }
        } else {
            double observed = 0.0;
            if (t.metric == "loc") observed = static_cast<double>(profile.loc);
            else if (t.metric == "sloc") observed = static_cast<double>(profile.sloc);
            else if (t.metric == "comment_ratio") observed = profile.comment_ratio;
            else if (t.metric == "n_types") observed = static_cast<double>(profile.n_types);
            else if (t.metric == "n_methods") observed = static_cast<double>(profile.n_methods);
            else if (t.metric == "n_statements")
                observed = static_cast<double>(profile.n_statements);
            else if (t.metric == "max_cyclomatic")
                observed = profile.max_cyclomatic;
            else if (t.metric == "max_nested_depth")
                observed = profile.max_nested_depth;
            if (t.exceeded(observed)) out.push_back({t.metric, "corpus", observed, t.value});
        }
    }
    return out;
}

}  // namespace quastat

#endif  // QUASTAT_CODE_METRICS_HPP
