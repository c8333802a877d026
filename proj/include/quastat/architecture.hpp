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

#ifndef QUASTAT_ARCHITECTURE_HPP
#define QUASTAT_ARCHITECTURE_HPP

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <deque>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "quastat/core.hpp"
#include "quastat/source_model.hpp"

namespace quastat {

// ---------------------------------------------------------------------------
// Dependency facts extracted from source text
// ---------------------------------------------------------------------------

enum class EntityKind { Namespace, Type, File };

struct CodeEntity {
    std::string qualified_name;
    EntityKind kind = EntityKind::Type;
    std::string file;
};

enum class DependencyKind { Import, TypeReference, Inheritance, Call };

inline const char* to_string(DependencyKind k) {
    switch (k) {
        case DependencyKind::Import: return "import";
        case DependencyKind::TypeReference: return "type_reference";
        case DependencyKind::Inheritance: return "inheritance";
        case DependencyKind::Call: return "call";
    }
    return "?";
}

struct DependencyFact {
    std::string from;  // qualified type name
    std::string to;
    DependencyKind kind = DependencyKind::TypeReference;
    std::string file;
    int line = 0;
};

struct ExtractionResult {
    std::vector<CodeEntity> entities;  // corpus-declared types
    std::vector<DependencyFact> facts;
    std::size_t unresolved = 0;  // type-looking references with no corpus target
    Warnings warnings;
};

namespace detail {

struct DottedChain {
    std::vector<std::string> names;
    int line = 0;
    std::size_t next_index = 0;  // token index after the chain
};

// Reads a maximal Identifier(.Identifier)* chain starting at `i`.
inline std::optional<DottedChain> read_chain(const std::vector<Token>& tokens, std::size_t i) {
    if (i >= tokens.size() || tokens[i].kind != TokenKind::Identifier) return std::nullopt;
    DottedChain chain;
    chain.line = tokens[i].line;
    chain.names.emplace_back(tokens[i].text);
    std::size_t k = i + 1;
    while (k + 1 < tokens.size() && tokens[k].text == "." &&
           tokens[k + 1].kind == TokenKind::Identifier) {
        chain.names.emplace_back(tokens[k + 1].text);
        k += 2;
    }
    chain.next_index = k;
    return chain;
}

inline std::string join_dotted(const std::vector<std::string>& names, std::size_t count) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) out += '.';
        out += names[i];
    }
    return out;
}

inline bool looks_like_type(const std::string& name) {
    return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

}  // namespace detail

/// Extracts import/using, inheritance and type-reference facts from source
/// text. Names are resolved against corpus-declared types only; references to
/// external types are dropped and counted. This is a heuristic front end, not
/// a compiler: reflective and run-time-bound dependencies stay invisible.
inline ExtractionResult extract_dependencies(const Corpus& corpus) {
    ExtractionResult result;

    struct FileScan {
        std::string path;
        std::string package;
        std::vector<std::string> type_imports;      // fully qualified
        std::vector<std::string> wildcard_imports;  // package prefixes
        std::map<std::string, std::string> aliases;
        std::vector<std::string> declared;  // qualified names, first = primary
        // chains to resolve later: (names, line, followed_by_call, is_new, is_inherit)
        struct Ref {
            std::vector<std::string> names;
            int line;
            bool call;
            bool inherit;
            std::string from;  // enclosing declared type
        };
        std::vector<Ref> refs;
        struct ImportRef {
            std::string target;
            int line;
        };
        std::vector<ImportRef> import_refs;
    };
    std::vector<FileScan> scans;
    std::set<std::string> all_types;

    static const std::set<std::string_view> type_kw = {"class", "interface", "enum", "struct",
                                                       "record"};

    for (const SourceFile& file : corpus.files) {
        TokenStream ts = tokenize(file);
        std::vector<Token> tokens;
        for (const Token& t : ts.tokens)
            if (t.is_significant()) tokens.push_back(t);

        FileScan scan;
        scan.path = file.path;

        struct Scope {
            std::string name;  // qualified
            bool is_type;
        };
        std::vector<Scope> scopes;  // brace-scoped namespaces and types
        std::vector<bool> brace_is_scope;
        std::string file_ns;  // Java package / C# file-scoped namespace

        auto current_prefix = [&]() {
            std::string prefix = file_ns;
            for (const auto& s : scopes) {
                if (!prefix.empty()) prefix += '.';
                prefix += s.name;
            }
            return prefix;
        };
        auto enclosing_type = [&]() -> std::string {
            std::string prefix = file_ns;
            std::string last_type;
            for (const auto& s : scopes) {
                if (!prefix.empty()) prefix += '.';
                prefix += s.name;
                if (s.is_type) last_type = prefix;
            }
            if (!last_type.empty()) return last_type;
            return scan.declared.empty() ? std::string() : scan.declared.front();
        };

        std::size_t i = 0;
        while (i < tokens.size()) {
            const Token& t = tokens[i];

            if (t.kind == TokenKind::Keyword && t.text == "package") {
                if (auto chain = detail::read_chain(tokens, i + 1)) {
                    file_ns = detail::join_dotted(chain->names, chain->names.size());
                    i = chain->next_index;
                    continue;
                }
            }
            if (t.kind == TokenKind::Keyword && t.text == "namespace") {
                if (auto chain = detail::read_chain(tokens, i + 1)) {
                    std::string name = detail::join_dotted(chain->names, chain->names.size());
                    i = chain->next_index;
                    if (i < tokens.size() && tokens[i].text == ";") {
                        file_ns = name;  // file-scoped namespace
                    } else if (i < tokens.size() && tokens[i].text == "{") {
                        scopes.push_back({name, false});
                        brace_is_scope.push_back(true);
                        ++i;
                    }
                    continue;
                }
            }
            if (t.kind == TokenKind::Keyword && t.text == "import") {
                std::size_t k = i + 1;
                if (k < tokens.size() && tokens[k].text == "static") ++k;
                if (auto chain = detail::read_chain(tokens, k)) {
                    bool wildcard = chain->next_index + 1 < tokens.size() &&
                                    tokens[chain->next_index].text == "." &&
                                    tokens[chain->next_index + 1].text == "*";
                    std::string full = detail::join_dotted(chain->names, chain->names.size());
                    if (wildcard) {
                        scan.wildcard_imports.push_back(full);
                    } else {
                        scan.type_imports.push_back(full);
                        scan.import_refs.push_back({full, chain->line});
                    }
                    i = chain->next_index + (wildcard ? 2 : 0);
                    continue;
                }
            }
            if (t.kind == TokenKind::Keyword && t.text == "using") {
                // alias: using X = A.B.C;   import: using A.B;   else: statement
                if (i + 2 < tokens.size() && tokens[i + 1].kind == TokenKind::Identifier &&
                    tokens[i + 2].text == "=") {
                    if (auto chain = detail::read_chain(tokens, i + 3)) {
                        scan.aliases[std::string(tokens[i + 1].text)] =
                            detail::join_dotted(chain->names, chain->names.size());
                        scan.import_refs.push_back(
                            {detail::join_dotted(chain->names, chain->names.size()),
                             chain->line});
                        i = chain->next_index;
                        continue;
                    }
                }
                if (auto chain = detail::read_chain(tokens, i + 1)) {
                    if (chain->next_index < tokens.size() &&
                        tokens[chain->next_index].text == ";") {
                        // namespace import: widens resolution, no fact of its own
                        std::string full = detail::join_dotted(chain->names, chain->names.size());
                        scan.wildcard_imports.push_back(full);
                        i = chain->next_index;
                        continue;
                    }
                }
            }
            if (t.kind == TokenKind::Keyword && type_kw.count(t.text) > 0 &&
                i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::Identifier) {
                std::string name(tokens[i + 1].text);
                std::string prefix = current_prefix();
                std::string qualified = prefix.empty() ? name : prefix + '.' + name;
                scan.declared.push_back(qualified);
                all_types.insert(qualified);
                result.entities.push_back({qualified, EntityKind::Type, file.path});

                // skip generic parameters, then parse extends/implements/base list
                std::size_t k = i + 2;
                if (k < tokens.size() && tokens[k].text == "<") {
                    int depth = 0;
                    while (k < tokens.size()) {
                        if (tokens[k].text == "<") ++depth;
                        if (tokens[k].text == ">") --depth;
                        ++k;
                        if (depth == 0) break;
                    }
                }
                while (k < tokens.size() && tokens[k].text != "{" && tokens[k].text != ";") {
                    const Token& tk = tokens[k];
                    if ((tk.kind == TokenKind::Keyword &&
                         (tk.text == "extends" || tk.text == "implements")) ||
                        tk.text == ":" || tk.text == ",") {
                        if (auto chain = detail::read_chain(tokens, k + 1)) {
                            scan.refs.push_back(
                                {chain->names, chain->line, false, true, qualified});
                            k = chain->next_index;
                            // skip generic arguments of the base type
                            if (k < tokens.size() && tokens[k].text == "<") {
                                int depth = 0;
                                while (k < tokens.size()) {
                                    if (tokens[k].text == "<") ++depth;
                                    if (tokens[k].text == ">") --depth;
                                    ++k;
                                    if (depth == 0) break;
                                }
                            }
                            continue;
                        }
                    }
                    if (tk.kind == TokenKind::Keyword && tk.text == "where") break;  // C#
                    ++k;
                }
                if (k < tokens.size() && tokens[k].text == "{") {
                    scopes.push_back({name, true});
                    brace_is_scope.push_back(true);
                    ++k;
                }
                i = k;
                continue;
            }
            if (t.kind == TokenKind::Keyword && t.text == "new") {
                if (auto chain = detail::read_chain(tokens, i + 1)) {
                    scan.refs.push_back({chain->names, chain->line, false, false,
                                         enclosing_type()});
                    i = chain->next_index;
                    continue;
                }
            }
            if (t.kind == TokenKind::Identifier) {
                auto chain = detail::read_chain(tokens, i);
                bool call = chain->next_index < tokens.size() &&
                            tokens[chain->next_index].text == "(";
                if (!(chain->names.size() == 1 && call))  // plain unqualified call: no fact
                    scan.refs.push_back(
                        {chain->names, chain->line, call, false, enclosing_type()});
                i = chain->next_index;
                continue;
            }
            if (t.text == "{") {
                brace_is_scope.push_back(false);
                ++i;
                continue;
            }
            if (t.text == "}") {
                if (!brace_is_scope.empty()) {
                    if (brace_is_scope.back() && !scopes.empty()) scopes.pop_back();
                    brace_is_scope.pop_back();
                }
                ++i;
                continue;
            }
            ++i;
        }
        scans.push_back(std::move(scan));
    }

    // resolution pass
    std::set<std::string> namespaces;
    for (const auto& qn : all_types) {
        auto pos = qn.rfind('.');
        if (pos != std::string::npos) namespaces.insert(qn.substr(0, pos));
    }

    std::set<std::string> fact_keys;
    auto add_fact = [&](const std::string& from, const std::string& to, DependencyKind kind,
                        const std::string& file, int line) {
        if (from.empty() || to.empty() || from == to) return;
        std::string key = from + '\x1f' + to + '\x1f' + std::string(to_string(kind)) + '\x1f' +
                          file + '\x1f' + std::to_string(line);
        if (fact_keys.insert(key).second)
            result.facts.push_back({from, to, kind, file, line});
    };

    for (const FileScan& scan : scans) {
        std::string package;  // package of the primary declared type
        if (!scan.declared.empty()) {
            auto pos = scan.declared.front().rfind('.');
            if (pos != std::string::npos) package = scan.declared.front().substr(0, pos);
        }

        auto resolve = [&](const std::vector<std::string>& names)
            -> std::pair<std::string, std::size_t> {  // (qualified type, chain prefix length)
            // longest fully/partially qualified prefix that is a corpus type
            for (std::size_t len = names.size(); len >= 1; --len) {
                std::string candidate = detail::join_dotted(names, len);
                if (all_types.count(candidate)) return {candidate, len};
            }
            const std::string& simple = names.front();
            if (auto it = scan.aliases.find(simple); it != scan.aliases.end())
                if (all_types.count(it->second)) return {it->second, 1};
            if (!package.empty() && all_types.count(package + '.' + simple))
                return {package + '.' + simple, 1};
            for (const auto& imp : scan.type_imports)
                if (ends_with(imp, "." + simple) && all_types.count(imp)) return {imp, 1};
            for (const auto& ns : scan.wildcard_imports)
                if (all_types.count(ns + '.' + simple)) return {ns + '.' + simple, 1};
            return {std::string(), 0};
        };

        for (const auto& imp : scan.import_refs) {
            if (all_types.count(imp.target)) {
                add_fact(scan.declared.empty() ? std::string() : scan.declared.front(),
                         imp.target, DependencyKind::Import, scan.path, imp.line);
            } else if (detail::looks_like_type(imp.target.substr(imp.target.rfind('.') + 1))) {
                ++result.unresolved;
            }
        }
        for (const auto& ref : scan.refs) {
            auto [target, prefix_len] = resolve(ref.names);
            if (target.empty()) {
                if (detail::looks_like_type(ref.names.front()) ||
                    (ref.names.size() > 1 && namespaces.count(ref.names.front()) == 0 &&
                     detail::looks_like_type(ref.names.back())))
                    ++result.unresolved;
                continue;
            }
            DependencyKind kind = DependencyKind::TypeReference;
            if (ref.inherit)
                kind = DependencyKind::Inheritance;
            else if (ref.call && prefix_len < ref.names.size())
                kind = DependencyKind::Call;  // Type.member(...)
            add_fact(ref.from, target, kind, scan.path, ref.line);
        }
    }

    std::sort(result.facts.begin(), result.facts.end(),
              [](const DependencyFact& a, const DependencyFact& b) {
                  return std::tie(a.file, a.line, a.from, a.to, a.kind) <
                         std::tie(b.file, b.line, b.from, b.to, b.kind);
              });
    std::sort(result.entities.begin(), result.entities.end(),
              [](const CodeEntity& a, const CodeEntity& b) {
                  return a.qualified_name < b.qualified_name;
              });
    return result;
}

// ---------------------------------------------------------------------------
// Reflexion model
// ---------------------------------------------------------------------------

struct Component {
    std::string name;
    std::string parent;  // empty for top-level components
    std::vector<std::string> map;  // prefixes ("a.b", "a.b.*"), or "re:<regex>"
    bool library = false;
};

enum class RuleEffect { Allow, Deny, Tolerate };

inline RuleEffect rule_effect_from_string(const std::string& s) {
    std::string l = to_lower(s);
    if (l == "allow") return RuleEffect::Allow;
    if (l == "deny") return RuleEffect::Deny;
    if (l == "tolerate") return RuleEffect::Tolerate;
    throw ConfigError("rule effect must be allow/deny/tolerate, got " + s);
}

struct PolicyRule {
    std::string from;
    std::string to;
    RuleEffect effect = RuleEffect::Allow;
};

struct ReflexionModel {
    std::vector<Component> components;
    std::vector<PolicyRule> rules;
    std::vector<std::string> layers;   // ordered top to bottom, optional
    std::vector<std::string> exclude;  // entity patterns ignored entirely

    const Component* find(const std::string& name) const {
        for (const auto& c : components)
            if (c.name == name) return &c;
        return nullptr;
    }

    /// True if `ancestor` equals `name` or is reachable via parent links.
    bool is_same_or_ancestor(const std::string& ancestor, const std::string& name) const {
        std::string cur = name;
        int guard = 0;
        while (!cur.empty() && guard++ < 64) {
            if (cur == ancestor) return true;
            const Component* c = find(cur);
            cur = c ? c->parent : std::string();
        }
        return false;
    }

    void validate() const {
        std::set<std::string> names;
        for (const auto& c : components) {
            if (!names.insert(c.name).second)
                throw ConfigError("duplicate component name: " + c.name);
        }
        for (const auto& c : components)
            if (!c.parent.empty() && names.count(c.parent) == 0)
                throw ConfigError("component " + c.name + " has unknown parent " + c.parent);
        for (const auto& r : rules) {
            if (names.count(r.from) == 0)
                throw ConfigError("rule references unknown component " + r.from);
            if (names.count(r.to) == 0)
                throw ConfigError("rule references unknown component " + r.to);
        }
        for (const auto& l : layers)
            if (names.count(l) == 0) throw ConfigError("layer references unknown component " + l);
    }
};

// ---------------------------------------------------------------------------
// Entity -> component mapping
// ---------------------------------------------------------------------------

struct EntityMapping {
    std::map<std::string, std::string> component_of;
    std::vector<std::string> unmapped;
    std::vector<std::string> excluded;
    std::vector<std::string> errors;  // ambiguous equal-length matches
};

namespace detail {

// Match strength is the literal prefix length; -1 when the pattern does not
// match. Exact names beat prefix patterns of the same stem.
inline int pattern_strength(const std::string& pattern, const std::string& name) {
    if (starts_with(pattern, "re:")) {
        std::regex re(pattern.substr(3));
        return std::regex_match(name, re) ? static_cast<int>(pattern.size()) - 3 : -1;
    }
    std::string stem = pattern;
    if (ends_with(stem, ".*")) stem.resize(stem.size() - 2);
    if (name == pattern) return static_cast<int>(pattern.size()) + 1;  // exact
    if (name == stem) return static_cast<int>(stem.size());
    if (starts_with(name, stem + ".")) return static_cast<int>(stem.size());
    return -1;
}

}  // namespace detail

/// Longest-matching pattern wins; ambiguous equal-strength matches by two
/// components are model errors naming both. Excluded entities are absent from
/// the mapping and from conformance checking.
inline EntityMapping map_entities(const ReflexionModel& model,
                                  const std::vector<CodeEntity>& entities) {
    EntityMapping mapping;
    for (const CodeEntity& e : entities) {
        bool excluded = false;
        for (const auto& pat : model.exclude)
            if (detail::pattern_strength(pat, e.qualified_name) >= 0) {
                excluded = true;
                break;
            }
        if (excluded) {
            mapping.excluded.push_back(e.qualified_name);
            continue;
        }
        int best = -1;
        const Component* best_component = nullptr;
        bool ambiguous = false;
        const Component* other = nullptr;
        for (const Component& c : model.components) {
            for (const auto& pat : c.map) {
                int strength = detail::pattern_strength(pat, e.qualified_name);
                if (strength < 0) continue;
                if (strength > best) {
                    best = strength;
                    best_component = &c;
                    ambiguous = false;
                } else if (strength == best && best_component && &c != best_component) {
                    ambiguous = true;
                    other = &c;
                }
            }
        }
        if (ambiguous && best_component && other) {
            mapping.errors.push_back("entity " + e.qualified_name +
                                     " matches both " + best_component->name + " and " +
                                     other->name + " with equal strength");
            continue;
        }
        if (best_component)
            mapping.component_of[e.qualified_name] = best_component->name;
        else
            mapping.unmapped.push_back(e.qualified_name);
    }
    return mapping;
}

// ---------------------------------------------------------------------------
// Conformance checking and violation classification
// ---------------------------------------------------------------------------

enum class ViolationTaxonomy {
    LayerCircumvention,
    CircularDependency,
    UndocumentedCommonUse,
    DataDependency,
    Other,
};

inline const char* to_string(ViolationTaxonomy t) {
    switch (t) {
        case ViolationTaxonomy::LayerCircumvention: return "layer_circumvention";
        case ViolationTaxonomy::CircularDependency: return "circular_dependency";
        case ViolationTaxonomy::UndocumentedCommonUse: return "undocumented_common_use";
        case ViolationTaxonomy::DataDependency: return "data_dependency";
        case ViolationTaxonomy::Other: return "other";
    }
    return "?";
}

struct Violation {
    DependencyFact fact;
    std::string from_component;
    std::string to_component;
    ViolationTaxonomy taxonomy = ViolationTaxonomy::Other;
};

struct ConformanceReport {
    std::vector<Violation> violations;  // one per violating fact, sorted by location
    std::size_t class_relationships = 0;      // distinct violating (type, type) pairs
    std::size_t component_relationships = 0;  // distinct violating component pairs
    std::vector<std::pair<std::string, std::string>> component_pairs;
    std::size_t tolerated = 0;
    std::vector<std::string> coverage_gaps;  // facts with an unmapped endpoint
    std::size_t intra_component = 0;
    std::size_t allowed = 0;
    std::vector<std::string> model_errors;
};

/// Default deny: a fact whose endpoints map to different components needs an
/// Allow (or Tolerate) rule covering the pair, else it is a violation. Rules
/// naming a parent component cover its sub-components; Allow is never
/// transitive.
inline ConformanceReport check_conformance(const ReflexionModel& model,
                                           const std::vector<DependencyFact>& facts,
                                           const EntityMapping& mapping) {
    ConformanceReport report;
    report.model_errors = mapping.errors;
    std::set<std::string> excluded(mapping.excluded.begin(), mapping.excluded.end());

    std::set<std::pair<std::string, std::string>> class_pairs, component_pairs;
    for (const DependencyFact& fact : facts) {
        if (excluded.count(fact.from) || excluded.count(fact.to)) continue;
        auto f = mapping.component_of.find(fact.from);
        auto t = mapping.component_of.find(fact.to);
        if (f == mapping.component_of.end() || t == mapping.component_of.end()) {
            report.coverage_gaps.push_back(fact.from + " -> " + fact.to);
            continue;
        }
        if (f->second == t->second) {
            ++report.intra_component;
            continue;
        }
        // most specific matching rule wins; ties resolved Deny > Tolerate > Allow
        const PolicyRule* chosen = nullptr;
        int chosen_depth = std::numeric_limits<int>::min();
        for (const PolicyRule& rule : model.rules) {
            if (!model.is_same_or_ancestor(rule.from, f->second)) continue;
            if (!model.is_same_or_ancestor(rule.to, t->second)) continue;
            int depth = 0;
            for (std::string cur = f->second; cur != rule.from;
                 cur = model.find(cur)->parent)
                --depth;
            for (std::string cur = t->second; cur != rule.to; cur = model.find(cur)->parent)
                --depth;
            if (depth > chosen_depth ||
                (depth == chosen_depth && chosen &&
                 static_cast<int>(rule.effect) > static_cast<int>(chosen->effect))) {
                chosen = &rule;
                chosen_depth = depth;
            }
        }
        if (chosen && chosen->effect == RuleEffect::Allow) {
            ++report.allowed;
            continue;
        }
        if (chosen && chosen->effect == RuleEffect::Tolerate) {
            ++report.tolerated;
            continue;
        }
        Violation v;
        v.fact = fact;
        v.from_component = f->second;
        v.to_component = t->second;
        report.violations.push_back(std::move(v));
        class_pairs.emplace(fact.from, fact.to);
        component_pairs.emplace(f->second, t->second);
    }
    report.class_relationships = class_pairs.size();
    report.component_relationships = component_pairs.size();
    report.component_pairs.assign(component_pairs.begin(), component_pairs.end());
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  return std::tie(a.fact.file, a.fact.line, a.fact.from, a.fact.to) <
                         std::tie(b.fact.file, b.fact.line, b.fact.from, b.fact.to);
              });
    return report;
}

/// Assigns the defect taxonomy, first match wins: layer skip, cycle through
/// the component pair, data-only component dependency, use of a library
/// component, otherwise Other.
inline void classify_violations(ConformanceReport& report, const ReflexionModel& model,
                                const std::vector<DependencyFact>& facts,
                                const EntityMapping& mapping) {
    // component edges = allow rules + violating pairs
    std::set<std::pair<std::string, std::string>> edges;
    for (const PolicyRule& r : model.rules)
        if (r.effect == RuleEffect::Allow) edges.emplace(r.from, r.to);
    for (const Violation& v : report.violations) edges.emplace(v.from_component, v.to_component);

    auto reaches = [&](const std::string& from, const std::string& to) {
        std::set<std::string> seen{from};
        std::deque<std::string> queue{from};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            if (cur == to) return true;
            for (const auto& [a, b] : edges)
                if (a == cur && seen.insert(b).second) queue.push_back(b);
        }
        return false;
    };

    std::map<std::string, int> layer_index;
    for (std::size_t i = 0; i < model.layers.size(); ++i)
        layer_index[model.layers[i]] = static_cast<int>(i);

    // component pairs connected by a call or import fact
    std::set<std::pair<std::string, std::string>> call_or_import;
    for (const DependencyFact& f : facts) {
        if (f.kind != DependencyKind::Call && f.kind != DependencyKind::Import) continue;
        auto a = mapping.component_of.find(f.from);
        auto b = mapping.component_of.find(f.to);
        if (a != mapping.component_of.end() && b != mapping.component_of.end())
            call_or_import.emplace(a->second, b->second);
    }

    for (Violation& v : report.violations) {
        auto fi = layer_index.find(v.from_component);
        auto ti = layer_index.find(v.to_component);
        if (fi != layer_index.end() && ti != layer_index.end() &&
            std::abs(fi->second - ti->second) >= 2) {
            v.taxonomy = ViolationTaxonomy::LayerCircumvention;
            continue;
        }
        if (reaches(v.to_component, v.from_component)) {
            v.taxonomy = ViolationTaxonomy::CircularDependency;
            continue;
        }
        if ((v.fact.kind == DependencyKind::TypeReference ||
             v.fact.kind == DependencyKind::Inheritance) &&
            call_or_import.count({v.from_component, v.to_component}) == 0) {
            v.taxonomy = ViolationTaxonomy::DataDependency;
            continue;
        }
        const Component* target = model.find(v.to_component);
        if (target && target->library) {
            v.taxonomy = ViolationTaxonomy::UndocumentedCommonUse;
            continue;
        }
        v.taxonomy = ViolationTaxonomy::Other;
    }
}

}  // namespace quastat

#endif  // QUASTAT_ARCHITECTURE_HPP
