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
// Brute-force reference implementations used only by tests. They share no
// code with the production detection paths.

#ifndef QUASTAT_TEST_ORACLES_HPP
#define QUASTAT_TEST_ORACLES_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Conventional clones: all maximal repeats via iterative group refinement
// ---------------------------------------------------------------------------

struct Occurrence {
    int file;
    int offset;
    bool operator<(const Occurrence& o) const {
        return file != o.file ? file < o.file : offset < o.offset;
    }
    bool operator==(const Occurrence& o) const { return file == o.file && offset == o.offset; }
};

struct RepeatClass {
    int length;
    std::vector<Occurrence> occurrences;  // sorted
    bool operator<(const RepeatClass& o) const {
        if (length != o.length) return length > o.length;
        return occurrences < o.occurrences;
    }
    bool operator==(const RepeatClass& o) const {
        return length == o.length && occurrences == o.occurrences;
    }
};

/// Enumerates every (length, occurrence-set) pair such that the occurrence
/// set holds all positions of the subsequence, the length is >= min_length,
/// and the repeat extends neither left nor right without losing occurrences.
inline std::vector<RepeatClass> conventional_classes(
    const std::vector<std::vector<std::uint64_t>>& files, int min_length) {
    // dense symbol ids so group keys compare exactly
    std::map<std::uint64_t, std::int64_t> ids;
    std::vector<std::vector<std::int64_t>> seq(files.size());
    for (std::size_t f = 0; f < files.size(); ++f)
        for (std::uint64_t h : files[f]) {
            auto [it, fresh] = ids.emplace(h, static_cast<std::int64_t>(ids.size()) + 1);
            seq[f].push_back(it->second);
        }

    auto symbol_at = [&](const Occurrence& p, int delta) -> std::int64_t {
        int pos = p.offset + delta;
        if (pos < 0 || pos >= static_cast<int>(seq[static_cast<std::size_t>(p.file)].size()))
            return -1 - static_cast<std::int64_t>(p.file) * 1000003 - pos;  // unique border
        return seq[static_cast<std::size_t>(p.file)][static_cast<std::size_t>(pos)];
    };

    // group refinement: level-L groups hold positions with identical content
    // of length L, keyed by the full content; refine by the (L+1)-th symbol
    std::map<std::vector<std::int64_t>, std::vector<Occurrence>> groups;
    for (int f = 0; f < static_cast<int>(files.size()); ++f)
        for (int u = 0; u < static_cast<int>(files[f].size()); ++u) {
            Occurrence p{f, u};
            groups[{symbol_at(p, 0)}].push_back(p);
        }

    std::vector<RepeatClass> out;
    int length = 1;
    while (!groups.empty()) {
        std::map<std::vector<std::int64_t>, std::vector<Occurrence>> next;
        for (auto& [key, members] : groups) {
            if (members.size() < 2) continue;
            bool right_div = false;
            for (std::size_t k = 1; k < members.size() && !right_div; ++k)
                if (symbol_at(members[k], length) != symbol_at(members[0], length))
                    right_div = true;
            bool left_div = false;
            for (std::size_t k = 1; k < members.size() && !left_div; ++k)
                if (symbol_at(members[k], -1) != symbol_at(members[0], -1)) left_div = true;
            if (length >= min_length && right_div && left_div) {
                RepeatClass cls;
                cls.length = length;
                cls.occurrences = members;
                std::sort(cls.occurrences.begin(), cls.occurrences.end());
                out.push_back(std::move(cls));
            }
            for (const auto& p : members) {
                std::int64_t follower = symbol_at(p, length);
                if (follower < 0) continue;  // runs off the file
                std::vector<std::int64_t> refined = key;
                refined.push_back(follower);
                next[std::move(refined)].push_back(p);
            }
        }
        groups.clear();
        for (auto& [key, members] : next)
            if (members.size() >= 2) groups.emplace(key, std::move(members));
        ++length;
        if (length > 100000) break;  // safety net
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Character-level statement counter (independent of the tokenizer)
// ---------------------------------------------------------------------------

/// Counts statements the way the unit builder defines them: `;`, `{`, `}`
/// outside parentheses end a statement; braces after = , ( [ ] return or
/// `new Name` open initializers; comments and strings are skipped bytewise.
inline int statement_count(const std::string& src) {
    int count = 0;
    bool pending = false;
    int expr_depth = 0;
    std::vector<bool> brace_is_init;
    char prev_sig = 0;
    std::string last_word, prev_word;

    std::size_t i = 0;
    auto significant = [&](char c) {
        if (c != '_' && c != '$' && !isalnum(static_cast<unsigned char>(c))) {
            if (!last_word.empty()) {
                prev_word = last_word;
                last_word.clear();
            }
        }
        prev_sig = c;
        pending = true;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            std::size_t end = src.find("*/", i + 2);
            i = end == std::string::npos ? src.size() : end + 2;
            continue;
        }
        if (c == '"') {
            if (i + 2 < src.size() && src[i + 1] == '"' && src[i + 2] == '"') {
                std::size_t end = src.find("\"\"\"", i + 3);
                i = end == std::string::npos ? src.size() : end + 3;
            } else {
                ++i;
                while (i < src.size() && src[i] != '"' && src[i] != '\n') {
                    if (src[i] == '\\') ++i;
                    ++i;
                }
                ++i;
            }
            significant('"');
            continue;
        }
        if (c == '\'') {
            ++i;
            while (i < src.size() && src[i] != '\'' && src[i] != '\n') {
                if (src[i] == '\\') ++i;
                ++i;
            }
            ++i;
            significant('\'');
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            if (!last_word.empty()) {
                prev_word = last_word;
                last_word.clear();
            }
            ++i;
            continue;
        }
        if (c == '(' || c == '[') {
            ++expr_depth;
            significant(c);
            ++i;
            continue;
        }
        if (c == ')' || c == ']') {
            if (expr_depth > 0) --expr_depth;
            significant(c);
            ++i;
            continue;
        }
        if (c == '{') {
            bool init = false;
            if (expr_depth > 0) {
                init = true;
            } else {
                char p = prev_sig;
                std::string word = last_word.empty() ? prev_word : last_word;
                if (p == '=' || p == ',' || p == '(' || p == '[' || p == ']') init = true;
                if (word == "return" && (isalnum(static_cast<unsigned char>(p)) || p == '_'))
                    init = true;
                if ((isalnum(static_cast<unsigned char>(p)) || p == '_') && !last_word.empty() &&
                    prev_word == "new")
                    init = true;
                if (p == '{' && !brace_is_init.empty() && brace_is_init.back()) init = true;
            }
            if (init) {
                brace_is_init.push_back(true);
                ++expr_depth;
                significant(c);
            } else {
                brace_is_init.push_back(false);
                if (pending) ++count;  // the opener joins the pending statement
                pending = false;
                prev_sig = c;
                last_word.clear();
                prev_word.clear();
            }
            ++i;
            continue;
        }
        if (c == '}') {
            if (!brace_is_init.empty() && brace_is_init.back()) {
                brace_is_init.pop_back();
                if (expr_depth > 0) --expr_depth;
                significant(c);
            } else {
                if (!brace_is_init.empty()) brace_is_init.pop_back();
                if (pending) ++count;
                pending = false;
                prev_sig = c;
                last_word.clear();
                prev_word.clear();
            }
            ++i;
            continue;
        }
        if (c == ';' && expr_depth == 0) {
            if (pending) ++count;
            pending = false;
            prev_sig = c;
            last_word.clear();
            prev_word.clear();
            ++i;
            continue;
        }
        if (isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
            last_word += c;
            prev_sig = c;
            pending = true;
            ++i;
            continue;
        }
        significant(c);
        ++i;
    }
    if (pending) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// Gapped clones: enumerate range pairs and align with a Pareto DP
// ---------------------------------------------------------------------------

struct GappedPairKey {
    int m1, b1, e1;
    int m2, b2, e2;
    bool operator<(const GappedPairKey& o) const {
        return std::tie(m1, b1, e1, m2, b2, e2) < std::tie(o.m1, o.b1, o.e1, o.m2, o.b2, o.e2);
    }
    bool operator==(const GappedPairKey& o) const {
        return std::tie(m1, b1, e1, m2, b2, e2) == std::tie(o.m1, o.b1, o.e1, o.m2, o.b2, o.e2);
    }
};

/// Checks whether two ranges admit an alignment that starts and ends on
/// matches, uses at most `max_gaps` gap runs per instance, and keeps each
/// instance's gap-unit share at or below `max_ratio`.
inline bool alignment_valid(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b, int max_gaps,
                            double max_ratio) {
    int la = static_cast<int>(a.size()), lb = static_cast<int>(b.size());
    if (la == 0 || lb == 0) return false;
    if (a.front() != b.front() || a.back() != b.back()) return false;
    int budget_a = static_cast<int>(max_ratio * la + 1e-9);
    int budget_b = static_cast<int>(max_ratio * lb + 1e-9);

    struct State {
        int ga, gb, ua, ub;
        bool a_gap, b_gap;  // was the last consumed position a gap?
        bool operator<(const State& o) const {
            return std::tie(ga, gb, ua, ub, a_gap, b_gap) <
                   std::tie(o.ga, o.gb, o.ua, o.ub, o.a_gap, o.b_gap);
        }
    };
    // states[i][j]: Pareto set after consuming i of a and j of b
    std::vector<std::vector<std::set<State>>> states(
        static_cast<std::size_t>(la + 1),
        std::vector<std::set<State>>(static_cast<std::size_t>(lb + 1)));
    auto add = [&](int i, int j, State s) {
        if (s.ga > max_gaps || s.gb > max_gaps) return;
        if (s.ua > budget_a || s.ub > budget_b) return;
        auto& cell = states[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        for (const State& t : cell)
            if (t.ga <= s.ga && t.gb <= s.gb && t.ua <= s.ua && t.ub <= s.ub &&
                t.a_gap == s.a_gap && t.b_gap == s.b_gap)
                return;  // dominated
        cell.insert(s);
    };
    if (a[0] == b[0]) add(1, 1, {0, 0, 0, 0, false, false});
    for (int i = 0; i <= la; ++i) {
        for (int j = 0; j <= lb; ++j) {
            for (const State& s : states[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                if (i < la && j < lb && a[static_cast<std::size_t>(i)] ==
                                            b[static_cast<std::size_t>(j)]) {
                    add(i + 1, j + 1, {s.ga, s.gb, s.ua, s.ub, false, false});
                }
                if (i < la) {
                    State n = s;
                    if (!s.a_gap) ++n.ga;
                    ++n.ua;
                    n.a_gap = true;
                    add(i + 1, j, n);
                }
                if (j < lb) {
                    State n = s;
                    if (!s.b_gap) ++n.gb;
                    ++n.ub;
                    n.b_gap = true;
                    add(i, j + 1, n);
                }
            }
        }
    }
    for (const State& s : states[static_cast<std::size_t>(la)][static_cast<std::size_t>(lb)])
        if (!s.a_gap && !s.b_gap) return true;
    return false;
}

/// All maximal valid range pairs across (and within) method sequences.
inline std::vector<GappedPairKey> gapped_max_pairs(
    const std::vector<std::vector<std::uint64_t>>& methods, int min_length, int max_gaps,
    double max_ratio) {
    std::vector<GappedPairKey> valid;
    auto slice = [&](int m, int b, int e) {
        return std::vector<std::uint64_t>(methods[static_cast<std::size_t>(m)].begin() + b,
                                          methods[static_cast<std::size_t>(m)].begin() + e);
    };
    int n = static_cast<int>(methods.size());
    for (int m1 = 0; m1 < n; ++m1) {
        for (int m2 = m1; m2 < n; ++m2) {
            int l1 = static_cast<int>(methods[static_cast<std::size_t>(m1)].size());
            int l2 = static_cast<int>(methods[static_cast<std::size_t>(m2)].size());
            for (int b1 = 0; b1 + min_length <= l1; ++b1) {
                for (int e1 = b1 + min_length; e1 <= l1; ++e1) {
                    for (int b2 = 0; b2 + min_length <= l2; ++b2) {
                        for (int e2 = b2 + min_length; e2 <= l2; ++e2) {
                            if (m1 == m2 && b1 == b2 && e1 == e2) continue;
                            if (m1 == m2 && b2 < b1) continue;  // canonical order
                            if (alignment_valid(slice(m1, b1, e1), slice(m2, b2, e2), max_gaps,
                                                max_ratio))
                                valid.push_back({m1, b1, e1, m2, b2, e2});
                        }
                    }
                }
            }
        }
    }
    std::vector<GappedPairKey> maximal;
    for (const auto& p : valid) {
        bool contained = false;
        for (const auto& q : valid) {
            if (p == q) continue;
            if (q.m1 == p.m1 && q.m2 == p.m2 && q.b1 <= p.b1 && q.e1 >= p.e1 && q.b2 <= p.b2 &&
                q.e2 >= p.e2) {
                contained = true;
                break;
            }
        }
        if (!contained) maximal.push_back(p);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

// ---------------------------------------------------------------------------
// Ranking agreement by direct pair enumeration
// ---------------------------------------------------------------------------

struct PairCounts {
    int concordant = 0;
    int discordant = 0;
    int tied = 0;
};

inline PairCounts pair_counts(const std::map<std::string, int>& ranks_a,
                              const std::map<std::string, int>& ranks_b) {
    std::vector<std::string> systems;
    for (const auto& [id, r] : ranks_a)
        if (ranks_b.count(id)) systems.push_back(id);
    PairCounts out;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        for (std::size_t j = i + 1; j < systems.size(); ++j) {
            int da = ranks_a.at(systems[i]) - ranks_a.at(systems[j]);
            int db = ranks_b.at(systems[i]) - ranks_b.at(systems[j]);
            if (da == 0 || db == 0)
                ++out.tied;
            else if ((da > 0) == (db > 0))
                ++out.concordant;
            else
                ++out.discordant;
        }
    }
    return out;
}

}  // namespace oracle

#endif  // QUASTAT_TEST_ORACLES_HPP
