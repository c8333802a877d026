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

#ifndef QUASTAT_CLONE_DETECTION_HPP
#define QUASTAT_CLONE_DETECTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "quastat/core.hpp"
#include "quastat/source_model.hpp"

namespace quastat {

// ---------------------------------------------------------------------------
// Configuration and result types
// ---------------------------------------------------------------------------

struct CloneConfig {
    int min_length = 10;  // units; a unit is one normalized statement
    bool gapped = false;
    int max_gaps_per_clone = 1;
    double max_gap_ratio = 0.30;    // per instance: gap units / instance units
    bool respect_method_boundaries = true;  // always honored when gapped

    void validate() const {
        if (min_length < 2) throw ConfigError("clone min_length must be >= 2");
        if (max_gap_ratio < 0.0 || max_gap_ratio >= 1.0)
            throw ConfigError("max_gap_ratio must be in [0, 1)");
        if (max_gaps_per_clone < 0) throw ConfigError("max_gaps_per_clone must be >= 0");
    }
};

struct CloneInstance {
    int file_index = 0;
    int begin_unit = 0;
    int end_unit = 0;  // half-open
    int start_line = 0;
    int end_line = 0;
    std::vector<int> gap_positions;  // absolute unit indices, empty when conventional

    int length_units() const { return end_unit - begin_unit; }
};

struct CloneClass {
    std::string id;
    int length_units = 0;  // range length of the longest instance
    std::uint64_t fingerprint = 0;
    std::vector<CloneInstance> instances;  // >= 2, canonical order
};

struct CloneReport {
    std::size_t analysed_units = 0;
    std::size_t cloned_units = 0;
    double unit_coverage = 0.0;  // percent
    double blow_up = 100.0;      // percent, >= 100
    int longest_clone = 0;       // units
    int most_instances = 0;
    bool gapped = false;
    std::vector<CloneClass> classes;
};

// ---------------------------------------------------------------------------
// Canonical ordering
// ---------------------------------------------------------------------------

inline bool instance_less(const CloneInstance& a, const CloneInstance& b) {
    if (a.file_index != b.file_index) return a.file_index < b.file_index;
    if (a.begin_unit != b.begin_unit) return a.begin_unit < b.begin_unit;
    return a.end_unit < b.end_unit;
}

/// Classes sorted by (length desc, first location); instances by (file, start).
/// Ids are assigned after sorting, so identical inputs yield identical ids.
inline void canonicalize_classes(std::vector<CloneClass>& classes) {
    for (auto& c : classes) {
        std::sort(c.instances.begin(), c.instances.end(), instance_less);
        c.instances.erase(std::unique(c.instances.begin(), c.instances.end(),
                                      [](const CloneInstance& a, const CloneInstance& b) {
                                          return a.file_index == b.file_index &&
                                                 a.begin_unit == b.begin_unit &&
                                                 a.end_unit == b.end_unit;
                                      }),
                          c.instances.end());
        c.length_units = 0;
        for (const auto& inst : c.instances)
            c.length_units = std::max(c.length_units, inst.length_units());
    }
    std::sort(classes.begin(), classes.end(), [](const CloneClass& a, const CloneClass& b) {
        if (a.length_units != b.length_units) return a.length_units > b.length_units;
        return instance_less(a.instances.front(), b.instances.front());
    });
    int seq = 0;
    for (auto& c : classes) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "c%04d", ++seq);
        c.id = buf;
    }
}

// ---------------------------------------------------------------------------
// Metrics (unit coverage, blow-up, longest clone, most instances)
// ---------------------------------------------------------------------------

struct CloneMetrics {
    std::size_t cloned_units = 0;
    double unit_coverage = 0.0;
    double blow_up = 100.0;
    int longest_clone = 0;
    int most_instances = 0;
};

/// Coverage counts every cloned unit once even under overlap. Blow-up claims
/// units greedily by descending class length: per class, every not-yet-claimed
/// content unit of all instances except one representative is redundant, and
/// blow_up = 100 * analysed / (analysed - redundant). Gap units never count as
/// cloned content.
inline CloneMetrics compute_metrics(const std::vector<CloneClass>& classes,
                                    std::size_t analysed_units) {
    CloneMetrics m;
    if (analysed_units == 0) return m;  // coverage 0, blow-up 100 by definition

    std::map<int, std::vector<char>> covered, claimed;
    auto slot = [](std::map<int, std::vector<char>>& store, int file, int unit) -> char& {
        auto& v = store[file];
        if (static_cast<std::size_t>(unit) >= v.size())
            v.resize(static_cast<std::size_t>(unit) + 1, 0);
        return v[static_cast<std::size_t>(unit)];
    };
    auto content_units = [](const CloneInstance& inst) {
        std::vector<int> units;
        std::set<int> gaps(inst.gap_positions.begin(), inst.gap_positions.end());
        for (int u = inst.begin_unit; u < inst.end_unit; ++u)
            if (gaps.count(u) == 0) units.push_back(u);
        return units;
    };

    std::vector<const CloneClass*> order;
    order.reserve(classes.size());
    for (const auto& c : classes) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const CloneClass* a, const CloneClass* b) {
        if (a->length_units != b->length_units) return a->length_units > b->length_units;
        return instance_less(a->instances.front(), b->instances.front());
    });

    std::size_t redundant = 0;
    for (const CloneClass* c : order) {
        m.most_instances = std::max(m.most_instances, static_cast<int>(c->instances.size()));
        for (std::size_t k = 0; k < c->instances.size(); ++k) {
            const CloneInstance& inst = c->instances[k];
            m.longest_clone = std::max(m.longest_clone, inst.length_units());
            for (int u : content_units(inst)) {
                slot(covered, inst.file_index, u) = 1;
                if (k > 0) {  // all instances except the representative
                    char& cl = slot(claimed, inst.file_index, u);
                    if (!cl) {
                        cl = 1;
                        ++redundant;
                    }
                }
            }
        }
    }
    for (const auto& [file, marks] : covered)
        m.cloned_units += static_cast<std::size_t>(std::count(marks.begin(), marks.end(), 1));

    m.unit_coverage = 100.0 * static_cast<double>(m.cloned_units) /
                      static_cast<double>(analysed_units);
    std::size_t non_redundant = analysed_units - redundant;
    m.blow_up = 100.0 * static_cast<double>(analysed_units) / static_cast<double>(non_redundant);
    return m;
}

// ---------------------------------------------------------------------------
// Conventional detection: all maximal repeats over the unit hash sequence
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> build_suffix_array(const std::vector<int>& s) {
    int n = static_cast<int>(s.size());
    std::vector<int> sa(static_cast<std::size_t>(n)), rank(s.begin(), s.end()),
        tmp(static_cast<std::size_t>(n));
    std::iota(sa.begin(), sa.end(), 0);
    // compress symbols to ranks
    {
        std::vector<int> sorted(s);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int i = 0; i < n; ++i)
            rank[static_cast<std::size_t>(i)] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), s[static_cast<std::size_t>(i)]) -
                sorted.begin());
    }
    for (int k = 1;; k <<= 1) {
        auto cmp = [&](int a, int b) {
            if (rank[static_cast<std::size_t>(a)] != rank[static_cast<std::size_t>(b)])
                return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
            int ra = a + k < n ? rank[static_cast<std::size_t>(a + k)] : -1;
            int rb = b + k < n ? rank[static_cast<std::size_t>(b + k)] : -1;
            return ra < rb;
        };
        std::sort(sa.begin(), sa.end(), cmp);
        tmp[static_cast<std::size_t>(sa[0])] = 0;
        for (int i = 1; i < n; ++i)
            tmp[static_cast<std::size_t>(sa[static_cast<std::size_t>(i)])] =
                tmp[static_cast<std::size_t>(sa[static_cast<std::size_t>(i - 1)])] +
                (cmp(sa[static_cast<std::size_t>(i - 1)], sa[static_cast<std::size_t>(i)]) ? 1
                                                                                           : 0);
        rank = tmp;
        if (rank[static_cast<std::size_t>(sa[static_cast<std::size_t>(n - 1)])] == n - 1) break;
    }
    return sa;
}

inline std::vector<int> build_lcp(const std::vector<int>& s, const std::vector<int>& sa) {
    int n = static_cast<int>(s.size());
    std::vector<int> rank(static_cast<std::size_t>(n)), lcp(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(sa[static_cast<std::size_t>(i)])] = i;
    int h = 0;
    for (int i = 0; i < n; ++i) {
        if (rank[static_cast<std::size_t>(i)] > 0) {
            int j = sa[static_cast<std::size_t>(rank[static_cast<std::size_t>(i)] - 1)];
            while (i + h < n && j + h < n &&
                   s[static_cast<std::size_t>(i + h)] == s[static_cast<std::size_t>(j + h)])
                ++h;
            lcp[static_cast<std::size_t>(rank[static_cast<std::size_t>(i)])] = h;
            if (h > 0) --h;
        } else {
            h = 0;
        }
    }
    return lcp;  // lcp[i] = LCP(suffix sa[i-1], suffix sa[i]), lcp[0] = 0
}

struct GlobalUnitSeq {
    std::vector<int> symbols;       // dense unit-hash ids with unique file sentinels
    std::vector<int> file_of;       // global position -> file index (-1 for sentinels)
    std::vector<int> offset_of;     // global position -> unit offset within file
};

inline GlobalUnitSeq build_global_sequence(const CorpusUnits& corpus) {
    GlobalUnitSeq g;
    std::unordered_map<std::uint64_t, int> ids;
    int next_sentinel = -1;
    for (std::size_t f = 0; f < corpus.files.size(); ++f) {
        for (std::size_t u = 0; u < corpus.files[f].units.size(); ++u) {
            std::uint64_t h = corpus.files[f].units[u].normalized_hash;
            auto [it, inserted] = ids.emplace(h, static_cast<int>(ids.size()) + 1);
            g.symbols.push_back(it->second);
            g.file_of.push_back(static_cast<int>(f));
            g.offset_of.push_back(static_cast<int>(u));
        }
        g.symbols.push_back(next_sentinel--);  // unique separator per file
        g.file_of.push_back(-1);
        g.offset_of.push_back(-1);
    }
    return g;
}

}  // namespace detail

/// Detects conventional clones: every maximal repeated normalized subsequence
/// of length >= min_length becomes one clone class whose instances are all
/// occurrences of that subsequence. Maximality is two-sided: the occurrence
/// set can be extended neither left nor right without losing an occurrence.
inline CloneReport detect_clones(const CorpusUnits& corpus, const CloneConfig& config) {
    config.validate();
    CloneReport report;
    report.analysed_units = corpus.total_units();
    if (report.analysed_units == 0) return report;

    detail::GlobalUnitSeq g = detail::build_global_sequence(corpus);
    const std::vector<int>& s = g.symbols;
    int n = static_cast<int>(s.size());
    std::vector<int> sa = detail::build_suffix_array(s);
    std::vector<int> lcp = detail::build_lcp(s, sa);

    auto emit = [&](int depth, int lb, int rb) {
        if (depth < config.min_length) return;
        // left diversity: not all occurrences preceded by the same symbol
        bool diverse = false;
        int prev_sym = 0;
        for (int k = lb; k <= rb && !diverse; ++k) {
            int p = sa[static_cast<std::size_t>(k)];
            if (p == 0 || s[static_cast<std::size_t>(p - 1)] < 0) {
                diverse = true;
                break;
            }
            int sym = s[static_cast<std::size_t>(p - 1)];
            if (k == lb)
                prev_sym = sym;
            else if (sym != prev_sym)
                diverse = true;
        }
        if (!diverse) return;

        CloneClass cls;
        cls.length_units = depth;
        std::uint64_t fp = 0xcbf29ce484222325ull;
        for (int k = lb; k <= rb; ++k) {
            int p = sa[static_cast<std::size_t>(k)];
            int f = g.file_of[static_cast<std::size_t>(p)];
            int off = g.offset_of[static_cast<std::size_t>(p)];
            CloneInstance inst;
            inst.file_index = f;
            inst.begin_unit = off;
            inst.end_unit = off + depth;
            const auto& units = corpus.files[static_cast<std::size_t>(f)].units;
            inst.start_line = units[static_cast<std::size_t>(off)].start_line;
            inst.end_line = units[static_cast<std::size_t>(off + depth - 1)].end_line;
            cls.instances.push_back(inst);
        }
        {
            int p = sa[static_cast<std::size_t>(lb)];
            for (int k = 0; k < depth; ++k)
                fp = fnv1a64_mix(fp, static_cast<std::uint64_t>(s[static_cast<std::size_t>(p + k)]));
        }
        cls.fingerprint = fp;
        report.classes.push_back(std::move(cls));
    };

    // lcp-interval enumeration: every interval is an internal suffix tree node,
    // i.e. a right-maximal repeat with its full occurrence set.
    struct Frame {
        int lcp;
        int lb;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0});
    for (int i = 1; i <= n; ++i) {
        int cur = (i < n) ? lcp[static_cast<std::size_t>(i)] : 0;
        int lb = i - 1;
        while (cur < stack.back().lcp) {
            Frame top = stack.back();
            stack.pop_back();
            emit(top.lcp, top.lb, i - 1);
            lb = top.lb;
        }
        if (cur > stack.back().lcp) stack.push_back({cur, lb});
    }

    canonicalize_classes(report.classes);
    CloneMetrics metrics = compute_metrics(report.classes, report.analysed_units);
    report.cloned_units = metrics.cloned_units;
    report.unit_coverage = metrics.unit_coverage;
    report.blow_up = metrics.blow_up;
    report.longest_clone = metrics.longest_clone;
    report.most_instances = metrics.most_instances;
    return report;
}

// ---------------------------------------------------------------------------
// Gapped detection
// ---------------------------------------------------------------------------

namespace detail {

struct MethodSeq {
    int file_index;
    int begin_unit;                   // absolute offset of the method in its file
    std::vector<std::uint64_t> hash;  // unit hashes of the span
};

struct GappedPair {
    // two aligned ranges, canonical order; gaps are absolute unit indices
    int file1, begin1, end1;
    int file2, begin2, end2;
    std::vector<int> gaps1, gaps2;
    std::uint64_t matched_fp = 0;

    bool contains(const GappedPair& o) const {
        return file1 == o.file1 && file2 == o.file2 && begin1 <= o.begin1 && end1 >= o.end1 &&
               begin2 <= o.begin2 && end2 >= o.end2 &&
               (end1 - begin1 > o.end1 - o.begin1 || end2 - begin2 > o.end2 - o.begin2);
    }
};

// Minimal exact-run length every qualifying gapped pair must share: matched
// units of a min-length instance split across at most 2*max_gaps+1 segments.
inline int gapped_seed_length(const CloneConfig& c) {
    int matched_min =
        c.min_length - static_cast<int>(std::floor(c.max_gap_ratio * c.min_length));
    int segments = 2 * c.max_gaps_per_clone + 1;
    return std::max(1, (matched_min + segments - 1) / segments);
}

}  // namespace detail

/// Detects gapped clones: aligned unit ranges that match except for at most
/// max_gaps_per_clone contiguous gap runs per instance, with the per-instance
/// gap ratio bounded by max_gap_ratio. Instances begin and end on matched
/// units and never cross method boundaries.
inline CloneReport detect_gapped_clones(const CorpusUnits& corpus, const CloneConfig& config) {
    config.validate();
    CloneReport report;
    report.gapped = true;
    report.analysed_units = corpus.total_method_units();
    if (report.analysed_units == 0) return report;

    // collect method sequences
    std::vector<detail::MethodSeq> methods;
    for (std::size_t f = 0; f < corpus.files.size(); ++f) {
        for (const MethodSpan& span : corpus.files[f].methods) {
            detail::MethodSeq seq;
            seq.file_index = static_cast<int>(f);
            seq.begin_unit = span.begin_unit;
            for (int u = span.begin_unit; u < span.end_unit; ++u)
                seq.hash.push_back(
                    corpus.files[f].units[static_cast<std::size_t>(u)].normalized_hash);
            if (static_cast<int>(seq.hash.size()) >= config.min_length)
                methods.push_back(std::move(seq));
        }
    }

    const int seed = detail::gapped_seed_length(config);

    // seed index: s-gram hash -> (method, offset)
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> grams;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        const auto& h = methods[m].hash;
        for (std::size_t i = 0; i + static_cast<std::size_t>(seed) <= h.size(); ++i) {
            std::uint64_t k = 0xcbf29ce484222325ull;
            for (int j = 0; j < seed; ++j) k = fnv1a64_mix(k, h[i + static_cast<std::size_t>(j)]);
            grams[k].emplace_back(static_cast<int>(m), static_cast<int>(i));
        }
    }

    std::set<std::pair<int, int>> method_pairs;
    for (const auto& [k, occ] : grams) {
        for (std::size_t a = 0; a < occ.size(); ++a)
            for (std::size_t b = a; b < occ.size(); ++b) {
                if (occ[a].first == occ[b].first && occ[a].second == occ[b].second) continue;
                method_pairs.emplace(std::min(occ[a].first, occ[b].first),
                                     std::max(occ[a].first, occ[b].first));
            }
    }

    std::vector<detail::GappedPair> pairs;
    for (const auto& [ma, mb] : method_pairs) {
        const auto& A = methods[static_cast<std::size_t>(ma)].hash;
        const auto& B = methods[static_cast<std::size_t>(mb)].hash;
        const bool same = (ma == mb);

        // maximal exact blocks of length >= seed
        auto run_len = [&](int i, int j) {
            int l = 0;
            while (i + l < static_cast<int>(A.size()) && j + l < static_cast<int>(B.size()) &&
                   A[static_cast<std::size_t>(i + l)] == B[static_cast<std::size_t>(j + l)])
                ++l;
            return l;
        };
        std::set<std::pair<int, int>> seen;  // (diagonal, start) of maximal blocks
        struct Block {
            int i, j, len;
        };
        std::vector<Block> blocks;
        for (int i = 0; i + seed <= static_cast<int>(A.size()); ++i) {
            for (int j = 0; j + seed <= static_cast<int>(B.size()); ++j) {
                if (same && i == j) continue;
                if (A[static_cast<std::size_t>(i)] != B[static_cast<std::size_t>(j)]) continue;
                if (i > 0 && j > 0 &&
                    A[static_cast<std::size_t>(i - 1)] == B[static_cast<std::size_t>(j - 1)])
                    continue;  // not left-maximal
                int l = run_len(i, j);
                if (l < seed) continue;
                if (!seen.emplace(i - j, i).second) continue;
                blocks.push_back({i, j, l});
            }
        }

        int max_skip = std::max(
            1, static_cast<int>(std::floor(config.max_gap_ratio *
                                           static_cast<double>(std::max(A.size(), B.size())))));

        for (const Block& core : blocks) {
            int lo_i = core.i, lo_j = core.j;
            int hi_i = core.i + core.len, hi_j = core.j + core.len;  // exclusive
            int runs_a = 0, runs_b = 0;
            std::vector<int> gaps_a, gaps_b;  // method-relative indices

            // grow right, then left, consuming gap runs greedily (smallest
            // resynchronizing skip first)
            bool grown = true;
            while (grown) {
                grown = false;
                if (hi_i < static_cast<int>(A.size()) && hi_j < static_cast<int>(B.size())) {
                    int best_da = -1, best_db = -1, best_run = 0;
                    for (int total = 1; total <= 2 * max_skip && best_da < 0; ++total) {
                        for (int da = 0; da <= std::min(total, max_skip); ++da) {
                            int db = total - da;
                            if (db > max_skip) continue;
                            if (da > 0 && runs_a >= config.max_gaps_per_clone) continue;
                            if (db > 0 && runs_b >= config.max_gaps_per_clone) continue;
                            if (hi_i + da >= static_cast<int>(A.size()) ||
                                hi_j + db >= static_cast<int>(B.size()))
                                continue;
                            int r = run_len(hi_i + da, hi_j + db);
                            if (r >= 1) {
                                best_da = da;
                                best_db = db;
                                best_run = r;
                                break;
                            }
                        }
                    }
                    if (best_da >= 0) {
                        for (int k = 0; k < best_da; ++k) gaps_a.push_back(hi_i + k);
                        for (int k = 0; k < best_db; ++k) gaps_b.push_back(hi_j + k);
                        if (best_da > 0) ++runs_a;
                        if (best_db > 0) ++runs_b;
                        hi_i += best_da + best_run;
                        hi_j += best_db + best_run;
                        grown = true;
                    }
                }
                if (!grown && lo_i > 0 && lo_j > 0) {
                    int best_da = -1, best_db = -1, best_run = 0;
                    for (int total = 1; total <= 2 * max_skip && best_da < 0; ++total) {
                        for (int da = 0; da <= std::min(total, max_skip); ++da) {
                            int db = total - da;
                            if (db > max_skip) continue;
                            if (da > 0 && runs_a >= config.max_gaps_per_clone) continue;
                            if (db > 0 && runs_b >= config.max_gaps_per_clone) continue;
                            if (lo_i - da <= 0 || lo_j - db <= 0) continue;
                            // exact run ending right before the gap
                            int r = 0;
                            while (lo_i - da - 1 - r >= 0 && lo_j - db - 1 - r >= 0 &&
                                   A[static_cast<std::size_t>(lo_i - da - 1 - r)] ==
                                       B[static_cast<std::size_t>(lo_j - db - 1 - r)])
                                ++r;
                            if (r >= 1) {
                                best_da = da;
                                best_db = db;
                                best_run = r;
                                break;
                            }
                        }
                    }
                    if (best_da >= 0) {
                        for (int k = 1; k <= best_da; ++k) gaps_a.push_back(lo_i - k);
                        for (int k = 1; k <= best_db; ++k) gaps_b.push_back(lo_j - k);
                        if (best_da > 0) ++runs_a;
                        if (best_db > 0) ++runs_b;
                        lo_i -= best_da + best_run;
                        lo_j -= best_db + best_run;
                        grown = true;
                    }
                }
                if (same) {
                    // ranges within one method must stay disjoint enough to
                    // remain two instances; stop if they would coincide
                    if (lo_i == lo_j && hi_i == hi_j) break;
                }
            }

            auto ratio_ok = [&](int len, std::size_t gap_count) {
                return static_cast<double>(gap_count) <=
                       config.max_gap_ratio * static_cast<double>(len) + 1e-9;
            };
            std::sort(gaps_a.begin(), gaps_a.end());
            std::sort(gaps_b.begin(), gaps_b.end());
            // trim trailing extensions until the ratio constraint holds
            while ((!ratio_ok(hi_i - lo_i, gaps_a.size()) ||
                    !ratio_ok(hi_j - lo_j, gaps_b.size())) &&
                   !(gaps_a.empty() && gaps_b.empty())) {
                int last_gap_a = gaps_a.empty() ? -1 : gaps_a.back();
                int last_gap_b = gaps_b.empty() ? -1 : gaps_b.back();
                bool trim_a_side = last_gap_a - lo_i >= last_gap_b - lo_j;
                if (trim_a_side && last_gap_a >= 0) {
                    int matched_after = hi_i - (last_gap_a + 1);
                    hi_i = last_gap_a;
                    hi_j -= matched_after;
                    gaps_a.pop_back();
                    while (!gaps_b.empty() && gaps_b.back() >= hi_j) gaps_b.pop_back();
                } else if (last_gap_b >= 0) {
                    int matched_after = hi_j - (last_gap_b + 1);
                    hi_j = last_gap_b;
                    hi_i -= matched_after;
                    gaps_b.pop_back();
                    while (!gaps_a.empty() && gaps_a.back() >= hi_i) gaps_a.pop_back();
                } else {
                    break;
                }
            }

            int len_a = hi_i - lo_i, len_b = hi_j - lo_j;
            if (len_a < config.min_length || len_b < config.min_length) continue;
            if (!ratio_ok(len_a, gaps_a.size()) || !ratio_ok(len_b, gaps_b.size())) continue;
            if (same && lo_i == lo_j && hi_i == hi_j) continue;

            const detail::MethodSeq& MA = methods[static_cast<std::size_t>(ma)];
            const detail::MethodSeq& MB = methods[static_cast<std::size_t>(mb)];
            detail::GappedPair p;
            p.file1 = MA.file_index;
            p.begin1 = MA.begin_unit + lo_i;
            p.end1 = MA.begin_unit + hi_i;
            for (int gp : gaps_a) p.gaps1.push_back(MA.begin_unit + gp);
            p.file2 = MB.file_index;
            p.begin2 = MB.begin_unit + lo_j;
            p.end2 = MB.begin_unit + hi_j;
            for (int gp : gaps_b) p.gaps2.push_back(MB.begin_unit + gp);

            // matched fingerprint over non-gap units of the first range
            std::uint64_t fp = 0xcbf29ce484222325ull;
            {
                std::set<int> ga(gaps_a.begin(), gaps_a.end());
                for (int u = lo_i; u < hi_i; ++u)
                    if (ga.count(u) == 0) fp = fnv1a64_mix(fp, A[static_cast<std::size_t>(u)]);
            }
            p.matched_fp = fp;

            // canonical pair order
            if (p.file2 < p.file1 || (p.file2 == p.file1 && p.begin2 < p.begin1)) {
                std::swap(p.file1, p.file2);
                std::swap(p.begin1, p.begin2);
                std::swap(p.end1, p.end2);
                std::swap(p.gaps1, p.gaps2);
            }
            pairs.push_back(std::move(p));
        }
    }

    // drop duplicates and pairs contained in a larger pair
    std::sort(pairs.begin(), pairs.end(), [](const detail::GappedPair& a, const detail::GappedPair& b) {
        return std::tie(a.file1, a.begin1, a.end1, a.file2, a.begin2, a.end2) <
               std::tie(b.file1, b.begin1, b.end1, b.file2, b.begin2, b.end2);
    });
    pairs.erase(std::unique(pairs.begin(), pairs.end(),
                            [](const detail::GappedPair& a, const detail::GappedPair& b) {
                                return std::tie(a.file1, a.begin1, a.end1, a.file2, a.begin2,
                                                a.end2) == std::tie(b.file1, b.begin1, b.end1,
                                                                    b.file2, b.begin2, b.end2);
                            }),
                pairs.end());
    std::vector<detail::GappedPair> maximal;
    for (const auto& p : pairs) {
        bool contained = false;
        for (const auto& q : pairs) {
            if (&p != &q && q.contains(p)) {
                contained = true;
                break;
            }
        }
        if (!contained) maximal.push_back(p);
    }

    // group pairs into classes by matched fingerprint
    std::map<std::uint64_t, CloneClass> by_fp;
    auto add_instance = [&](CloneClass& cls, int file, int begin, int end,
                            const std::vector<int>& gaps) {
        for (const auto& inst : cls.instances)
            if (inst.file_index == file && inst.begin_unit == begin && inst.end_unit == end)
                return;
        CloneInstance inst;
        inst.file_index = file;
        inst.begin_unit = begin;
        inst.end_unit = end;
        inst.gap_positions = gaps;
        const auto& units = corpus.files[static_cast<std::size_t>(file)].units;
        inst.start_line = units[static_cast<std::size_t>(begin)].start_line;
        inst.end_line = units[static_cast<std::size_t>(end - 1)].end_line;
        cls.instances.push_back(std::move(inst));
    };
    for (const auto& p : maximal) {
        CloneClass& cls = by_fp[p.matched_fp];
        cls.fingerprint = p.matched_fp;
        add_instance(cls, p.file1, p.begin1, p.end1, p.gaps1);
        add_instance(cls, p.file2, p.begin2, p.end2, p.gaps2);
    }
    for (auto& [fp, cls] : by_fp)
        if (cls.instances.size() >= 2) report.classes.push_back(std::move(cls));

    canonicalize_classes(report.classes);
    CloneMetrics metrics = compute_metrics(report.classes, report.analysed_units);
    report.cloned_units = metrics.cloned_units;
    report.unit_coverage = metrics.unit_coverage;
    report.blow_up = metrics.blow_up;
    report.longest_clone = metrics.longest_clone;
    report.most_instances = metrics.most_instances;
    return report;
}

// ---------------------------------------------------------------------------
// Multi-version trend
// ---------------------------------------------------------------------------

enum class TrendDirection { Decreasing = -1, Flat = 0, Increasing = 1 };

struct TrendEntry {
    std::string metric;
    std::vector<double> values;            // one per version
    std::vector<double> deltas;            // size versions-1
    std::vector<TrendDirection> step_dir;  // size versions-1
    TrendDirection overall = TrendDirection::Flat;
};

struct TrendTable {
    std::vector<std::string> versions;
    std::vector<TrendEntry> entries;
};

inline TrendTable clone_trend(const std::vector<CloneReport>& reports,
                              std::vector<std::string> labels = {}) {
    if (reports.size() < 2) throw Error("trend needs two versions");
    TrendTable table;
    if (labels.empty())
        for (std::size_t i = 0; i < reports.size(); ++i)
            labels.push_back("v" + std::to_string(i + 1));
    table.versions = std::move(labels);

    auto add = [&](const std::string& name, auto getter) {
        TrendEntry e;
        e.metric = name;
        for (const auto& r : reports) e.values.push_back(static_cast<double>(getter(r)));
        for (std::size_t i = 1; i < e.values.size(); ++i) {
            double d = e.values[i] - e.values[i - 1];
            e.deltas.push_back(d);
            e.step_dir.push_back(d > 0 ? TrendDirection::Increasing
                                       : d < 0 ? TrendDirection::Decreasing : TrendDirection::Flat);
        }
        double total = e.values.back() - e.values.front();
        e.overall = total > 0   ? TrendDirection::Increasing
                    : total < 0 ? TrendDirection::Decreasing
                                : TrendDirection::Flat;
        table.entries.push_back(std::move(e));
    };
    add("analysed_units", [](const CloneReport& r) { return r.analysed_units; });
    add("cloned_units", [](const CloneReport& r) { return r.cloned_units; });
    add("unit_coverage", [](const CloneReport& r) { return r.unit_coverage; });
    add("blow_up", [](const CloneReport& r) { return r.blow_up; });
    add("longest_clone", [](const CloneReport& r) { return r.longest_clone; });
    add("most_instances", [](const CloneReport& r) { return r.most_instances; });
    return table;
}

}  // namespace quastat

#endif  // QUASTAT_CLONE_DETECTION_HPP
