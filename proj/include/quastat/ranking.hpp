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

#ifndef QUASTAT_RANKING_HPP
#define QUASTAT_RANKING_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quastat/core.hpp"

namespace quastat {

/// One analyzed system's headline numbers. Optional fields stay absent when a
/// technique could not be applied to that system.
struct SystemResult {
    std::string id;
    std::optional<double> clone_coverage;     // percent
    std::optional<double> findings_density;   // per kLoC
    std::optional<double> critical_findings;  // count
    std::optional<double> arch_class_violations;
    std::optional<double> overall_grade;  // [1, 6]

    std::optional<double> criterion(const std::string& name) const {
        if (name == "clones" || name == "clone_coverage") return clone_coverage;
        if (name == "density" || name == "findings_density") return findings_density;
        if (name == "critical" || name == "critical_findings") return critical_findings;
        if (name == "arch" || name == "arch_class_violations") return arch_class_violations;
        if (name == "grade" || name == "overall_grade") return overall_grade;
        throw ConfigError("unknown ranking criterion: " + name);
    }
};

enum class RankDirection { AscendingBetter, DescendingBetter };

struct RankTable {
    std::string criterion;
    struct Entry {
        int rank = 0;
        std::vector<std::string> systems;  // >1 on ties
        double value = 0.0;
    };
    std::vector<Entry> entries;
    std::vector<std::string> excluded;  // systems missing the criterion

    std::optional<int> rank_of(const std::string& system) const {
        for (const auto& e : entries)
            for (const auto& s : e.systems)
                if (s == system) return e.rank;
        return std::nullopt;
    }
};

/// Ties share the best position and the next group resumes at
/// 1 + preceding group sizes, the pattern of a shared first place.
inline RankTable rank_by(const std::vector<SystemResult>& results, const std::string& criterion,
                         RankDirection direction = RankDirection::AscendingBetter) {
    RankTable table;
    table.criterion = criterion;
    std::vector<std::pair<double, std::string>> values;
    for (const auto& r : results) {
        auto v = r.criterion(criterion);
        if (v.has_value())
            values.emplace_back(*v, r.id);
        else
            table.excluded.push_back(r.id);
    }
    if (values.size() < 2)
        throw Error("ranking by " + criterion + " needs at least two systems with a value");

    std::sort(values.begin(), values.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first)
            return direction == RankDirection::AscendingBetter ? a.first < b.first
                                                               : a.first > b.first;
        return a.second < b.second;
    });
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j < values.size() && values[j].first == values[i].first) ++j;
        RankTable::Entry entry;
        entry.rank = static_cast<int>(i) + 1;
        entry.value = values[i].first;
        for (std::size_t k = i; k < j; ++k) entry.systems.push_back(values[k].second);
        table.entries.push_back(std::move(entry));
        i = j;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Ranking agreement
// ---------------------------------------------------------------------------

struct RankShift {
    std::string system;
    int rank_a = 0;
    int rank_b = 0;
};

struct AgreementReport {
    std::size_t shared_systems = 0;
    std::size_t concordant = 0;  // pairs ordered the same way in both rankings
    std::size_t discordant = 0;  // pairs ordered oppositely
    std::size_t tied = 0;        // pairs tied in at least one ranking
    std::vector<RankShift> strong_shifts;  // |rank_a - rank_b| >= 2
};

inline AgreementReport compare_rankings(const RankTable& a, const RankTable& b) {
    std::vector<std::string> shared;
    for (const auto& e : a.entries)
        for (const auto& s : e.systems)
            if (b.rank_of(s).has_value()) shared.push_back(s);
    if (shared.empty()) throw Error("rankings share no systems");
    std::sort(shared.begin(), shared.end());

    AgreementReport report;
    report.shared_systems = shared.size();
    for (std::size_t i = 0; i < shared.size(); ++i) {
        for (std::size_t j = i + 1; j < shared.size(); ++j) {
            int da = *a.rank_of(shared[i]) - *a.rank_of(shared[j]);
            int db = *b.rank_of(shared[i]) - *b.rank_of(shared[j]);
            if (da == 0 || db == 0)
                ++report.tied;
            else if ((da > 0) == (db > 0))
                ++report.concordant;
            else
                ++report.discordant;
        }
    }
    for (const auto& s : shared) {
        int ra = *a.rank_of(s), rb = *b.rank_of(s);
        if (std::abs(ra - rb) >= 2) report.strong_shifts.push_back({s, ra, rb});
    }
    return report;
}

}  // namespace quastat

#endif  // QUASTAT_RANKING_HPP
