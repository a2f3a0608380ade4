#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fracdim/ifs.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

// Hochman's distance between affine maps: |a1 - a2| when the ratios are
// exactly equal, infinite otherwise. Infinity is modelled as an empty
// optional. Float mode compares ratios bit-exactly; there is no principled
// tolerance for this definition, so near-equal float ratios are classified
// as distinct.
template <class T>
std::optional<T> affine_distance(const AffineMap<T>& g1,
                                 const AffineMap<T>& g2) {
    if (g1.ratio != g2.ratio) return std::nullopt;
    return scalar_abs(T(g1.offset - g2.offset));
}

using WitnessPair = std::pair<Word, Word>;

template <class T>
struct LevelGap {
    int level = 0;
    std::optional<T> min_gap;  // empty = infinite (all ratios distinct)
    std::optional<WitnessPair> witness;
};

template <class T>
struct SeparationReport {
    std::vector<LevelGap<T>> per_level;
    // min over levels with finite positive gap of min_gap^(1/n); empty when
    // no such level exists. Positive values over finitely many levels are
    // evidence of exponential separation, not proof.
    std::optional<double> c_estimate;
    std::optional<std::pair<int, WitnessPair>> exact_overlap;
    bool float_mode_warning = false;  // float ratio equality is bit-exact
};

constexpr std::uint64_t kDefaultPairBudget = 10'000'000;

namespace detail {

inline WitnessPair ordered_pair(const Word& a, const Word& b) {
    return a <= b ? WitnessPair{a, b} : WitnessPair{b, a};
}

}  // namespace detail

// Minimum of affine_distance over distinct length-n word pairs, with the
// lexicographically least witness pair among the minimizers. Words are
// bucketed by exact ratio first; the cross-bucket distance is infinite, so
// only within-bucket offset gaps matter, and a positive minimum is always
// attained by words adjacent in (offset, word) order.
template <class T>
LevelGap<T> min_level_gap(const Ifs<T>& ifs, int n,
                          std::uint64_t pair_budget = kDefaultPairBudget) {
    if (n < 1) fail(ErrorKind::invalid_input, "level must be >= 1");
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        count *= static_cast<std::uint64_t>(ifs.alphabet_size());
        if (count > kDefaultEnumerationBudget ||
            count * (count - 1) / 2 > pair_budget)
            fail(ErrorKind::resource_budget,
                 "level " + std::to_string(n) + " pair enumeration exceeds budget");
    }

    std::map<T, std::vector<std::pair<T, Word>>> buckets;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Word w = word_from_index(idx, ifs.alphabet_size(), n);
        AffineMap<T> g = word_map(ifs, w);
        buckets[g.ratio].emplace_back(g.offset, std::move(w));
    }

    LevelGap<T> result;
    result.level = n;
    for (auto& [ratio, entries] : buckets) {
        (void)ratio;
        std::sort(entries.begin(), entries.end());
        for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
            T gap = entries[i + 1].first - entries[i].first;
            WitnessPair pair =
                detail::ordered_pair(entries[i].second, entries[i + 1].second);
            if (!result.min_gap || gap < *result.min_gap) {
                result.min_gap = gap;
                result.witness = pair;
            } else if (gap == *result.min_gap && pair < *result.witness) {
                result.witness = pair;
            }
        }
    }
    return result;
}

template <class T>
SeparationReport<T> separation_report(
    const Ifs<T>& ifs, int max_level,
    std::uint64_t pair_budget = kDefaultPairBudget) {
    if (max_level < 1) fail(ErrorKind::invalid_input, "max_level must be >= 1");
    SeparationReport<T> report;
    report.float_mode_warning = !std::is_same_v<T, Rational>;
    for (int n = 1; n <= max_level; ++n) {
        LevelGap<T> gap = min_level_gap(ifs, n, pair_budget);
        if (gap.min_gap && *gap.min_gap == 0 && !report.exact_overlap)
            report.exact_overlap = {n, *gap.witness};
        if (gap.min_gap && *gap.min_gap > 0) {
            double c = std::pow(to_double(*gap.min_gap), 1.0 / n);
            if (!report.c_estimate || c < *report.c_estimate)
                report.c_estimate = c;
        }
        report.per_level.push_back(std::move(gap));
    }
    return report;
}

template <class T>
struct JointSeparationReport {
    SeparationReport<T> first;
    SeparationReport<T> second;
    std::optional<double> joint_c_estimate;  // min of the two, when both exist
    bool overlap_in_first = false;
    bool overlap_in_second = false;
};

template <class T>
JointSeparationReport<T> joint_separation_report(
    const Ifs<T>& ifs1, const Ifs<T>& ifs2, int max_level,
    std::uint64_t pair_budget = kDefaultPairBudget) {
    JointSeparationReport<T> joint;
    joint.first = separation_report(ifs1, max_level, pair_budget);
    joint.second = separation_report(ifs2, max_level, pair_budget);
    joint.overlap_in_first = joint.first.exact_overlap.has_value();
    joint.overlap_in_second = joint.second.exact_overlap.has_value();
    if (joint.first.c_estimate && joint.second.c_estimate)
        joint.joint_c_estimate =
            std::min(*joint.first.c_estimate, *joint.second.c_estimate);
    return joint;
}

}  // namespace fracdim
