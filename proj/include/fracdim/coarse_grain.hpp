#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fracdim/ifs.hpp"
#include "fracdim/measures.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

enum class CoarseVariant {
    full,         // entropy and Lyapunov conditions on good words
    homogeneous,  // entropy condition only
};

// The block-level reweighting triple (good-word set, weight vector p,
// normalizer c) at block length m with parameters (delta, epsilon). Words
// are indexed lexicographically over Lambda^m.
struct CoarseGraining {
    int m = 0;
    double delta = 0;
    double epsilon = 0;
    CoarseVariant variant = CoarseVariant::full;
    int alphabet = 0;

    std::vector<std::uint8_t> good;  // 1 iff the word is in the good set
    std::vector<double> weights;     // p_w, sums to 1
    double normalizer = 0;           // c
    double good_mass = 0;            // mu of the union of good cylinders
    double base_entropy = 0;         // h of the underlying measure
    double base_lyapunov = 0;        // chi of the underlying measure

    bool good_mass_hypothesis = false;  // good_mass > 1 - delta
    bool epsilon_hypothesis = false;    // 1/epsilon > log2|Lambda|
    bool hypotheses_hold = false;

    std::size_t good_count() const {
        std::size_t n = 0;
        for (auto g : good) n += g;
        return n;
    }
};

// Membership slack toward inclusion: boundary words are negligible in
// measure but the decision must be deterministic across number modes.
constexpr double kGoodWordSlack = 1e-12;

template <class TM, class TI>
std::vector<std::uint8_t> good_word_mask(
    const Measure<TM>& mu, const Ifs<TI>& ifs, int m, double delta,
    CoarseVariant variant = CoarseVariant::full,
    std::uint64_t budget = kDefaultEnumerationBudget) {
    if (m < 1) fail(ErrorKind::invalid_input, "block length must be >= 1");
    if (delta <= 0) fail(ErrorKind::invalid_input, "delta must be positive");
    if (mu.alphabet_size() != ifs.alphabet_size())
        fail(ErrorKind::invalid_input, "measure/IFS alphabet mismatch");

    const double h = entropy(mu);
    const double chi = lyapunov(mu, ifs);
    const std::uint64_t count = checked_word_count(ifs.alphabet_size(), m, budget);

    std::vector<std::uint8_t> mask(static_cast<std::size_t>(count), 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Word w = word_from_index(idx, ifs.alphabet_size(), m);
        double log_mass = std::log2(to_double(mu.cylinder_mass(w)));
        bool ok = log_mass >= -m * (h + delta) - kGoodWordSlack &&
                  log_mass <= -m * (h - delta) + kGoodWordSlack;
        if (ok && variant == CoarseVariant::full) {
            TI r(1);
            for (int s : w) r *= scalar_abs(ifs.map(s).ratio);
            ok = std::log2(to_double(r)) >= m * (chi - delta) - kGoodWordSlack;
        }
        mask[static_cast<std::size_t>(idx)] = ok ? 1 : 0;
    }
    return mask;
}

template <class TM, class TI>
std::vector<Word> good_words(const Measure<TM>& mu, const Ifs<TI>& ifs, int m,
                             double delta,
                             CoarseVariant variant = CoarseVariant::full,
                             std::uint64_t budget = kDefaultEnumerationBudget) {
    auto mask = good_word_mask(mu, ifs, m, delta, variant, budget);
    std::vector<Word> words;
    for (std::size_t idx = 0; idx < mask.size(); ++idx)
        if (mask[idx])
            words.push_back(word_from_index(idx, ifs.alphabet_size(), m));
    return words;
}

template <class TM, class TI>
CoarseGraining coarse_bernoulli(
    const Measure<TM>& mu, const Ifs<TI>& ifs, int m, double delta,
    double epsilon, CoarseVariant variant = CoarseVariant::full,
    std::uint64_t budget = kDefaultEnumerationBudget) {
    if (epsilon <= 0) fail(ErrorKind::invalid_input, "epsilon must be positive");

    CoarseGraining cg;
    cg.m = m;
    cg.delta = delta;
    cg.epsilon = epsilon;
    cg.variant = variant;
    cg.alphabet = ifs.alphabet_size();
    cg.base_entropy = entropy(mu);
    cg.base_lyapunov = lyapunov(mu, ifs);
    cg.good = good_word_mask(mu, ifs, m, delta, variant, budget);

    const double bad_weight = std::exp2(-m / epsilon);
    const std::size_t count = cg.good.size();
    std::vector<long double> raw(count);
    long double total = 0;
    long double good_mass = 0;
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (cg.good[idx]) {
            Word w = word_from_index(idx, ifs.alphabet_size(), m);
            long double mass =
                static_cast<long double>(to_double(mu.cylinder_mass(w)));
            raw[idx] = mass;
            good_mass += mass;
        } else {
            raw[idx] = bad_weight;
        }
        total += raw[idx];
    }
    cg.good_mass = static_cast<double>(good_mass);
    cg.normalizer = static_cast<double>(1.0L / total);
    cg.weights.resize(count);
    for (std::size_t idx = 0; idx < count; ++idx)
        cg.weights[idx] = static_cast<double>(raw[idx] / total);

    cg.good_mass_hypothesis = cg.good_mass > 1.0 - delta;
    cg.epsilon_hypothesis =
        1.0 / epsilon > std::log2(static_cast<double>(cg.alphabet));
    cg.hypotheses_hold = cg.good_mass_hypothesis && cg.epsilon_hypothesis;
    if (cg.hypotheses_hold &&
        (cg.normalizer < 0.5 || cg.normalizer > 2.0))
        fail(ErrorKind::diagnostic,
             "normalizer outside [1/2, 2] although the construction "
             "hypotheses hold");
    return cg;
}

inline Measure<double> blocked_measure(const CoarseGraining& cg) {
    return Measure<double>::bernoulli(cg.weights);
}

}  // namespace fracdim
