#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fracdim/numeric.hpp"

namespace fracdim {

// A finite word over the symbol alphabet {0,...,|Lambda|-1}.
using Word = std::vector<int>;

inline std::string word_to_string(const Word& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s + ")";
}

// x |-> ratio*x + offset. A contraction has 0 < |ratio| < 1; the empty-word
// sentinel (ratio 1, offset 0) is allowed only as an intermediate value.
template <class T>
struct AffineMap {
    T ratio;
    T offset;

    T operator()(const T& x) const { return ratio * x + offset; }

    bool is_contraction() const {
        T a = scalar_abs(ratio);
        return a > 0 && a < 1;
    }
    bool is_identity_sentinel() const { return ratio == 1 && offset == 0; }
};

template <class T>
AffineMap<T> identity_sentinel() {
    return AffineMap<T>{T(1), T(0)};
}

// g1 after g2: x |-> g1(g2(x)).
template <class T>
AffineMap<T> compose(const AffineMap<T>& g1, const AffineMap<T>& g2) {
    return {g1.ratio * g2.ratio, g1.ratio * g2.offset + g1.offset};
}

template <class T>
struct Interval {
    T lo;
    T hi;

    Interval(T lo_, T hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo > hi) fail(ErrorKind::invalid_input, "interval with lo > hi");
    }
    T diameter() const { return hi - lo; }
};

// One-dimensional self-similar IFS: a nonempty indexed family of affine
// contractions sharing one number mode (the scalar type T).
template <class T>
class Ifs {
  public:
    explicit Ifs(std::vector<AffineMap<T>> maps) : maps_(std::move(maps)) {
        if (maps_.empty())
            fail(ErrorKind::invalid_input, "IFS needs at least one map");
        for (std::size_t i = 0; i < maps_.size(); ++i)
            if (!maps_[i].is_contraction())
                fail(ErrorKind::invalid_input,
                     "map " + std::to_string(i) +
                         " is not a contraction (need 0 < |ratio| < 1)");
    }

    int alphabet_size() const { return static_cast<int>(maps_.size()); }
    const AffineMap<T>& map(int symbol) const {
        return maps_[static_cast<std::size_t>(symbol)];
    }
    const std::vector<AffineMap<T>>& maps() const { return maps_; }

    bool valid_word(const Word& w) const {
        return std::all_of(w.begin(), w.end(), [&](int s) {
            return s >= 0 && s < alphabet_size();
        });
    }

    T max_abs_ratio() const {
        T m = scalar_abs(maps_[0].ratio);
        for (const auto& g : maps_) m = std::max(m, scalar_abs(g.ratio));
        return m;
    }
    T min_abs_ratio() const {
        T m = scalar_abs(maps_[0].ratio);
        for (const auto& g : maps_) m = std::min(m, scalar_abs(g.ratio));
        return m;
    }
    T max_abs_offset() const {
        T m = scalar_abs(maps_[0].offset);
        for (const auto& g : maps_) m = std::max(m, scalar_abs(g.offset));
        return m;
    }

  private:
    std::vector<AffineMap<T>> maps_;
};

// Left-to-right composition along w; the empty word yields the sentinel.
template <class T>
AffineMap<T> word_map(const Ifs<T>& ifs, const Word& w) {
    AffineMap<T> g = identity_sentinel<T>();
    for (int s : w) {
        if (s < 0 || s >= ifs.alphabet_size())
            fail(ErrorKind::invalid_input,
                 "word symbol " + std::to_string(s) + " out of range for " +
                     std::to_string(ifs.alphabet_size()) + "-map IFS");
        g = compose(g, ifs.map(s));
    }
    return g;
}

// [-R, R] with R = max|a| / (1 - max|r|); forward-invariant under every map,
// hence contains the attractor.
template <class T>
Interval<T> attractor_bound(const Ifs<T>& ifs) {
    T radius = ifs.max_abs_offset() / (T(1) - ifs.max_abs_ratio());
    return Interval<T>(-radius, radius);
}

template <class T>
struct CodedPoint {
    T value;
    T error_bound;  // |coded limit - value| <= error_bound for any extension
};

template <class T>
CodedPoint<T> code_point(const Ifs<T>& ifs, const Word& prefix) {
    if (prefix.empty())
        fail(ErrorKind::invalid_input, "code_point needs a nonempty prefix");
    AffineMap<T> g = word_map(ifs, prefix);
    Interval<T> bound = attractor_bound(ifs);
    T rmax = ifs.max_abs_ratio();
    T shrink(1);
    for (std::size_t i = 0; i < prefix.size(); ++i) shrink *= rmax;
    return {g(T(0)), shrink * (bound.hi + bound.diameter())};
}

constexpr std::uint64_t kDefaultEnumerationBudget = 1u << 22;

inline std::uint64_t checked_word_count(int alphabet, int length,
                                        std::uint64_t budget) {
    std::uint64_t n = 1;
    for (int i = 0; i < length; ++i) {
        n *= static_cast<std::uint64_t>(alphabet);
        if (n > budget)
            fail(ErrorKind::resource_budget,
                 "enumeration of " + std::to_string(alphabet) + "^" +
                     std::to_string(length) + " words exceeds budget " +
                     std::to_string(budget));
    }
    return n;
}

// The length-m word with the given lexicographic index.
inline Word word_from_index(std::uint64_t index, int alphabet, int length) {
    Word w(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] =
            static_cast<int>(index % static_cast<std::uint64_t>(alphabet));
        index /= static_cast<std::uint64_t>(alphabet);
    }
    return w;
}

// The IFS over the blocked alphabet Lambda^m, maps in lexicographic word
// order.
template <class T>
Ifs<T> block_ifs(const Ifs<T>& ifs, int m,
                 std::uint64_t budget = kDefaultEnumerationBudget) {
    if (m < 1) fail(ErrorKind::invalid_input, "block length must be >= 1");
    std::uint64_t n = checked_word_count(ifs.alphabet_size(), m, budget);
    std::vector<AffineMap<T>> maps;
    maps.reserve(static_cast<std::size_t>(n));
    Word w(static_cast<std::size_t>(m), 0);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        maps.push_back(word_map(ifs, word_from_index(idx, ifs.alphabet_size(), m)));
    }
    return Ifs<T>(std::move(maps));
}

// Per-word contraction magnitudes |r_w| over Lambda^m, lexicographic order,
// as doubles (used by the blocked moment equation).
template <class T>
std::vector<double> blocked_abs_ratios(
    const Ifs<T>& ifs, int m, std::uint64_t budget = kDefaultEnumerationBudget) {
    std::uint64_t n = checked_word_count(ifs.alphabet_size(), m, budget);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        Word w = word_from_index(idx, ifs.alphabet_size(), m);
        T r(1);
        for (int s : w) r *= scalar_abs(ifs.map(s).ratio);
        out.push_back(to_double(r));
    }
    return out;
}

template <class T>
Ifs<double> to_double_ifs(const Ifs<T>& ifs) {
    std::vector<AffineMap<double>> maps;
    maps.reserve(ifs.maps().size());
    for (const auto& g : ifs.maps())
        maps.push_back({to_double(g.ratio), to_double(g.offset)});
    return Ifs<double>(std::move(maps));
}

}  // namespace fracdim
