#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdim/ifs.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/rng.hpp"

namespace fracdim {

namespace detail {

template <class T>
bool sums_to_one(const T& sum) {
    if constexpr (std::is_same_v<T, Rational>) {
        return sum == 1;
    } else {
        return scalar_abs(T(sum - T(1))) <= T(1e-12L);
    }
}

// Strong connectivity of the directed graph with edges where P[i][j] > 0.
template <class T>
bool is_irreducible(const std::vector<std::vector<T>>& P) {
    auto reaches_all = [&](bool transpose) {
        std::size_t k = P.size();
        std::vector<bool> seen(k, false);
        std::vector<std::size_t> stack = {0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < k; ++j) {
                const T& edge = transpose ? P[j][i] : P[i][j];
                if (edge > 0 && !seen[j]) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        for (bool s : seen)
            if (!s) return false;
        return true;
    };
    return reaches_all(false) && reaches_all(true);
}

}  // namespace detail

// pi with pi P = pi and sum(pi) = 1, for an irreducible row-stochastic P.
// Solved exactly in rational mode; Gaussian elimination with partial
// pivoting otherwise (residual checked against 1e-12).
template <class T>
std::vector<T> stationary_distribution(const std::vector<std::vector<T>>& P) {
    std::size_t k = P.size();
    if (k == 0) fail(ErrorKind::invalid_input, "empty transition matrix");
    for (std::size_t i = 0; i < k; ++i) {
        if (P[i].size() != k)
            fail(ErrorKind::invalid_input, "transition matrix is not square");
        T row_sum(0);
        for (const T& x : P[i]) {
            if (x < 0)
                fail(ErrorKind::invalid_input, "negative transition probability");
            row_sum += x;
        }
        if (!detail::sums_to_one(row_sum))
            fail(ErrorKind::invalid_input,
                 "row " + std::to_string(i) + " of P does not sum to 1");
    }
    if (!detail::is_irreducible(P))
        fail(ErrorKind::invalid_input,
             "transition matrix is reducible; stationary chain is not ergodic");

    // Solve (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    std::vector<std::vector<T>> a(k, std::vector<T>(k + 1, T(0)));
    for (std::size_t i = 0; i + 1 < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = P[j][i];
        a[i][i] -= T(1);
    }
    for (std::size_t j = 0; j < k; ++j) a[k - 1][j] = T(1);
    a[k - 1][k] = T(1);

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < k; ++row)
            if (scalar_abs(a[row][col]) > scalar_abs(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0)
            fail(ErrorKind::invalid_input,
                 "singular system while solving for the stationary vector");
        std::swap(a[col], a[pivot]);
        for (std::size_t row = 0; row < k; ++row) {
            if (row == col || a[row][col] == 0) continue;
            T factor = a[row][col] / a[col][col];
            for (std::size_t j = col; j <= k; ++j)
                a[row][j] -= factor * a[col][j];
        }
    }
    std::vector<T> pi(k);
    for (std::size_t i = 0; i < k; ++i) pi[i] = a[i][k] / a[i][i];

    for (std::size_t j = 0; j < k; ++j) {
        T residual(0);
        for (std::size_t i = 0; i < k; ++i) residual += pi[i] * P[i][j];
        residual -= pi[j];
        if (to_double(scalar_abs(residual)) > 1e-12)
            fail(ErrorKind::diagnostic, "stationary residual exceeds 1e-12");
    }
    return pi;
}

// Shift-invariant measure on Lambda^N: i.i.d. Bernoulli or stationary
// Markov. Immutable after construction.
template <class T>
class Measure {
  public:
    static Measure bernoulli(std::vector<T> p) {
        Measure m;
        m.p_ = std::move(p);
        if (m.p_.empty()) fail(ErrorKind::invalid_input, "empty weight vector");
        T sum(0);
        for (const T& x : m.p_) {
            if (x < 0) fail(ErrorKind::invalid_input, "negative weight");
            sum += x;
        }
        if (!detail::sums_to_one(sum))
            fail(ErrorKind::invalid_input, "Bernoulli weights do not sum to 1");
        return m;
    }

    static Measure markov(std::vector<std::vector<T>> P) {
        Measure m;
        m.pi_ = stationary_distribution(P);
        m.P_ = std::move(P);
        return m;
    }

    bool is_bernoulli() const { return !p_.empty(); }
    int alphabet_size() const {
        return static_cast<int>(is_bernoulli() ? p_.size() : pi_.size());
    }

    const std::vector<T>& bernoulli_weights() const { return p_; }
    const std::vector<std::vector<T>>& transition_matrix() const { return P_; }

    // mu[lambda]: p for Bernoulli, the stationary vector for Markov.
    const std::vector<T>& marginal() const { return is_bernoulli() ? p_ : pi_; }

    T cylinder_mass(const Word& w) const {
        for (int s : w)
            if (s < 0 || s >= alphabet_size())
                fail(ErrorKind::invalid_input,
                     "cylinder symbol " + std::to_string(s) + " out of range");
        T mass(1);
        if (is_bernoulli()) {
            for (int s : w) mass *= p_[static_cast<std::size_t>(s)];
        } else if (!w.empty()) {
            mass = pi_[static_cast<std::size_t>(w[0])];
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                mass *= P_[static_cast<std::size_t>(w[i])]
                          [static_cast<std::size_t>(w[i + 1])];
        }
        return mass;
    }

  private:
    Measure() = default;
    std::vector<T> p_;                 // Bernoulli only
    std::vector<std::vector<T>> P_;    // Markov only
    std::vector<T> pi_;                // Markov only
};

namespace detail {

inline double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

// h_mu in bits per symbol.
template <class T>
double entropy(const Measure<T>& m) {
    double h = 0;
    if (m.is_bernoulli()) {
        for (const T& p : m.bernoulli_weights()) h -= detail::xlog2x(to_double(p));
    } else {
        const auto& P = m.transition_matrix();
        const auto& pi = m.marginal();
        for (std::size_t i = 0; i < P.size(); ++i) {
            double row = 0;
            for (const T& p : P[i]) row -= detail::xlog2x(to_double(p));
            h += to_double(pi[i]) * row;
        }
    }
    return h;
}

// chi_mu = sum over symbols of mu[lambda] * log2|r_lambda| (negative, bits).
template <class TM, class TI>
double lyapunov(const Measure<TM>& m, const Ifs<TI>& ifs) {
    if (m.alphabet_size() != ifs.alphabet_size())
        fail(ErrorKind::invalid_input,
             "measure alphabet " + std::to_string(m.alphabet_size()) +
                 " does not match IFS alphabet " +
                 std::to_string(ifs.alphabet_size()));
    double chi = 0;
    const auto& marginal = m.marginal();
    for (int s = 0; s < ifs.alphabet_size(); ++s)
        chi += to_double(marginal[static_cast<std::size_t>(s)]) *
               std::log2(to_double(scalar_abs(ifs.map(s).ratio)));
    return chi;
}

namespace detail {

inline int draw_from(const std::vector<double>& weights, double u) {
    double acc = 0;
    int last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        last = static_cast<int>(i);
        if (u < acc) return last;
    }
    return last;
}

template <class T>
std::vector<double> to_double_vector(const std::vector<T>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const T& x : xs) out.push_back(to_double(x));
    return out;
}

}  // namespace detail

// Deterministic per (seed, stream): symbol k uses counter k, so parallel
// generation of disjoint ranges reproduces the serial word.
template <class T>
Word sample_word(const Measure<T>& m, int length, std::uint64_t seed,
                 std::uint64_t stream = 0) {
    if (length < 1) fail(ErrorKind::invalid_input, "word length must be >= 1");
    CounterRng rng(seed, stream);
    Word w(static_cast<std::size_t>(length));
    if (m.is_bernoulli()) {
        auto p = detail::to_double_vector(m.bernoulli_weights());
        for (int k = 0; k < length; ++k)
            w[static_cast<std::size_t>(k)] =
                detail::draw_from(p, rng.uniform(static_cast<std::uint64_t>(k)));
    } else {
        auto pi = detail::to_double_vector(m.marginal());
        std::vector<std::vector<double>> rows;
        for (const auto& row : m.transition_matrix())
            rows.push_back(detail::to_double_vector(row));
        int state = detail::draw_from(pi, rng.uniform(0));
        w[0] = state;
        for (int k = 1; k < length; ++k) {
            state = detail::draw_from(rows[static_cast<std::size_t>(state)],
                                      rng.uniform(static_cast<std::uint64_t>(k)));
            w[static_cast<std::size_t>(k)] = state;
        }
    }
    return w;
}

template <class T>
Measure<double> to_double_measure(const Measure<T>& m) {
    if (m.is_bernoulli())
        return Measure<double>::bernoulli(
            detail::to_double_vector(m.bernoulli_weights()));
    std::vector<std::vector<double>> P;
    for (const auto& row : m.transition_matrix())
        P.push_back(detail::to_double_vector(row));
    return Measure<double>::markov(std::move(P));
}

}  // namespace fracdim
