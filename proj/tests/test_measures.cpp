#include <doctest.h>

#include "fracdim/measures.hpp"

using namespace fracdim;

namespace {

Ifs<Rational> cantor() {
    return Ifs<Rational>({{Rational(1, 3), Rational(0)},
                          {Rational(1, 3), Rational(2, 3)}});
}

Measure<Rational> biased() {
    return Measure<Rational>::bernoulli({Rational(7, 10), Rational(3, 10)});
}

}  // namespace

TEST_CASE("Bernoulli validation") {
    CHECK_THROWS_AS(Measure<Rational>::bernoulli({}), Error);
    CHECK_THROWS_AS(Measure<Rational>::bernoulli({Rational(1, 2)}), Error);
    CHECK_THROWS_AS(
        Measure<Rational>::bernoulli({Rational(3, 2), Rational(-1, 2)}), Error);
    CHECK(biased().is_bernoulli());
    CHECK(biased().alphabet_size() == 2);
}

TEST_CASE("cylinder additivity: mu[w] = sum over extensions mu[ws]") {
    auto check_additivity = [](const auto& mu) {
        for (int len = 0; len <= 4; ++len) {
            std::uint64_t n = 1;
            for (int i = 0; i < len; ++i)
                n *= static_cast<std::uint64_t>(mu.alphabet_size());
            for (std::uint64_t idx = 0; idx < n; ++idx) {
                Word w = word_from_index(idx, mu.alphabet_size(), len);
                Rational total(0);
                for (int s = 0; s < mu.alphabet_size(); ++s) {
                    Word ws = w;
                    ws.push_back(s);
                    total += mu.cylinder_mass(ws);
                }
                CHECK(total == mu.cylinder_mass(w));
            }
        }
    };
    check_additivity(biased());
    check_additivity(Measure<Rational>::markov(
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}}));
}

TEST_CASE("total mass over Lambda^m is exactly 1 for m <= 6") {
    auto mu = biased();
    for (int m = 1; m <= 6; ++m) {
        std::uint64_t n = 1;
        for (int i = 0; i < m; ++i) n *= 2;
        Rational total(0);
        for (std::uint64_t idx = 0; idx < n; ++idx)
            total += mu.cylinder_mass(word_from_index(idx, 2, m));
        CHECK(total == 1);
    }
}

TEST_CASE("stationary distribution of a 2-state chain is exact") {
    // P = [[1/2,1/2],[1/4,3/4]] has stationary vector (1/3, 2/3).
    std::vector<std::vector<Rational>> P = {
        {Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}};
    auto pi = stationary_distribution(P);
    REQUIRE(pi.size() == 2);
    CHECK(pi[0] == Rational(1, 3));
    CHECK(pi[1] == Rational(2, 3));
}

TEST_CASE("stationary distribution rejects bad chains") {
    // Not row-stochastic.
    CHECK_THROWS_AS(stationary_distribution<Rational>(
                        {{Rational(1, 2), Rational(1, 4)},
                         {Rational(1, 4), Rational(3, 4)}}),
                    Error);
    // Reducible (two absorbing states).
    CHECK_THROWS_AS(stationary_distribution<Rational>(
                        {{Rational(1), Rational(0)},
                         {Rational(0), Rational(1)}}),
                    Error);
}

TEST_CASE("entropy oracle values") {
    CHECK(entropy(biased()) ==
          doctest::Approx(0.8812908992306926).epsilon(1e-12));
    CHECK(entropy(Measure<double>::bernoulli({0.5, 0.5})) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropy(Measure<double>::bernoulli({1.0, 0.0})) == 0.0);
    // Markov chain above: h = (1/3)*1 + (2/3)*h(1/4, 3/4).
    auto markov = Measure<Rational>::markov(
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}});
    CHECK(entropy(markov) ==
          doctest::Approx(0.8741854163060886).epsilon(1e-12));
}

TEST_CASE("Lyapunov exponent oracle values") {
    CHECK(lyapunov(biased(), cantor()) ==
          doctest::Approx(-1.584962500721156).epsilon(1e-12));
    // Mixed ratios weight by the marginal.
    Ifs<double> mixed({{0.5, 0.0}, {0.25, 0.5}});
    auto mu = Measure<double>::bernoulli({0.5, 0.5});
    CHECK(lyapunov(mu, mixed) == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK_THROWS_AS(
        lyapunov(Measure<double>::bernoulli({0.2, 0.3, 0.5}), cantor()), Error);
}

TEST_CASE("sample_word is deterministic per (seed, stream)") {
    auto mu = to_double_measure(biased());
    Word a = sample_word(mu, 64, 42, 0);
    Word b = sample_word(mu, 64, 42, 0);
    Word c = sample_word(mu, 64, 42, 1);
    Word d = sample_word(mu, 64, 43, 0);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != d);
}

TEST_CASE("sample_word frequencies match the marginal") {
    auto mu = Measure<double>::bernoulli({0.5, 0.5});
    Word w = sample_word(mu, 4096, 7, 0);
    double ones = 0;
    for (int s : w) ones += s;
    CHECK(ones / 4096.0 == doctest::Approx(0.5).epsilon(0.05));

    auto markov = Measure<double>::markov({{0.5, 0.5}, {0.25, 0.75}});
    Word v = sample_word(markov, 4096, 7, 0);
    double m_ones = 0;
    for (int s : v) m_ones += s;
    // Stationary frequency of state 1 is 2/3.
    CHECK(m_ones / 4096.0 == doctest::Approx(2.0 / 3.0).epsilon(0.05));
}
