#include <doctest.h>

#include <cmath>

#include "fracdim/dimension_formulas.hpp"

using namespace fracdim;

TEST_CASE("similarity dimension oracle values") {
    Ifs<Rational> cantor({{Rational(1, 3), Rational(0)},
                          {Rational(1, 3), Rational(2, 3)}});
    CHECK(similarity_dimension(cantor) ==
          doctest::Approx(0.6309297535714574).epsilon(1e-12));
    CHECK(similarity_dimension(std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // (1/2)^s + (1/3)^s = 1.
    double s = similarity_dimension(std::vector<double>{0.5, 1.0 / 3.0});
    CHECK(s == doctest::Approx(0.7878849110258698).epsilon(1e-12));
    CHECK(std::abs(std::pow(0.5, s) + std::pow(1.0 / 3.0, s) - 1) <= 1e-12);
    CHECK(similarity_dimension(std::vector<double>{0.5}) == 0.0);
}

TEST_CASE("projection dimension formula") {
    CHECK(projection_dimension(1.0, -1.0) == 1.0);
    CHECK(projection_dimension(0.8812908992306926, -1.584962500721156) ==
          doctest::Approx(0.556032649876389).epsilon(1e-12));
    CHECK(projection_dimension(0.0, -1.0) == 0.0);
    CHECK(projection_dimension(3.0, -1.0) == 1.0);  // capped
    CHECK_THROWS_AS(projection_dimension(1.0, 0.0), Error);
    CHECK_THROWS_AS(projection_dimension(-0.1, -1.0), Error);
}

TEST_CASE("orthogonal projection shares the projection code path") {
    CHECK(orthogonal_projection_dimension(std::log2(3.0), 1.0 / 3.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(orthogonal_projection_dimension(1.1567796494470395, 1.0 / 3.0) ==
          doctest::Approx(0.7298466991620975).epsilon(1e-12));
    CHECK(orthogonal_projection_dimension(0.0, 0.5) == 0.0);
    for (double h : {0.2, 0.9, 1.7})
        for (double r : {0.2, 1.0 / 3.0, 0.75})
            CHECK(orthogonal_projection_dimension(h, r) ==
                  projection_dimension(h, std::log2(r)));
}

TEST_CASE("multiplicative dependence decision") {
    auto d1 = multiplicative_dependence(Rational(1, 4), Rational(1, 8));
    CHECK(d1.independent == FlagState::no);
    CHECK(d1.a == 3);
    CHECK(d1.b == 2);

    auto d2 = multiplicative_dependence(Rational(1, 3), Rational(1, 4));
    CHECK(d2.independent == FlagState::yes);
    CHECK(d2.bound == 64);

    auto d3 = multiplicative_dependence(Rational(1, 2), Rational(1, 2));
    CHECK(d3.independent == FlagState::no);
    CHECK(d3.a == 1);
    CHECK(d3.b == 1);

    CHECK_THROWS_AS(multiplicative_dependence(Rational(3, 2), Rational(1, 2)),
                    Error);
}

TEST_CASE("convolution dimension formula") {
    // Uniform Cantor(1/3) * uniform Cantor(1/4): 0.63093 + 0.5, capped at 1.
    auto uniform = convolution_dimension(
        1.0, 1.0 / 3.0, 1.0, 0.25, {{Rational(1, 3), Rational(1, 4)}});
    CHECK(uniform.report.predicted == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(uniform.dependence.independent == FlagState::yes);

    // Bernoulli(0.9,0.1) on Cantor(1/3) * Bernoulli(0.8,0.2) on Cantor(1/4).
    auto biased = convolution_dimension(0.4689955935892812, 1.0 / 3.0,
                                        0.7219280948873623, 0.25,
                                        {{Rational(1, 3), Rational(1, 4)}});
    CHECK(biased.report.predicted ==
          doctest::Approx(0.6568673217330657).epsilon(1e-12));

    auto zero = convolution_dimension(0.0, 0.5, 0.0, 0.5);
    CHECK(zero.report.predicted == 0.0);
    // No exact ratios given: the independence flag stays unknown.
    CHECK(zero.dependence.independent == FlagState::unknown);
    CHECK(zero.report.hypothesis_flags.at("multiplicative_independence") ==
          FlagState::unknown);
}

TEST_CASE("Lyapunov dimension for diagonal systems") {
    const double log3 = std::log2(3.0);
    LyapunovDimension boundary = lyapunov_dimension_diagonal(1.0, 1.0, log3);
    CHECK(boundary.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(boundary.entropy_below_chi1);

    LyapunovDimension generic = lyapunov_dimension_diagonal(log3, 1.0, log3);
    CHECK(generic.value == doctest::Approx(1.3690702464285425).epsilon(1e-12));
    CHECK(!generic.entropy_below_chi1);
    CHECK(generic.feng_hu_form == doctest::Approx(generic.value).epsilon(1e-12));

    CHECK(lyapunov_dimension_diagonal(0.0, 1.0, 2.0).value == 0.0);
    CHECK_THROWS_AS(lyapunov_dimension_diagonal(1.0, 2.0, 1.0), Error);
    CHECK_THROWS_AS(lyapunov_dimension_diagonal(1.0, 0.0, 1.0), Error);
}

TEST_CASE("Lyapunov min-form matches the Feng-Hu form on a grid") {
    for (double h : {0.0, 0.3, 1.0, 1.3, 2.5})
        for (double chi1 : {0.5, 1.0, 1.5})
            for (double chi2 : {1.5, 2.0}) {
                LyapunovDimension d = lyapunov_dimension_diagonal(h, chi1, chi2);
                CHECK(std::abs(d.value - d.feng_hu_form) <= 1e-12);
            }
}

TEST_CASE("Lq lower bound brackets the projection dimension") {
    const double s = 0.6309297535714574;
    const double chi = -1.584962500721156;
    // Uniform Cantor: s = alpha_min, so the bound is tight.
    LqLowerBound tight = lq_lower_bound(1.0, chi, s, s);
    CHECK(tight.lower == doctest::Approx(s).epsilon(1e-12));
    CHECK(tight.upper == doctest::Approx(s).epsilon(1e-12));

    // Bernoulli(0.7, 0.3) with the uniform reference weights r^s.
    LqLowerBound biased = lq_lower_bound(0.8812908992306926, chi, s, s);
    CHECK(biased.lower == doctest::Approx(0.556032649876389).epsilon(1e-12));
    CHECK(biased.lower <= biased.upper);

    // Degenerate alpha_min = 0 clamps at zero.
    LqLowerBound clamped = lq_lower_bound(0.1, chi, 1.0, 0.0);
    CHECK(clamped.lower == 0.0);

    CHECK_THROWS_AS(lq_lower_bound(1.0, chi, 0.3, 0.5), Error);
    CHECK_THROWS_AS(lq_lower_bound(1.0, 0.5, 1.0, 0.5), Error);
}

TEST_CASE("formulas are monotone nondecreasing in entropy") {
    double prev_proj = -1, prev_conv = -1, prev_lyap = -1;
    for (double h : {0.0, 0.4, 0.8, 1.2, 1.6}) {
        double proj = projection_dimension(h, -1.584962500721156);
        double conv = convolution_dimension(h, 1.0 / 3.0, 0.3, 0.25)
                          .report.predicted;
        double lyap = lyapunov_dimension_diagonal(h, 1.0, 1.5).value;
        CHECK(proj >= prev_proj);
        CHECK(conv >= prev_conv);
        CHECK(lyap >= prev_lyap);
        prev_proj = proj;
        prev_conv = conv;
        prev_lyap = lyap;
    }
}
