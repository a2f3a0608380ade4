#include <doctest.h>

#include <cmath>

#include "fracdim/estimators.hpp"

using namespace fracdim;

namespace {

Ifs<double> cantor() {
    return Ifs<double>({{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}});
}

Measure<double> uniform2() { return Measure<double>::bernoulli({0.5, 0.5}); }

const std::vector<int> kScales = {6, 7, 8, 9, 10, 11, 12};

}  // namespace

TEST_CASE("push_samples is deterministic and respects the seed") {
    SampleSet a = push_samples(uniform2(), cantor(), 20, 1000, 42);
    SampleSet b = push_samples(uniform2(), cantor(), 20, 1000, 42);
    SampleSet c = push_samples(uniform2(), cantor(), 20, 1000, 43);
    CHECK(a.xs == b.xs);
    CHECK(a.xs != c.xs);
}

TEST_CASE("degenerate measure collapses to the fixed point") {
    auto mu = Measure<double>::bernoulli({1.0, 0.0});
    SampleSet s = push_samples(mu, cantor(), 20, 100, 1);
    for (double x : s.xs) CHECK(x == 0.0);
}

TEST_CASE("uniform Cantor sample mean is 1/2 by symmetry") {
    SampleSet s = push_samples(uniform2(), cantor(), 20, 100'000, 7);
    double mean = 0;
    for (double x : s.xs) mean += x;
    mean /= static_cast<double>(s.xs.size());
    CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
    // Attractor bound [-1, 1] up to double rounding of 1/3 arithmetic.
    CHECK(s.anchor == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s.trunc_bound == doctest::Approx(std::pow(3.0, -20) * 3.0));
}

TEST_CASE("resolution guard rejects scales finer than the truncation bound") {
    SampleSet shallow = push_samples(uniform2(), cantor(), 5, 100, 1);
    try {
        coarse_entropy_dimension(shallow, {6, 7, 8});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::guard_violation);
        CHECK(std::string(e.what()).find("depth") != std::string::npos);
    }
    CHECK_THROWS_AS(coarse_entropy_dimension(shallow, {1, 2}), Error);
}

TEST_CASE("coarse entropy recovers the Cantor dimension") {
    SampleSet s = push_samples(uniform2(), cantor(), 25, 50'000, 11);
    DimensionEstimate est = coarse_entropy_dimension(s, kScales);
    CHECK(est.estimate == doctest::Approx(0.6309297535714574).epsilon(0.08));
    CHECK(est.per_scale.size() == kScales.size());
    CHECK(est.coarsest_exponent == 6);
    CHECK(est.finest_exponent == 12);
}

TEST_CASE("point mass gives slope 0 in all three estimators") {
    auto mu = Measure<double>::bernoulli({1.0, 0.0});
    SampleSet s = push_samples(mu, cantor(), 25, 20'000, 3);
    CHECK(coarse_entropy_dimension(s, kScales).estimate == 0.0);
    CHECK(local_dimension_stats(s, kScales).estimate == 0.0);
    CHECK(correlation_dimension(s, kScales).estimate == 0.0);
}

TEST_CASE("Lebesgue calibration: all three estimators near 1") {
    SampleSet s = uniform_calibration_samples(100'000, 5);
    std::vector<int> scales = {5, 6, 7, 8, 9, 10};
    CHECK(coarse_entropy_dimension(s, scales).estimate ==
          doctest::Approx(1.0).epsilon(0.03));
    CHECK(local_dimension_stats(s, scales).estimate ==
          doctest::Approx(1.0).epsilon(0.03));
    CHECK(correlation_dimension(s, scales).estimate ==
          doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("cross-estimator coherence on uniform Cantor") {
    SampleSet s = push_samples(uniform2(), cantor(), 25, 100'000, 13);
    double ce = coarse_entropy_dimension(s, kScales).estimate;
    double ld = local_dimension_stats(s, kScales).estimate;
    double co = correlation_dimension(s, kScales).estimate;
    CHECK(std::abs(ce - ld) <= 0.06);
    CHECK(std::abs(ce - co) <= 0.06);
    CHECK(std::abs(ld - co) <= 0.06);
}

TEST_CASE("local-dimension stats concentrate for exact-dimensional input") {
    SampleSet s = push_samples(uniform2(), cantor(), 25, 50'000, 17);
    DimensionEstimate est = local_dimension_stats(s, kScales);
    CHECK(est.estimate == doctest::Approx(0.6309297535714574).epsilon(0.1));
    CHECK(est.iqr <= 0.1);
    CHECK(est.method == "local-dimension");
}

TEST_CASE("local-dimension stats require 10^4 samples") {
    SampleSet s = push_samples(uniform2(), cantor(), 25, 1000, 1);
    CHECK_THROWS_AS(local_dimension_stats(s, kScales), Error);
}

TEST_CASE("convolution with a point mass is exact shift invariance") {
    auto point_ifs = Ifs<double>({{0.5, 0.0}});
    auto point_mu = Measure<double>::bernoulli({1.0});
    SampleSet conv = convolution_samples(uniform2(), cantor(), point_mu,
                                         point_ifs, 1.0, 25, 20'000, 9);
    // Stream 1 is the first factor's stream inside convolution_samples.
    SampleSet direct = push_samples(uniform2(), cantor(), 25, 20'000, 9, 1);
    CHECK(conv.xs == direct.xs);
    CHECK(conv.anchor == direct.anchor);
    DimensionEstimate a = coarse_entropy_dimension(conv, kScales);
    DimensionEstimate b = coarse_entropy_dimension(direct, kScales);
    CHECK(a.estimate == b.estimate);
}

TEST_CASE("convolution of point masses is constant") {
    auto p1 = Ifs<double>({{0.5, 0.25}});
    auto p2 = Ifs<double>({{0.5, 0.125}});
    auto mu = Measure<double>::bernoulli({1.0});
    SampleSet s = convolution_samples(mu, p1, mu, p2, 1.0, 30, 100, 2);
    for (double x : s.xs) CHECK(x == doctest::Approx(s.xs[0]).epsilon(1e-12));
}

TEST_CASE("planar samples: zero translations give the origin") {
    PlanarIfs pifs(1.0 / 3.0, 1.0, false, {{0.0, 0.0}, {0.0, 0.0}}, true);
    SampleSet s = planar_projection_samples(uniform2(), pifs, 0.7, 20, 50, 3);
    for (double x : s.xs) CHECK(x == 0.0);
}

TEST_CASE("2-D coarse entropy on a product of Cantor sets") {
    // Four symbols mapping onto the Cantor x Cantor product with uniform
    // weights: dimension 2 * log2/log3.
    DiagonalAffineIfs difs({1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3},
                           {1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3},
                           {0.0, 0.0, 2.0 / 3, 2.0 / 3},
                           {0.0, 2.0 / 3, 0.0, 2.0 / 3});
    auto mu = Measure<double>::bernoulli({0.25, 0.25, 0.25, 0.25});
    SampleSet2D s = diagonal_affine_samples(mu, difs, 25, 50'000, 19);
    DimensionEstimate est = coarse_entropy_dimension_2d(s, {5, 6, 7, 8, 9});
    CHECK(est.estimate == doctest::Approx(2 * 0.6309297535714574).epsilon(0.08));
}

TEST_CASE("2-D point mass gives slope 0") {
    DiagonalAffineIfs difs({0.5}, {0.5}, {0.0}, {0.0});
    auto mu = Measure<double>::bernoulli({1.0});
    SampleSet2D s = diagonal_affine_samples(mu, difs, 30, 1000, 1);
    CHECK(coarse_entropy_dimension_2d(s, {3, 4, 5}).estimate == 0.0);
}
