#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fracdim/ifs.hpp"
#include "fracdim/measures.hpp"

namespace fracdim {

// Planar similarity IFS {r U x + a_lambda} with U a rotation, optionally
// composed with a reflection. rotation_aperiodic is a user assertion that
// U^n != Id for all n >= 1; the artifact cannot verify it.
struct PlanarIfs {
    double ratio = 0;
    double angle = 0;  // radians
    bool reflection = false;
    std::vector<std::array<double, 2>> translations;
    bool rotation_aperiodic = false;

    PlanarIfs(double ratio_, double angle_, bool reflection_,
              std::vector<std::array<double, 2>> translations_,
              bool rotation_aperiodic_);

    int alphabet_size() const { return static_cast<int>(translations.size()); }
    double max_translation_norm() const;
};

// Diagonal self-affine IFS (x, y) |-> (a x + s, b y + t) per symbol.
struct DiagonalAffineIfs {
    std::vector<double> a, b, s, t;

    DiagonalAffineIfs(std::vector<double> a_, std::vector<double> b_,
                      std::vector<double> s_, std::vector<double> t_);

    int alphabet_size() const { return static_cast<int>(a.size()); }
    Ifs<double> x_system() const;
    Ifs<double> y_system() const;
};

struct SampleSet {
    std::vector<double> xs;
    int depth = 0;
    double trunc_bound = 0;  // per-point truncation error bound
    std::uint64_t seed = 0;
    double anchor = 0;      // left end of the bounding interval (bin anchor)
    double max_ratio = 0;   // contraction per extra depth step; 0 = exact
};

struct SampleSet2D {
    std::vector<std::array<double, 2>> points;
    int depth = 0;
    double trunc_bound = 0;
    std::uint64_t seed = 0;
    std::array<double, 2> anchor = {0, 0};
    double max_ratio = 0;
};

// i.i.d. draws of phi_{omega|depth}(0) with omega ~ mu; deterministic per
// (seed, stream, sample index).
SampleSet push_samples(const Measure<double>& mu, const Ifs<double>& ifs,
                       int depth, std::uint64_t count, std::uint64_t seed,
                       std::uint64_t stream = 0);

// Raw uniform draws on [0, 1); the Lebesgue calibration input.
SampleSet uniform_calibration_samples(std::uint64_t count, std::uint64_t seed);

// Samples of X + t*Y with X, Y independent pushforward draws; t = 1 gives
// the plain convolution.
SampleSet convolution_samples(const Measure<double>& mu1,
                              const Ifs<double>& ifs1,
                              const Measure<double>& mu2,
                              const Ifs<double>& ifs2, double t, int depth,
                              std::uint64_t count, std::uint64_t seed);

// Samples of <z, Pi omega> for the planar system, z = (cos a, sin a).
SampleSet planar_projection_samples(const Measure<double>& mu,
                                    const PlanarIfs& pifs, double z_angle,
                                    int depth, std::uint64_t count,
                                    std::uint64_t seed);

SampleSet2D diagonal_affine_samples(const Measure<double>& mu,
                                    const DiagonalAffineIfs& difs, int depth,
                                    std::uint64_t count, std::uint64_t seed);

struct ScaleStat {
    int exponent = 0;     // scale 2^-exponent
    double value = 0;     // entropy bits / log2 mass fraction / log2 pair fraction
    std::uint64_t count = 0;  // occupied bins or pair count
};

struct DimensionEstimate {
    double estimate = 0;
    double standard_error = 0;
    std::string method;
    int coarsest_exponent = 0;
    int finest_exponent = 0;
    std::vector<ScaleStat> per_scale;
    double anchor = 0;
    double iqr = 0;           // local-dimension method only
    int dropped_centers = 0;  // local-dimension method only
};

// Scale exponents j denote dyadic scales 2^-j. At least 3 scales; the
// finest must be >= 4x the truncation error bound of the sample set.

// Least-squares slope of empirical bin entropy against -log2(scale); bins
// are the dyadic grid anchored at the sample set's anchor.
DimensionEstimate coarse_entropy_dimension(const SampleSet& samples,
                                           const std::vector<int>& scale_exponents);

DimensionEstimate coarse_entropy_dimension_2d(const SampleSet2D& samples,
                                              const std::vector<int>& scale_exponents);

// Median over deterministic centers (the first 512 samples) of the
// regression slope of log2(mass fraction in B(x, delta)) vs log2(delta).
DimensionEstimate local_dimension_stats(const SampleSet& samples,
                                        const std::vector<int>& radius_exponents);

// Slope of log2(fraction of sample pairs within delta) vs log2(delta); an
// empirical q = 2 check against the moment-equation spectrum.
DimensionEstimate correlation_dimension(const SampleSet& samples,
                                        const std::vector<int>& radius_exponents);

}  // namespace fracdim
