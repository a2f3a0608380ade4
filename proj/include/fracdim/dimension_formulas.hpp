#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracdim/ifs.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

// Tri-state hypothesis flag: predictions whose hypotheses are unknown or
// false are still emitted, with the flag carried alongside, never silently.
enum class FlagState { yes, no, unknown };

inline const char* flag_name(FlagState s) {
    switch (s) {
        case FlagState::yes: return "yes";
        case FlagState::no: return "no";
        default: return "unknown";
    }
}

struct DimensionReport {
    std::string name;
    double predicted = 0;
    std::map<std::string, double> inputs;
    std::map<std::string, FlagState> hypothesis_flags;
};

// min{1, h / -chi}; h in bits, chi negative bits.
double projection_dimension(double entropy_bits, double lyapunov_bits);

// Same arithmetic with chi = log2(r); separate name so reports can cite the
// planar projection statement.
double orthogonal_projection_dimension(double entropy_bits, double ratio);

// s >= 0 solving sum |r_lambda|^s = 1, residual <= 1e-12.
template <class T>
double similarity_dimension(const Ifs<T>& ifs);

double similarity_dimension(const std::vector<double>& abs_ratios);

struct MultiplicativeDependence {
    FlagState independent = FlagState::unknown;
    int a = 0, b = 0;    // minimal exponents with r1^a == r2^b when dependent
    int bound = 0;       // exponent search bound (independence is within it)
};

// Exact decision for rational ratios, searched up to max(a, b) <= 64.
MultiplicativeDependence multiplicative_dependence(const Rational& r1,
                                                   const Rational& r2,
                                                   int bound = 64);

struct ConvolutionPrediction {
    DimensionReport report;
    MultiplicativeDependence dependence;
};

ConvolutionPrediction convolution_dimension(
    double h1, double r1, double h2, double r2,
    std::optional<std::pair<Rational, Rational>> exact_ratios = std::nullopt);

struct LyapunovDimension {
    double value = 0;
    bool entropy_below_chi1 = false;  // branch h <= chi1
    double feng_hu_form = 0;          // h_pi1/chi1 + (h - h_pi1)/chi2
};

// Diagonal self-affine formula min{h/chi1, 1 + (h-chi1)/chi2} with positive
// exponents 0 < chi1 <= chi2; the projected-entropy form is evaluated with
// h_pi1 = min{h, chi1} and cross-checked.
LyapunovDimension lyapunov_dimension_diagonal(double h, double chi1,
                                              double chi2);

struct LqLowerBound {
    double lower = 0;  // max{0, h/-chi - (s - alpha_min)}
    double upper = 0;  // min{1, h/-chi}
};

LqLowerBound lq_lower_bound(double h, double chi, double s, double alpha_min);

template <class T>
double similarity_dimension(const Ifs<T>& ifs) {
    std::vector<double> ratios;
    for (const auto& g : ifs.maps())
        ratios.push_back(to_double(scalar_abs(g.ratio)));
    return similarity_dimension(ratios);
}

}  // namespace fracdim
