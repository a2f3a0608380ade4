#include "fracdim/dimension_formulas.hpp"

#include <algorithm>
#include <cmath>

namespace fracdim {

double projection_dimension(double entropy_bits, double lyapunov_bits) {
    if (entropy_bits < 0)
        fail(ErrorKind::invalid_input, "entropy must be nonnegative");
    if (lyapunov_bits >= 0)
        fail(ErrorKind::invalid_input, "Lyapunov exponent must be negative");
    return std::min(1.0, entropy_bits / -lyapunov_bits);
}

double orthogonal_projection_dimension(double entropy_bits, double ratio) {
    if (!(ratio > 0 && ratio < 1))
        fail(ErrorKind::invalid_input, "ratio outside (0, 1)");
    return projection_dimension(entropy_bits, std::log2(ratio));
}

double similarity_dimension(const std::vector<double>& abs_ratios) {
    if (abs_ratios.empty()) fail(ErrorKind::invalid_input, "empty IFS");
    double rmax = 0;
    for (double r : abs_ratios) {
        if (!(r > 0 && r < 1))
            fail(ErrorKind::invalid_input, "ratio outside (0, 1)");
        rmax = std::max(rmax, r);
    }
    auto value = [&](double s) {
        double sum = 0;
        for (double r : abs_ratios) sum += std::pow(r, s);
        return sum;
    };
    // Strictly decreasing; value(0) = |Lambda| >= 1 and the upper endpoint
    // has value(hi) <= |Lambda| rmax^hi = 1.
    double lo = 0;
    double hi = std::log2(static_cast<double>(abs_ratios.size())) /
                -std::log2(rmax);
    if (hi == 0) return 0;  // single map: s = 0
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (value(mid) > 1 ? lo : hi) = mid;
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        double f = 0, df = 0;
        for (double r : abs_ratios) {
            double t = std::pow(r, s);
            f += t;
            df += t * std::log(r);
        }
        s -= (f - 1) / df;
    }
    return s;
}

MultiplicativeDependence multiplicative_dependence(const Rational& r1,
                                                   const Rational& r2,
                                                   int bound) {
    if (!(r1 > 0 && r1 < 1 && r2 > 0 && r2 < 1))
        fail(ErrorKind::invalid_input, "ratios must lie in (0, 1)");
    MultiplicativeDependence result;
    result.bound = bound;
    std::vector<Rational> pow1(static_cast<std::size_t>(bound) + 1),
        pow2(static_cast<std::size_t>(bound) + 1);
    pow1[0] = pow2[0] = 1;
    for (int i = 1; i <= bound; ++i) {
        pow1[static_cast<std::size_t>(i)] = pow1[static_cast<std::size_t>(i - 1)] * r1;
        pow2[static_cast<std::size_t>(i)] = pow2[static_cast<std::size_t>(i - 1)] * r2;
    }
    for (int a = 1; a <= bound; ++a) {
        for (int b = 1; b <= bound; ++b) {
            if (pow1[static_cast<std::size_t>(a)] == pow2[static_cast<std::size_t>(b)]) {
                result.independent = FlagState::no;
                result.a = a;
                result.b = b;
                return result;
            }
        }
    }
    result.independent = FlagState::yes;  // within the reported bound
    return result;
}

ConvolutionPrediction convolution_dimension(
    double h1, double r1, double h2, double r2,
    std::optional<std::pair<Rational, Rational>> exact_ratios) {
    if (h1 < 0 || h2 < 0)
        fail(ErrorKind::invalid_input, "entropy must be nonnegative");
    if (!(r1 > 0 && r1 < 1 && r2 > 0 && r2 < 1))
        fail(ErrorKind::invalid_input, "ratios must lie in (0, 1)");

    ConvolutionPrediction out;
    if (exact_ratios)
        out.dependence =
            multiplicative_dependence(exact_ratios->first, exact_ratios->second);

    DimensionReport& rep = out.report;
    rep.name = "convolution";
    rep.inputs = {{"h1", h1}, {"r1", r1}, {"h2", h2}, {"r2", r2}};
    rep.predicted =
        std::min(1.0, h1 / -std::log2(r1) + h2 / -std::log2(r2));
    rep.hypothesis_flags["multiplicative_independence"] =
        out.dependence.independent;
    rep.hypothesis_flags["joint_exponential_separation"] = FlagState::unknown;
    return out;
}

LyapunovDimension lyapunov_dimension_diagonal(double h, double chi1,
                                              double chi2) {
    if (h < 0) fail(ErrorKind::invalid_input, "entropy must be nonnegative");
    if (!(chi1 > 0 && chi1 <= chi2))
        fail(ErrorKind::invalid_input, "need 0 < chi1 <= chi2");
    LyapunovDimension result;
    result.value = std::min(h / chi1, 1 + (h - chi1) / chi2);
    result.entropy_below_chi1 = h <= chi1;
    double h_pi1 = std::min(h, chi1);
    result.feng_hu_form = h_pi1 / chi1 + (h - h_pi1) / chi2;
    if (std::abs(result.feng_hu_form - result.value) > 1e-12)
        fail(ErrorKind::diagnostic,
             "Lyapunov dimension forms disagree beyond 1e-12");
    return result;
}

LqLowerBound lq_lower_bound(double h, double chi, double s, double alpha_min) {
    if (chi >= 0)
        fail(ErrorKind::invalid_input, "Lyapunov exponent must be negative");
    if (s < alpha_min)
        fail(ErrorKind::invalid_input,
             "similarity dimension below alpha_min; inconsistent inputs");
    LqLowerBound bound;
    bound.lower = std::max(0.0, h / -chi - (s - alpha_min));
    bound.upper = std::min(1.0, h / -chi);
    return bound;
}

}  // namespace fracdim
