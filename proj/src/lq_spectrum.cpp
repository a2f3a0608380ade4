#include "fracdim/lq_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracdim/numeric.hpp"

namespace fracdim {

namespace {

// log(sum exp(e_i)) without overflow/underflow.
double log_sum_exp(const std::vector<double>& e) {
    double m = *std::max_element(e.begin(), e.end());
    double s = 0;
    for (double x : e) s += std::exp(x - m);
    return m + std::log(s);
}

struct MomentFunction {
    std::vector<double> log_p;  // natural logs
    std::vector<double> log_r;  // negative

    // log F(tau) with F(tau) = sum exp(q log_p - tau log_r).
    double log_value(double q, double tau) const {
        std::vector<double> e(log_p.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = q * log_p[i] - tau * log_r[i];
        return log_sum_exp(e);
    }

    // d/dtau of log F at tau.
    double log_derivative(double q, double tau) const {
        std::vector<double> e(log_p.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = q * log_p[i] - tau * log_r[i];
        double m = *std::max_element(e.begin(), e.end());
        double num = 0, den = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            double w = std::exp(e[i] - m);
            num += w * -log_r[i];
            den += w;
        }
        return num / den;
    }
};

}  // namespace

LqPoint solve_tau(std::vector<double> p, std::vector<double> ratios, double q) {
    if (q <= 1) fail(ErrorKind::invalid_input, "need q > 1");
    if (p.size() != ratios.size())
        fail(ErrorKind::invalid_input, "weight/ratio vectors differ in length");
    if (p.empty()) fail(ErrorKind::invalid_input, "empty weight vector");

    LqPoint point;
    point.q = q;
    MomentFunction f;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) fail(ErrorKind::invalid_input, "negative weight");
        if (p[i] == 0) {
            ++point.dropped_zeros;
            continue;
        }
        if (!(ratios[i] > 0 && ratios[i] < 1))
            fail(ErrorKind::invalid_input,
                 "ratio " + std::to_string(ratios[i]) + " outside (0, 1)");
        f.log_p.push_back(std::log(p[i]));
        f.log_r.push_back(std::log(ratios[i]));
    }
    if (f.log_p.empty())
        fail(ErrorKind::invalid_input, "all weights are zero");

    const double log_pq = f.log_value(q, 0.0);  // log ||p||_q^q, <= 0
    double tau = 0;
    if (log_pq < 0) {
        // F is strictly increasing in tau with F(0) <= 1, and
        // F(log||p||_q^q / log(max r)) >= 1 brackets the root.
        double lo = 0;
        double hi = log_pq / *std::max_element(f.log_r.begin(), f.log_r.end());
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            (f.log_value(q, mid) < 0 ? lo : hi) = mid;
        }
        tau = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it)
            tau -= f.log_value(q, tau) / f.log_derivative(q, tau);
        tau = std::max(tau, 0.0);
    }
    point.tau = tau;
    point.residual = std::expm1(f.log_value(q, tau));
    point.lq_dim = std::min(1.0, tau / (q - 1));
    if (std::abs(point.residual) > 1e-12)
        fail(ErrorKind::diagnostic,
             "tau solver residual " + std::to_string(point.residual) +
                 " exceeds 1e-12");
    return point;
}

double lq_dimension(const std::vector<double>& p,
                    const std::vector<double>& ratios, double q) {
    return solve_tau(p, ratios, q).lq_dim;
}

double lq_dimension_homogeneous(const std::vector<double>& p, double ratio,
                                double q) {
    if (q <= 1) fail(ErrorKind::invalid_input, "need q > 1");
    if (!(ratio > 0 && ratio < 1))
        fail(ErrorKind::invalid_input, "ratio outside (0, 1)");
    std::vector<double> e;
    for (double x : p) {
        if (x < 0) fail(ErrorKind::invalid_input, "negative weight");
        if (x > 0) e.push_back(q * std::log(x));
    }
    if (e.empty()) fail(ErrorKind::invalid_input, "all weights are zero");
    double log_pq = log_sum_exp(e);
    return std::min(1.0, log_pq / ((q - 1) * std::log(ratio)));
}

AlphaMin alpha_min(const std::vector<double>& p,
                   const std::vector<double>& ratios) {
    // Route (i): the uncapped ratio tau/(q-1) is affine in 1/(q-1) up to
    // exponentially small terms, so a least-squares line through three
    // large q values extrapolates the limit; the cap is applied afterwards.
    const double qs[] = {64.0, 128.0, 256.0};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double q : qs) {
        double x = 1.0 / (q - 1);
        double y = solve_tau(p, ratios, q).tau / (q - 1);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const int n = 3;
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;

    AlphaMin result;
    result.extrapolated = std::min(1.0, intercept);

    double candidate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0)
            candidate = std::min(candidate, std::log(p[i]) / std::log(ratios[i]));
    result.candidate = std::min(1.0, candidate);

    if (std::abs(result.extrapolated - result.candidate) > 1e-6)
        fail(ErrorKind::diagnostic,
             "alpha_min routes disagree: extrapolated " +
                 std::to_string(result.extrapolated) + " vs candidate " +
                 std::to_string(result.candidate));
    result.value = result.candidate;
    return result;
}

}  // namespace fracdim
