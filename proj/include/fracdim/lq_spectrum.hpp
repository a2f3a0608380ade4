#pragma once

#include <vector>

#include "fracdim/coarse_grain.hpp"
#include "fracdim/ifs.hpp"

namespace fracdim {

// One point of the L^q spectrum: tau solves sum p_i^q |r_i|^(-tau) = 1.
struct LqPoint {
    double q = 0;
    double tau = 0;
    double lq_dim = 0;    // min{1, tau/(q-1)}
    double residual = 0;  // sum p^q r^(-tau) - 1 at the returned tau
    int dropped_zeros = 0;
};

// Solves the moment equation for tau >= 0. Zero-probability entries are
// dropped first; evaluation is in log-sum-exp form so p^q does not
// underflow for large q.
LqPoint solve_tau(std::vector<double> p, std::vector<double> ratios, double q);

double lq_dimension(const std::vector<double>& p,
                    const std::vector<double>& ratios, double q);

// Closed form for a single shared ratio: min{1, log||p||_q^q / ((q-1)log r)}.
double lq_dimension_homogeneous(const std::vector<double>& p, double ratio,
                                double q);

struct AlphaMin {
    double value = 0;         // agreed limit of the L^q dimension as q -> inf
    double extrapolated = 0;  // route (i): large-q evaluation + extrapolation
    double candidate = 0;     // route (ii): min{1, min_i log p_i / log r_i}
};

// Computes the q -> infinity limit two ways and cross-checks to 1e-6;
// disagreement raises a diagnostic error rather than returning silently.
AlphaMin alpha_min(const std::vector<double>& p,
                   const std::vector<double>& ratios);

struct TauLowerBoundCheck {
    double q = 0;    // 1/delta
    double lhs = 0;  // tau/(q-1) for the blocked weight/ratio vectors
    double rhs = 0;  // (h-delta)/(delta-chi) - delta
    bool holds = false;
    bool side_conditions_hold = false;  // construction hypotheses and delta < h
};

template <class T>
TauLowerBoundCheck tau_lower_bound_check(
    const CoarseGraining& cg, const Ifs<T>& ifs,
    std::uint64_t budget = kDefaultEnumerationBudget) {
    if (cg.variant != CoarseVariant::full)
        fail(ErrorKind::invalid_input,
             "tau lower-bound check needs the full coarse-graining variant");
    TauLowerBoundCheck check;
    check.q = 1.0 / cg.delta;
    if (check.q <= 1)
        fail(ErrorKind::invalid_input, "need delta < 1 so that q = 1/delta > 1");
    LqPoint point =
        solve_tau(cg.weights, blocked_abs_ratios(ifs, cg.m, budget), check.q);
    check.lhs = point.tau / (check.q - 1);
    check.rhs = (cg.base_entropy - cg.delta) /
                    (cg.delta - cg.base_lyapunov) -
                cg.delta;
    check.holds = check.lhs >= check.rhs;
    check.side_conditions_hold =
        cg.hypotheses_hold && cg.delta < cg.base_entropy;
    return check;
}

}  // namespace fracdim
