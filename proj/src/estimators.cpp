#include "fracdim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "fracdim/rng.hpp"

namespace fracdim {

PlanarIfs::PlanarIfs(double ratio_, double angle_, bool reflection_,
                     std::vector<std::array<double, 2>> translations_,
                     bool rotation_aperiodic_)
    : ratio(ratio_),
      angle(angle_),
      reflection(reflection_),
      translations(std::move(translations_)),
      rotation_aperiodic(rotation_aperiodic_) {
    if (!(ratio > 0 && ratio < 1))
        fail(ErrorKind::invalid_input, "planar ratio outside (0, 1)");
    if (translations.empty())
        fail(ErrorKind::invalid_input, "planar IFS needs at least one map");
}

double PlanarIfs::max_translation_norm() const {
    double m = 0;
    for (const auto& a : translations)
        m = std::max(m, std::hypot(a[0], a[1]));
    return m;
}

DiagonalAffineIfs::DiagonalAffineIfs(std::vector<double> a_,
                                     std::vector<double> b_,
                                     std::vector<double> s_,
                                     std::vector<double> t_)
    : a(std::move(a_)), b(std::move(b_)), s(std::move(s_)), t(std::move(t_)) {
    if (a.empty() || a.size() != b.size() || a.size() != s.size() ||
        a.size() != t.size())
        fail(ErrorKind::invalid_input,
             "diagonal affine IFS needs equal-length nonempty a/b/s/t");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(std::abs(a[i]) > 0 && std::abs(a[i]) < 1 && std::abs(b[i]) > 0 &&
              std::abs(b[i]) < 1))
            fail(ErrorKind::invalid_input,
                 "diagonal contraction outside (0, 1) at symbol " +
                     std::to_string(i));
}

Ifs<double> DiagonalAffineIfs::x_system() const {
    std::vector<AffineMap<double>> maps;
    for (std::size_t i = 0; i < a.size(); ++i) maps.push_back({a[i], s[i]});
    return Ifs<double>(std::move(maps));
}

Ifs<double> DiagonalAffineIfs::y_system() const {
    std::vector<AffineMap<double>> maps;
    for (std::size_t i = 0; i < b.size(); ++i) maps.push_back({b[i], t[i]});
    return Ifs<double>(std::move(maps));
}

namespace {

int draw_symbol(const std::vector<double>& weights, double u) {
    double acc = 0;
    int last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        last = static_cast<int>(i);
        if (u < acc) return last;
    }
    return last;
}

// Fills word[k] for k in [0, depth) for sample index i: Bernoulli i.i.d. or
// Markov chain draws, counters laid out as i*depth + k.
class WordSampler {
  public:
    WordSampler(const Measure<double>& mu, std::uint64_t seed,
                std::uint64_t stream)
        : rng_(seed, stream), bernoulli_(mu.is_bernoulli()) {
        if (bernoulli_) {
            weights_ = mu.bernoulli_weights();
        } else {
            pi_ = mu.marginal();
            rows_ = mu.transition_matrix();
        }
    }

    void sample(std::uint64_t index, int depth, std::vector<int>& word) const {
        std::uint64_t base = index * static_cast<std::uint64_t>(depth);
        if (bernoulli_) {
            for (int k = 0; k < depth; ++k)
                word[static_cast<std::size_t>(k)] =
                    draw_symbol(weights_, rng_.uniform(base + static_cast<std::uint64_t>(k)));
        } else {
            int state = draw_symbol(pi_, rng_.uniform(base));
            word[0] = state;
            for (int k = 1; k < depth; ++k) {
                state = draw_symbol(rows_[static_cast<std::size_t>(state)],
                                    rng_.uniform(base + static_cast<std::uint64_t>(k)));
                word[static_cast<std::size_t>(k)] = state;
            }
        }
    }

  private:
    CounterRng rng_;
    bool bernoulli_;
    std::vector<double> weights_;
    std::vector<double> pi_;
    std::vector<std::vector<double>> rows_;
};

double line_trunc_bound(const Ifs<double>& ifs, int depth) {
    double radius = attractor_bound(ifs).hi;
    return std::pow(ifs.max_abs_ratio(), depth) * 3.0 * radius;
}

void check_sampling_args(const Measure<double>& mu, const Ifs<double>& ifs,
                         int depth) {
    if (depth < 1) fail(ErrorKind::invalid_input, "depth must be >= 1");
    if (mu.alphabet_size() != ifs.alphabet_size())
        fail(ErrorKind::invalid_input, "measure/IFS alphabet mismatch");
}

struct LineFit {
    double slope = 0;
    double stderr_slope = 0;
};

LineFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    if (n > 2) {
        double rss = 0;
        double intercept = my - fit.slope * mx;
        for (std::size_t i = 0; i < n; ++i) {
            double r = y[i] - intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.stderr_slope = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

std::vector<int> checked_scales(const std::vector<int>& exponents,
                                const SampleSet& samples) {
    if (exponents.size() < 3)
        fail(ErrorKind::invalid_input, "need at least 3 scales");
    std::vector<int> sorted = exponents;
    std::sort(sorted.begin(), sorted.end());
    double finest = std::exp2(-sorted.back());
    if (finest < 4.0 * samples.trunc_bound) {
        std::string msg = "finest scale 2^-" + std::to_string(sorted.back()) +
                          " is below 4x the truncation bound " +
                          std::to_string(samples.trunc_bound);
        if (samples.max_ratio > 0 && samples.max_ratio < 1) {
            double unit =
                samples.trunc_bound / std::pow(samples.max_ratio, samples.depth);
            int required = static_cast<int>(std::ceil(
                std::log(finest / (4.0 * unit)) / std::log(samples.max_ratio)));
            msg += "; required depth >= " + std::to_string(required) +
                   " (have " + std::to_string(samples.depth) + ")";
        }
        fail(ErrorKind::guard_violation, msg);
    }
    return sorted;
}

double empirical_bin_entropy(const std::vector<std::uint64_t>& counts,
                             double total) {
    double h = 0;
    std::size_t occupied = 0;
    for (std::uint64_t c : counts) {
        if (c == 0) continue;
        ++occupied;
        double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    // Miller-Madow correction: the plug-in estimator is biased low by about
    // (occupied - 1) / (2N ln 2) bits, which otherwise drags the fitted
    // slope down at fine scales where many bins hold few samples.
    if (occupied > 0)
        h += static_cast<double>(occupied - 1) /
             (2.0 * total * std::numbers::ln2);
    return h;
}

}  // namespace

SampleSet push_samples(const Measure<double>& mu, const Ifs<double>& ifs,
                       int depth, std::uint64_t count, std::uint64_t seed,
                       std::uint64_t stream) {
    check_sampling_args(mu, ifs, depth);
    SampleSet out;
    out.depth = depth;
    out.seed = seed;
    out.trunc_bound = line_trunc_bound(ifs, depth);
    out.max_ratio = ifs.max_abs_ratio();
    out.anchor = to_double(attractor_bound(ifs).lo);
    out.xs.resize(count);

    WordSampler sampler(mu, seed, stream);
    std::vector<int> word(static_cast<std::size_t>(depth));
    for (std::uint64_t i = 0; i < count; ++i) {
        sampler.sample(i, depth, word);
        double x = 0;
        for (int k = depth - 1; k >= 0; --k) {
            const auto& g = ifs.map(word[static_cast<std::size_t>(k)]);
            x = g.ratio * x + g.offset;
        }
        out.xs[i] = x;
    }
    return out;
}

SampleSet uniform_calibration_samples(std::uint64_t count, std::uint64_t seed) {
    SampleSet out;
    out.depth = 0;
    out.seed = seed;
    out.trunc_bound = 0;
    out.max_ratio = 0;
    out.anchor = 0;
    out.xs.resize(count);
    CounterRng rng(seed, 0);
    for (std::uint64_t i = 0; i < count; ++i) out.xs[i] = rng.uniform(i);
    return out;
}

SampleSet convolution_samples(const Measure<double>& mu1,
                              const Ifs<double>& ifs1,
                              const Measure<double>& mu2,
                              const Ifs<double>& ifs2, double t, int depth,
                              std::uint64_t count, std::uint64_t seed) {
    if (t <= 0) fail(ErrorKind::invalid_input, "scale factor t must be positive");
    SampleSet first = push_samples(mu1, ifs1, depth, count, seed, 1);
    SampleSet second = push_samples(mu2, ifs2, depth, count, seed, 2);
    SampleSet out;
    out.depth = depth;
    out.seed = seed;
    out.trunc_bound = first.trunc_bound + t * second.trunc_bound;
    out.max_ratio = std::max(first.max_ratio, second.max_ratio);
    out.anchor = first.anchor + t * second.anchor;
    out.xs.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.xs[i] = first.xs[i] + t * second.xs[i];
    return out;
}

SampleSet planar_projection_samples(const Measure<double>& mu,
                                    const PlanarIfs& pifs, double z_angle,
                                    int depth, std::uint64_t count,
                                    std::uint64_t seed) {
    if (depth < 1) fail(ErrorKind::invalid_input, "depth must be >= 1");
    if (mu.alphabet_size() != pifs.alphabet_size())
        fail(ErrorKind::invalid_input, "measure/planar IFS alphabet mismatch");

    const double c = std::cos(pifs.angle), s = std::sin(pifs.angle);
    const double r = pifs.ratio;
    // rU, with U = rotation, optionally followed by a reflection in the
    // x-axis applied first: U * diag(1, -1).
    const double refl = pifs.reflection ? -1.0 : 1.0;
    const double m00 = r * c, m01 = -r * s * refl;
    const double m10 = r * s, m11 = r * c * refl;

    const double radius = pifs.max_translation_norm() / (1.0 - r);
    SampleSet out;
    out.depth = depth;
    out.seed = seed;
    out.trunc_bound = std::pow(r, depth) * radius * 2.0;
    out.max_ratio = r;
    out.anchor = -radius;  // |<z, p>| <= ||p|| <= radius
    out.xs.resize(count);

    const double zx = std::cos(z_angle), zy = std::sin(z_angle);
    WordSampler sampler(mu, seed, 0);
    std::vector<int> word(static_cast<std::size_t>(depth));
    for (std::uint64_t i = 0; i < count; ++i) {
        sampler.sample(i, depth, word);
        double x = 0, y = 0;
        for (int k = depth - 1; k >= 0; --k) {
            const auto& a =
                pifs.translations[static_cast<std::size_t>(word[static_cast<std::size_t>(k)])];
            double nx = m00 * x + m01 * y + a[0];
            double ny = m10 * x + m11 * y + a[1];
            x = nx;
            y = ny;
        }
        out.xs[i] = zx * x + zy * y;
    }
    return out;
}

SampleSet2D diagonal_affine_samples(const Measure<double>& mu,
                                    const DiagonalAffineIfs& difs, int depth,
                                    std::uint64_t count, std::uint64_t seed) {
    if (depth < 1) fail(ErrorKind::invalid_input, "depth must be >= 1");
    if (mu.alphabet_size() != difs.alphabet_size())
        fail(ErrorKind::invalid_input, "measure/diagonal IFS alphabet mismatch");
    Ifs<double> xs = difs.x_system();
    Ifs<double> ys = difs.y_system();

    SampleSet2D out;
    out.depth = depth;
    out.seed = seed;
    out.trunc_bound =
        std::max(line_trunc_bound(xs, depth), line_trunc_bound(ys, depth));
    out.max_ratio = std::max(xs.max_abs_ratio(), ys.max_abs_ratio());
    out.anchor = {to_double(attractor_bound(xs).lo),
                  to_double(attractor_bound(ys).lo)};
    out.points.resize(count);

    WordSampler sampler(mu, seed, 0);
    std::vector<int> word(static_cast<std::size_t>(depth));
    for (std::uint64_t i = 0; i < count; ++i) {
        sampler.sample(i, depth, word);
        double x = 0, y = 0;
        for (int k = depth - 1; k >= 0; --k) {
            std::size_t s_idx =
                static_cast<std::size_t>(word[static_cast<std::size_t>(k)]);
            x = difs.a[s_idx] * x + difs.s[s_idx];
            y = difs.b[s_idx] * y + difs.t[s_idx];
        }
        out.points[i] = {x, y};
    }
    return out;
}

DimensionEstimate coarse_entropy_dimension(const SampleSet& samples,
                                           const std::vector<int>& scale_exponents) {
    auto scales = checked_scales(scale_exponents, samples);
    if (samples.xs.empty()) fail(ErrorKind::invalid_input, "empty sample set");

    DimensionEstimate est;
    est.method = "coarse-entropy";
    est.coarsest_exponent = scales.front();
    est.finest_exponent = scales.back();
    est.anchor = samples.anchor;

    std::vector<double> js, hs;
    for (int j : scales) {
        double delta = std::exp2(-j);
        std::unordered_map<std::int64_t, std::uint64_t> bins;
        for (double x : samples.xs)
            ++bins[static_cast<std::int64_t>(
                std::floor((x - samples.anchor) / delta))];
        std::vector<std::uint64_t> counts;
        counts.reserve(bins.size());
        for (const auto& [k, c] : bins) {
            (void)k;
            counts.push_back(c);
        }
        double h = empirical_bin_entropy(counts,
                                         static_cast<double>(samples.xs.size()));
        est.per_scale.push_back({j, h, bins.size()});
        js.push_back(static_cast<double>(j));  // -log2(delta)
        hs.push_back(h);
    }
    LineFit fit = fit_slope(js, hs);
    est.estimate = fit.slope;
    est.standard_error = fit.stderr_slope;
    return est;
}

DimensionEstimate coarse_entropy_dimension_2d(const SampleSet2D& samples,
                                              const std::vector<int>& scale_exponents) {
    SampleSet guard_proxy;
    guard_proxy.trunc_bound = samples.trunc_bound;
    guard_proxy.max_ratio = samples.max_ratio;
    guard_proxy.depth = samples.depth;
    auto scales = checked_scales(scale_exponents, guard_proxy);
    if (samples.points.empty()) fail(ErrorKind::invalid_input, "empty sample set");

    DimensionEstimate est;
    est.method = "coarse-entropy-2d";
    est.coarsest_exponent = scales.front();
    est.finest_exponent = scales.back();
    est.anchor = samples.anchor[0];

    std::vector<double> js, hs;
    for (int j : scales) {
        double delta = std::exp2(-j);
        std::unordered_map<std::uint64_t, std::uint64_t> bins;
        for (const auto& p : samples.points) {
            auto ix = static_cast<std::int64_t>(
                std::floor((p[0] - samples.anchor[0]) / delta));
            auto iy = static_cast<std::int64_t>(
                std::floor((p[1] - samples.anchor[1]) / delta));
            std::uint64_t key = (static_cast<std::uint64_t>(ix) << 32) ^
                                static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
            ++bins[key];
        }
        std::vector<std::uint64_t> counts;
        counts.reserve(bins.size());
        for (const auto& [k, c] : bins) {
            (void)k;
            counts.push_back(c);
        }
        double h = empirical_bin_entropy(
            counts, static_cast<double>(samples.points.size()));
        est.per_scale.push_back({j, h, bins.size()});
        js.push_back(static_cast<double>(j));
        hs.push_back(h);
    }
    LineFit fit = fit_slope(js, hs);
    est.estimate = fit.slope;
    est.standard_error = fit.stderr_slope;
    return est;
}

DimensionEstimate local_dimension_stats(const SampleSet& samples,
                                        const std::vector<int>& radius_exponents) {
    auto scales = checked_scales(radius_exponents, samples);
    if (samples.xs.size() < 10'000)
        fail(ErrorKind::invalid_input,
             "local-dimension statistics need >= 10^4 samples");

    std::vector<double> sorted = samples.xs;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    const std::size_t center_count = std::min<std::size_t>(512, samples.xs.size());
    std::vector<double> slopes;
    int dropped = 0;
    std::vector<double> log_delta, log_frac;
    for (std::size_t ci = 0; ci < center_count; ++ci) {
        double x = samples.xs[ci];
        log_delta.clear();
        log_frac.clear();
        bool drop = false;
        for (int j : scales) {
            double delta = std::exp2(-j);
            auto lo = std::lower_bound(sorted.begin(), sorted.end(), x - delta);
            auto hi = std::upper_bound(sorted.begin(), sorted.end(), x + delta);
            auto count = static_cast<std::uint64_t>(hi - lo);
            if (count <= 1 && j == scales.back()) {
                drop = true;  // effectively empty ball at the finest radius
                break;
            }
            log_delta.push_back(-static_cast<double>(j));
            log_frac.push_back(std::log2(static_cast<double>(count) / n));
        }
        if (drop) {
            ++dropped;
            continue;
        }
        slopes.push_back(fit_slope(log_delta, log_frac).slope);
    }
    if (slopes.empty())
        fail(ErrorKind::invalid_input, "all local-dimension centers dropped");

    std::sort(slopes.begin(), slopes.end());
    auto quantile = [&](double p) {
        double idx = p * static_cast<double>(slopes.size() - 1);
        auto i0 = static_cast<std::size_t>(idx);
        std::size_t i1 = std::min(i0 + 1, slopes.size() - 1);
        double w = idx - static_cast<double>(i0);
        return slopes[i0] * (1 - w) + slopes[i1] * w;
    };

    DimensionEstimate est;
    est.method = "local-dimension";
    est.coarsest_exponent = scales.front();
    est.finest_exponent = scales.back();
    est.anchor = samples.anchor;
    est.estimate = quantile(0.5);
    est.iqr = quantile(0.75) - quantile(0.25);
    est.dropped_centers = dropped;
    // Normal-approximation standard error of a sample median.
    est.standard_error = 1.2533 * (est.iqr / 1.349) /
                         std::sqrt(static_cast<double>(slopes.size()));
    for (int j : scales) est.per_scale.push_back({j, 0.0, 0});
    return est;
}

DimensionEstimate correlation_dimension(const SampleSet& samples,
                                        const std::vector<int>& radius_exponents) {
    auto scales = checked_scales(radius_exponents, samples);
    if (samples.xs.size() < 2)
        fail(ErrorKind::invalid_input, "need at least two samples");

    std::vector<double> sorted = samples.xs;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double total_pairs =
        0.5 * static_cast<double>(n) * static_cast<double>(n - 1);

    DimensionEstimate est;
    est.method = "correlation";
    est.coarsest_exponent = scales.front();
    est.finest_exponent = scales.back();
    est.anchor = samples.anchor;

    std::vector<double> log_delta, log_frac;
    for (int j : scales) {
        double delta = std::exp2(-j);
        // Pairs (i, k), i < k, with sorted[k] - sorted[i] <= delta.
        std::uint64_t pairs = 0;
        std::size_t lo = 0;
        for (std::size_t k = 0; k < n; ++k) {
            while (sorted[k] - sorted[lo] > delta) ++lo;
            pairs += static_cast<std::uint64_t>(k - lo);
        }
        est.per_scale.push_back(
            {j, pairs > 0 ? std::log2(static_cast<double>(pairs) / total_pairs) : 0.0,
             pairs});
        if (pairs == 0)
            fail(ErrorKind::diagnostic,
                 "no sample pairs within radius 2^-" + std::to_string(j));
        log_delta.push_back(-static_cast<double>(j));
        log_frac.push_back(std::log2(static_cast<double>(pairs) / total_pairs));
    }
    LineFit fit = fit_slope(log_delta, log_frac);
    est.estimate = fit.slope;
    est.standard_error = fit.stderr_slope;
    return est;
}

}  // namespace fracdim
