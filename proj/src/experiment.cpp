#include "fracdim/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "fracdim/coarse_grain.hpp"
#include "fracdim/dimension_formulas.hpp"
#include "fracdim/estimators.hpp"
#include "fracdim/lq_spectrum.hpp"
#include "fracdim/measures.hpp"
#include "fracdim/separation.hpp"

namespace fracdim {

using nlohmann::json;

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string rat_str(const Rational& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

// Tracks which keys of a JSON object were consumed and rejects leftovers.
class Reader {
  public:
    Reader(const json& obj, std::string path)
        : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object())
            fail(ErrorKind::invalid_input, path_ + " must be a JSON object");
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* v = find(key);
        if (!v)
            fail(ErrorKind::invalid_input,
                 "missing required key '" + key + "' in " + path_);
        return *v;
    }

    template <class T>
    T get(const std::string& key, T fallback) {
        const json* v = find(key);
        if (!v) return fallback;
        try {
            return v->get<T>();
        } catch (const json::exception& e) {
            fail(ErrorKind::invalid_input,
                 "bad value for '" + key + "' in " + path_ + ": " + e.what());
        }
    }

    template <class T>
    T require_as(const std::string& key) {
        const json& v = require(key);
        try {
            return v.get<T>();
        } catch (const json::exception& e) {
            fail(ErrorKind::invalid_input,
                 "bad value for '" + key + "' in " + path_ + ": " + e.what());
        }
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                fail(ErrorKind::invalid_input,
                     "unknown key '" + it.key() + "' in " + path_);
    }

  private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

struct NumberToken {
    bool rational_form = false;
    Rational rational;
    Real real = 0;
};

NumberToken parse_number_token(const json& v, const std::string& where) {
    NumberToken t;
    if (v.is_number()) {
        t.real = static_cast<Real>(v.get<double>());
        return t;
    }
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (is_rational_literal(s)) {
            t.rational_form = true;
            t.rational = parse_rational(s);
        } else {
            t.real = parse_real(s);
        }
        return t;
    }
    fail(ErrorKind::invalid_input,
         where + " must be a number, decimal string, or 'p/q' string");
}

std::vector<NumberToken> parse_number_array(const json& v,
                                            const std::string& where) {
    if (!v.is_array() || v.empty())
        fail(ErrorKind::invalid_input, where + " must be a nonempty array");
    std::vector<NumberToken> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_number_token(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

double token_to_double(const NumberToken& t) {
    return t.rational_form ? to_double(t.rational) : to_double(t.real);
}

ParsedIfs parse_ifs(const json& j, const std::string& path) {
    Reader reader(j, path);
    auto ratios = parse_number_array(reader.require("ratios"), path + ".ratios");
    auto offsets = parse_number_array(reader.require("offsets"), path + ".offsets");
    reader.finish();
    if (ratios.size() != offsets.size())
        fail(ErrorKind::invalid_input,
             path + ": ratios and offsets differ in length");

    std::size_t rational_count = 0;
    for (const auto& t : ratios) rational_count += t.rational_form;
    for (const auto& t : offsets) rational_count += t.rational_form;

    ParsedIfs parsed;
    if (rational_count == 2 * ratios.size()) {
        parsed.mode = NumberMode::rational;
        std::vector<AffineMap<Rational>> maps;
        for (std::size_t i = 0; i < ratios.size(); ++i)
            maps.push_back({ratios[i].rational, offsets[i].rational});
        parsed.ifs = Ifs<Rational>(std::move(maps));
    } else if (rational_count == 0) {
        parsed.mode = NumberMode::real;
        std::vector<AffineMap<Real>> maps;
        for (std::size_t i = 0; i < ratios.size(); ++i)
            maps.push_back({ratios[i].real, offsets[i].real});
        parsed.ifs = Ifs<Real>(std::move(maps));
    } else {
        fail(ErrorKind::invalid_input,
             path + ": mixed number modes; use all 'p/q' rationals or all "
                    "decimals within one IFS");
    }
    return parsed;
}

Measure<double> parse_measure(const json& j, const std::string& path) {
    Reader reader(j, path);
    const json* bernoulli = reader.find("bernoulli");
    const json* markov = reader.find("markov");
    reader.finish();
    if ((bernoulli != nullptr) == (markov != nullptr))
        fail(ErrorKind::invalid_input,
             path + " needs exactly one of 'bernoulli' or 'markov'");
    if (bernoulli) {
        auto tokens = parse_number_array(*bernoulli, path + ".bernoulli");
        std::vector<double> p;
        for (const auto& t : tokens) p.push_back(token_to_double(t));
        return Measure<double>::bernoulli(std::move(p));
    }
    if (!markov->is_array() || markov->empty())
        fail(ErrorKind::invalid_input, path + ".markov must be a nonempty array");
    std::vector<std::vector<double>> P;
    for (std::size_t i = 0; i < markov->size(); ++i) {
        auto row = parse_number_array((*markov)[i],
                                      path + ".markov[" + std::to_string(i) + "]");
        std::vector<double> r;
        for (const auto& t : row) r.push_back(token_to_double(t));
        P.push_back(std::move(r));
    }
    return Measure<double>::markov(std::move(P));
}

std::vector<int> require_scales(Reader& params) {
    auto scales = params.require_as<std::vector<int>>("scales");
    if (scales.size() < 3)
        fail(ErrorKind::invalid_input, "params.scales needs at least 3 entries");
    return scales;
}

std::uint64_t require_seed(Reader& top) {
    const json& v = top.require("seed");
    if (!v.is_number_integer())
        fail(ErrorKind::invalid_input, "seed must be an explicit integer");
    return v.get<std::uint64_t>();
}

std::string flag_line(const std::string& name, FlagState state) {
    return "flag " + name + " = " + flag_name(state) + "\n";
}

void append_estimate(std::ostringstream& report, std::ostringstream& csv,
                     const std::string& label, const DimensionEstimate& est) {
    report << label << " (" << est.method << "): " << fmt(est.estimate)
           << " +/- " << fmt(est.standard_error);
    if (est.method == "local-dimension")
        report << "  iqr=" << fmt(est.iqr)
               << " dropped_centers=" << est.dropped_centers;
    report << "\n";
    for (const auto& s : est.per_scale)
        csv << label << "," << est.method << "," << s.exponent << ","
            << fmt(s.value) << "," << s.count << "\n";
}

std::string samples_csv(const SampleSet& samples, const std::string& params) {
    std::ostringstream out;
    out << "# " << params << " seed=" << samples.seed
        << " depth=" << samples.depth << " count=" << samples.xs.size()
        << " anchor=" << fmt(samples.anchor)
        << " trunc_bound=" << fmt(samples.trunc_bound) << "\n";
    out << "value\n";
    for (double x : samples.xs) out << fmt(x) << "\n";
    return out.str();
}

template <class T>
void append_separation(std::ostringstream& report, std::ostringstream& csv,
                       const SeparationReport<T>& sep) {
    csv << "level,min_gap,witness1,witness2\n";
    for (const auto& level : sep.per_level) {
        report << "level " << level.level << ": min_gap = ";
        std::string gap = "inf";
        if (level.min_gap) {
            gap = fmt(to_double(*level.min_gap));
            if constexpr (std::is_same_v<T, Rational>)
                gap = rat_str(*level.min_gap) + " (" + gap + ")";
        }
        report << gap;
        std::string w1, w2;
        if (level.witness) {
            w1 = word_to_string(level.witness->first);
            w2 = word_to_string(level.witness->second);
            report << "  witness " << w1 << " " << w2;
        }
        report << "\n";
        csv << level.level << ","
            << (level.min_gap ? fmt(to_double(*level.min_gap)) : "inf") << ","
            << w1 << "," << w2 << "\n";
    }
    if (sep.c_estimate)
        report << "c_estimate = " << fmt(*sep.c_estimate)
               << " (evidence over finitely many levels, not proof)\n";
    if (sep.exact_overlap)
        report << "exact overlap at level " << sep.exact_overlap->first
               << ": words " << word_to_string(sep.exact_overlap->second.first)
               << " and " << word_to_string(sep.exact_overlap->second.second)
               << "\n";
    if (sep.float_mode_warning)
        report << "warning: float mode compares ratios bit-exactly and can "
                  "misclassify near-equal ratios\n";
}

struct Context {
    std::ostringstream report;
    ExperimentOutcome outcome;

    void finish(const std::string& config_text) {
        report << "\n## resolved config\n" << config_text << "\n";
        outcome.report = report.str();
    }
};

}  // namespace

Ifs<double> ParsedIfs::as_double() const {
    if (mode == NumberMode::rational) return to_double_ifs(rational());
    return to_double_ifs(real());
}

int ParsedIfs::alphabet_size() const {
    if (mode == NumberMode::rational) return rational().alphabet_size();
    return real().alphabet_size();
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return 2;
        case ErrorKind::resource_budget: return 3;
        case ErrorKind::guard_violation: return 4;
        case ErrorKind::diagnostic: return 5;
    }
    return 1;
}

ExperimentOutcome run_experiment_kind(const std::string& expected_kind,
                                      const std::string& config_text) {
    json config;
    try {
        config = json::parse(config_text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::invalid_input, std::string("config parse error: ") + e.what());
    }

    Reader top(config, "config");
    std::string kind = top.require_as<std::string>("experiment");
    if (!expected_kind.empty() && kind != expected_kind)
        fail(ErrorKind::invalid_input,
             "config declares experiment '" + kind + "' but subcommand is '" +
                 expected_kind + "'");

    Context ctx;
    ctx.report << "fracdim experiment: " << kind << "\n\n";

    auto read_params = [&](const char* key) -> json {
        const json* p = top.find(key);
        return p ? *p : json::object();
    };

    if (kind == "separation") {
        ParsedIfs parsed = parse_ifs(top.require("ifs"), "config.ifs");
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        int max_level = params.require_as<int>("max_level");
        auto budget = params.get<std::uint64_t>("pair_budget", kDefaultPairBudget);
        params.finish();
        top.finish();

        std::ostringstream csv;
        if (parsed.mode == NumberMode::rational)
            append_separation(ctx.report, csv,
                              separation_report(parsed.rational(), max_level, budget));
        else
            append_separation(ctx.report, csv,
                              separation_report(parsed.real(), max_level, budget));
        ctx.outcome.csv_files["separation.csv"] = csv.str();
    } else if (kind == "dims") {
        ParsedIfs parsed = parse_ifs(top.require("ifs"), "config.ifs");
        Measure<double> mu = parse_measure(top.require("measure"), "config.measure");
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        int evidence_levels = params.get<int>("max_level", 4);
        bool lq_bound = params.get<bool>("lq_bound", false);
        params.finish();
        top.finish();

        Ifs<double> ifs = parsed.as_double();
        double h = entropy(mu);
        double chi = lyapunov(mu, ifs);
        double s = similarity_dimension(ifs);
        double predicted = projection_dimension(h, chi);
        ctx.report << "entropy_bits h = " << fmt(h) << "\n"
                   << "lyapunov_bits chi = " << fmt(chi) << "\n"
                   << "similarity_dimension s = " << fmt(s) << "\n"
                   << "predicted dim = min{1, h/-chi} = " << fmt(predicted) << "\n";

        FlagState separation_flag = FlagState::unknown;
        if (evidence_levels > 0) {
            std::ostringstream csv;
            if (parsed.mode == NumberMode::rational) {
                auto sep = separation_report(parsed.rational(), evidence_levels);
                separation_flag = sep.exact_overlap ? FlagState::no : FlagState::yes;
                append_separation(ctx.report, csv, sep);
            } else {
                auto sep = separation_report(parsed.real(), evidence_levels);
                separation_flag = sep.exact_overlap ? FlagState::no : FlagState::yes;
                append_separation(ctx.report, csv, sep);
            }
            ctx.outcome.csv_files["separation.csv"] = csv.str();
        }
        ctx.report << flag_line("exponential_separation_evidence", separation_flag);

        if (lq_bound) {
            std::vector<double> weights, ratios;
            for (const auto& g : ifs.maps()) {
                double r = std::abs(g.ratio);
                ratios.push_back(r);
                weights.push_back(std::pow(r, s));
            }
            AlphaMin am = alpha_min(weights, ratios);
            LqLowerBound bound = lq_lower_bound(h, chi, s, am.value);
            ctx.report << "alpha_min = " << fmt(am.value) << "\n"
                       << "dim lower bound h/-chi - (s - alpha_min) = "
                       << fmt(bound.lower) << "\n"
                       << "dim upper bound min{1, h/-chi} = " << fmt(bound.upper)
                       << "\n";
        }
    } else if (kind == "tau") {
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        auto q_list = params.require_as<std::vector<double>>("q");

        std::vector<double> p, ratios;
        const json* p_json = params.find("p");
        const json* r_json = params.find("ratios");
        if (p_json || r_json) {
            if (!p_json || !r_json)
                fail(ErrorKind::invalid_input,
                     "params.p and params.ratios must be given together");
            for (const auto& t : parse_number_array(*p_json, "params.p"))
                p.push_back(token_to_double(t));
            for (const auto& t : parse_number_array(*r_json, "params.ratios"))
                ratios.push_back(token_to_double(t));
            top.find("ifs");
            top.find("measure");
        } else {
            ParsedIfs parsed = parse_ifs(top.require("ifs"), "config.ifs");
            Measure<double> mu =
                parse_measure(top.require("measure"), "config.measure");
            Ifs<double> ifs = parsed.as_double();
            if (mu.alphabet_size() != ifs.alphabet_size())
                fail(ErrorKind::invalid_input, "measure/IFS alphabet mismatch");
            p = mu.marginal();
            for (const auto& g : ifs.maps()) ratios.push_back(std::abs(g.ratio));
        }
        params.finish();
        top.finish();

        std::ostringstream csv;
        csv << "q,tau,lq_dim,residual,dropped_zeros\n";
        for (double q : q_list) {
            LqPoint point = solve_tau(p, ratios, q);
            ctx.report << "q = " << fmt(q) << ": tau = " << fmt(point.tau)
                       << ", lq_dim = " << fmt(point.lq_dim) << "\n";
            csv << fmt(q) << "," << fmt(point.tau) << "," << fmt(point.lq_dim)
                << "," << fmt(point.residual) << "," << point.dropped_zeros
                << "\n";
        }
        AlphaMin am = alpha_min(p, ratios);
        ctx.report << "alpha_min = " << fmt(am.value) << " (extrapolated "
                   << fmt(am.extrapolated) << ", candidate " << fmt(am.candidate)
                   << ")\n";
        ctx.outcome.csv_files["lq.csv"] = csv.str();
    } else if (kind == "coarse") {
        ParsedIfs parsed = parse_ifs(top.require("ifs"), "config.ifs");
        Measure<double> mu = parse_measure(top.require("measure"), "config.measure");
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        int m = params.require_as<int>("m");
        double delta = params.require_as<double>("delta");
        double epsilon = params.require_as<double>("epsilon");
        std::string variant_name = params.get<std::string>("variant", "full");
        params.finish();
        top.finish();

        CoarseVariant variant;
        if (variant_name == "full")
            variant = CoarseVariant::full;
        else if (variant_name == "homogeneous")
            variant = CoarseVariant::homogeneous;
        else
            fail(ErrorKind::invalid_input,
                 "params.variant must be 'full' or 'homogeneous'");

        Ifs<double> ifs = parsed.as_double();
        CoarseGraining cg = coarse_bernoulli(mu, ifs, m, delta, epsilon, variant);
        ctx.report << "block length m = " << m << ", delta = " << fmt(delta)
                   << ", epsilon = " << fmt(epsilon) << ", variant = "
                   << variant_name << "\n"
                   << "good words: " << cg.good_count() << " of "
                   << cg.weights.size() << "\n"
                   << "good_mass = " << fmt(cg.good_mass) << "\n"
                   << "normalizer c = " << fmt(cg.normalizer) << "\n"
                   << flag_line("good_mass_gt_1_minus_delta",
                                cg.good_mass_hypothesis ? FlagState::yes
                                                        : FlagState::no)
                   << flag_line("inv_epsilon_gt_log2_alphabet",
                                cg.epsilon_hypothesis ? FlagState::yes
                                                      : FlagState::no);
        double blocked_h = entropy(blocked_measure(cg));
        ctx.report << "blocked entropy / m = " << fmt(blocked_h / m) << "\n";
        if (variant == CoarseVariant::full) {
            TauLowerBoundCheck check = tau_lower_bound_check(cg, ifs);
            ctx.report << "tau/(q-1) = " << fmt(check.lhs)
                       << " vs (h-delta)/(delta-chi) - delta = " << fmt(check.rhs)
                       << " => " << (check.holds ? "holds" : "fails") << "\n"
                       << flag_line("tau_bound_side_conditions",
                                    check.side_conditions_hold ? FlagState::yes
                                                               : FlagState::no);
        }
        std::ostringstream csv;
        csv << "index,good,weight\n";
        for (std::size_t i = 0; i < cg.weights.size(); ++i)
            csv << i << "," << int(cg.good[i]) << "," << fmt(cg.weights[i]) << "\n";
        ctx.outcome.csv_files["coarse.csv"] = csv.str();
    } else if (kind == "sample") {
        ParsedIfs parsed = parse_ifs(top.require("ifs"), "config.ifs");
        Measure<double> mu = parse_measure(top.require("measure"), "config.measure");
        std::uint64_t seed = require_seed(top);
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        int depth = params.require_as<int>("depth");
        auto count = params.require_as<std::uint64_t>("count");
        params.finish();
        top.finish();

        SampleSet samples = push_samples(mu, parsed.as_double(), depth, count, seed);
        ctx.report << "samples = " << samples.xs.size()
                   << ", truncation bound = " << fmt(samples.trunc_bound) << "\n";
        ctx.outcome.csv_files["samples.csv"] = samples_csv(samples, "experiment=sample");
    } else if (kind == "estimate") {
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        bool calibration = params.get<bool>("calibration", false);
        auto count = params.require_as<std::uint64_t>("count");
        auto scales = require_scales(params);
        std::uint64_t seed = require_seed(top);

        SampleSet samples;
        if (calibration) {
            params.find("depth");
            top.find("ifs");
            top.find("measure");
            samples = uniform_calibration_samples(count, seed);
            ctx.report << "Lebesgue calibration run (raw uniforms)\n";
        } else {
            int depth = params.require_as<int>("depth");
            ParsedIfs parsed = parse_ifs(top.require("ifs"), "config.ifs");
            Measure<double> mu =
                parse_measure(top.require("measure"), "config.measure");
            samples = push_samples(mu, parsed.as_double(), depth, count, seed);
        }
        params.finish();
        top.finish();

        std::ostringstream csv;
        csv << "label,method,scale_exponent,value,count\n";
        append_estimate(ctx.report, csv, "estimate",
                        coarse_entropy_dimension(samples, scales));
        append_estimate(ctx.report, csv, "estimate",
                        local_dimension_stats(samples, scales));
        append_estimate(ctx.report, csv, "estimate",
                        correlation_dimension(samples, scales));
        ctx.outcome.csv_files["estimates.csv"] = csv.str();
    } else if (kind == "convolve") {
        ParsedIfs parsed1 = parse_ifs(top.require("ifs"), "config.ifs");
        ParsedIfs parsed2 = parse_ifs(top.require("ifs2"), "config.ifs2");
        Measure<double> mu1 = parse_measure(top.require("measure"), "config.measure");
        Measure<double> mu2 = parse_measure(top.require("measure2"), "config.measure2");
        std::uint64_t seed = require_seed(top);
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        double t = params.get<double>("t", 1.0);
        int depth = params.require_as<int>("depth");
        auto count = params.require_as<std::uint64_t>("count");
        auto scales = require_scales(params);
        params.finish();
        top.finish();

        Ifs<double> ifs1 = parsed1.as_double();
        Ifs<double> ifs2 = parsed2.as_double();
        auto homogeneous_ratio = [](const Ifs<double>& ifs) {
            double r = std::abs(ifs.map(0).ratio);
            for (const auto& g : ifs.maps())
                if (std::abs(g.ratio) != r)
                    fail(ErrorKind::invalid_input,
                         "convolution prediction needs homogeneous systems");
            return r;
        };
        double r1 = homogeneous_ratio(ifs1);
        double r2 = homogeneous_ratio(ifs2);
        double h1 = entropy(mu1), h2 = entropy(mu2);

        std::optional<std::pair<Rational, Rational>> exact;
        if (parsed1.mode == NumberMode::rational &&
            parsed2.mode == NumberMode::rational)
            exact = {{scalar_abs(parsed1.rational().map(0).ratio),
                      scalar_abs(parsed2.rational().map(0).ratio)}};
        ConvolutionPrediction prediction =
            convolution_dimension(h1, r1, h2, r2, exact);
        ctx.report << "predicted dim = " << fmt(prediction.report.predicted) << "\n";
        for (const auto& [name, state] : prediction.report.hypothesis_flags)
            ctx.report << flag_line(name, state);
        if (prediction.dependence.independent == FlagState::no)
            ctx.report << "multiplicative dependence: r1^"
                       << prediction.dependence.a << " = r2^"
                       << prediction.dependence.b << "\n";

        SampleSet samples =
            convolution_samples(mu1, ifs1, mu2, ifs2, t, depth, count, seed);
        std::ostringstream csv;
        csv << "label,method,scale_exponent,value,count\n";
        append_estimate(ctx.report, csv, "convolution",
                        coarse_entropy_dimension(samples, scales));
        ctx.outcome.csv_files["estimates.csv"] = csv.str();
    } else if (kind == "project") {
        const json& pj = top.require("planar_ifs");
        Reader preader(pj, "config.planar_ifs");
        double r = token_to_double(
            parse_number_token(preader.require("ratio"), "planar_ifs.ratio"));
        double angle = token_to_double(
            parse_number_token(preader.require("angle"), "planar_ifs.angle"));
        bool reflection = preader.get<bool>("reflection", false);
        bool aperiodic = preader.require_as<bool>("rotation_aperiodic");
        auto tr_json = preader.require("translations");
        preader.finish();
        if (!tr_json.is_array() || tr_json.empty())
            fail(ErrorKind::invalid_input,
                 "planar_ifs.translations must be a nonempty array of pairs");
        std::vector<std::array<double, 2>> translations;
        for (const auto& pair : tr_json) {
            auto tokens = parse_number_array(pair, "planar_ifs.translations[]");
            if (tokens.size() != 2)
                fail(ErrorKind::invalid_input,
                     "each planar translation needs exactly 2 coordinates");
            translations.push_back(
                {token_to_double(tokens[0]), token_to_double(tokens[1])});
        }
        PlanarIfs pifs(r, angle, reflection, std::move(translations), aperiodic);

        Measure<double> mu = parse_measure(top.require("measure"), "config.measure");
        std::uint64_t seed = require_seed(top);
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        auto z_angles = params.require_as<std::vector<double>>("z_angles");
        int depth = params.require_as<int>("depth");
        auto count = params.require_as<std::uint64_t>("count");
        auto scales = require_scales(params);
        params.finish();
        top.finish();

        double h = entropy(mu);
        double predicted = orthogonal_projection_dimension(h, pifs.ratio);
        ctx.report << "entropy_bits h = " << fmt(h) << "\n"
                   << "predicted dim = min{1, h/-log2 r} = " << fmt(predicted)
                   << "\n"
                   << flag_line("rotation_aperiodic_assertion",
                                pifs.rotation_aperiodic ? FlagState::yes
                                                        : FlagState::unknown)
                   << flag_line("open_set_condition_claim", FlagState::unknown);

        std::ostringstream csv;
        csv << "z_angle,estimate,standard_error\n";
        double min_est = 0, max_est = 0;
        bool first = true;
        for (double z : z_angles) {
            SampleSet samples =
                planar_projection_samples(mu, pifs, z, depth, count, seed);
            DimensionEstimate est = coarse_entropy_dimension(samples, scales);
            ctx.report << "z_angle " << fmt(z) << ": estimate = "
                       << fmt(est.estimate) << " +/- " << fmt(est.standard_error)
                       << "\n";
            csv << fmt(z) << "," << fmt(est.estimate) << ","
                << fmt(est.standard_error) << "\n";
            min_est = first ? est.estimate : std::min(min_est, est.estimate);
            max_est = first ? est.estimate : std::max(max_est, est.estimate);
            first = false;
        }
        if (!first)
            ctx.report << "spread across z = " << fmt(max_est - min_est) << "\n";
        ctx.outcome.csv_files["projection.csv"] = csv.str();
    } else if (kind == "affine") {
        const json& dj = top.require("diagonal_ifs");
        Reader dreader(dj, "config.diagonal_ifs");
        auto vec = [&](const char* key) {
            std::vector<double> out;
            for (const auto& t : parse_number_array(dreader.require(key),
                                                    std::string("diagonal_ifs.") + key))
                out.push_back(token_to_double(t));
            return out;
        };
        auto a = vec("a");
        auto b = vec("b");
        auto s = vec("s");
        auto t = vec("t");
        bool finite_to_one = dreader.get<bool>("finite_to_one", false);
        dreader.finish();
        DiagonalAffineIfs difs(a, b, s, t);

        Measure<double> mu = parse_measure(top.require("measure"), "config.measure");
        std::uint64_t seed = require_seed(top);
        json params_json = read_params("params");
        Reader params(params_json, "config.params");
        int depth = params.require_as<int>("depth");
        auto count = params.require_as<std::uint64_t>("count");
        auto scales = require_scales(params);
        params.finish();
        top.finish();

        double h = entropy(mu);
        double chi_x = -lyapunov(mu, difs.x_system());
        double chi_y = -lyapunov(mu, difs.y_system());
        double chi1 = std::min(chi_x, chi_y);
        double chi2 = std::max(chi_x, chi_y);
        LyapunovDimension pred = lyapunov_dimension_diagonal(h, chi1, chi2);
        ctx.report << "entropy_bits h = " << fmt(h) << "\n"
                   << "chi_x = " << fmt(chi_x) << ", chi_y = " << fmt(chi_y)
                   << "\n"
                   << "predicted Lyapunov dimension = " << fmt(pred.value) << "\n"
                   << flag_line("coding_map_finite_to_one_assertion",
                                finite_to_one ? FlagState::yes
                                              : FlagState::unknown);

        SampleSet2D samples = diagonal_affine_samples(mu, difs, depth, count, seed);
        std::ostringstream csv;
        csv << "label,method,scale_exponent,value,count\n";
        append_estimate(ctx.report, csv, "affine",
                        coarse_entropy_dimension_2d(samples, scales));
        ctx.outcome.csv_files["estimates.csv"] = csv.str();
    } else {
        fail(ErrorKind::invalid_input, "unknown experiment kind '" + kind + "'");
    }

    ctx.finish(config.dump(2));
    return ctx.outcome;
}

ExperimentOutcome run_experiment(const std::string& config_text) {
    return run_experiment_kind(std::string(), config_text);
}

}  // namespace fracdim
