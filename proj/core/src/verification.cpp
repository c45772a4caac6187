#include "fclt/verification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>

#include "fclt/format.hpp"
#include "fclt/norming.hpp"
#include "fclt/parallel.hpp"
#include "fclt/rng.hpp"
#include "fclt/serialize.hpp"
#include "fclt/stats.hpp"

namespace fclt {
namespace {

// Sub-stream tags; each campaign derives its independent seeds from these.
constexpr std::uint64_t kTagReplicates = 1;
constexpr std::uint64_t kTagNullDraws = 2;
constexpr std::uint64_t kTagControlDraws = 3;

constexpr std::size_t kSamplerBlock = 1 << 16;

nlohmann::json marginal_to_json(const MarginalResult& m)
{
    return {{"t", m.t},
            {"null_law", to_json(m.null_law)},
            {"control_law", to_json(m.control_law)},
            {"statistic", m.statistic},
            {"p_value", m.p_value},
            {"control_statistic", m.control_statistic}};
}

MarginalResult marginal_from_json(const nlohmann::json& j)
{
    MarginalResult m;
    m.t = j.at("t").get<double>();
    m.null_law = stable_params_from_json(j.at("null_law"));
    m.control_law = stable_params_from_json(j.at("control_law"));
    m.statistic = j.at("statistic").get<double>();
    m.p_value = j.at("p_value").get<double>();
    m.control_statistic = j.at("control_statistic").get<double>();
    return m;
}

// One-sample KS of each column against the null and control laws.
std::vector<MarginalResult> test_marginals(const std::vector<double>& times,
                                           const std::vector<std::vector<double>>& values,
                                           double alpha, double beta, double f_prime)
{
    std::vector<MarginalResult> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        MarginalResult m;
        m.t = times[i];
        m.null_law = limit_law(alpha, beta, times[i], f_prime);
        m.control_law = control_law(alpha, beta, times[i], f_prime);
        const auto fit = ks_one_sample(values[i], [&](double x) { return cdf(m.null_law, x); });
        const auto wrong =
            ks_one_sample(values[i], [&](double x) { return cdf(m.control_law, x); });
        m.statistic = fit.statistic;
        m.p_value = fit.p_value;
        m.control_statistic = wrong.statistic;
        out.push_back(m);
    }
    return out;
}

void summarize_marginals(VerificationReport& report)
{
    report.statistic = 0.0;
    report.control_statistic = 0.0;
    for (const auto& m : report.marginals) {
        report.statistic = std::max(report.statistic, m.statistic);
        report.control_statistic = std::max(report.control_statistic, m.control_statistic);
    }
    report.control_rejected = report.control_statistic > report.threshold;
    report.passed = report.statistic <= report.threshold && report.control_rejected;
}

std::unique_ptr<SequenceSource> make_source(SourceKind kind, const DoaSpec& spec)
{
    if (kind == SourceKind::MovingAverage) {
        return std::make_unique<MovingAverageSource>(spec);
    }
    return std::make_unique<IidSource>(spec);
}

std::string source_name(SourceKind kind)
{
    return kind == SourceKind::MovingAverage ? "moving-average" : "iid";
}

}  // namespace

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json marginals_json = nlohmann::json::array();
    for (const auto& m : marginals) {
        marginals_json.push_back(marginal_to_json(m));
    }
    return {{"test_name", test_name},
            {"seed", seed},
            {"n", n},
            {"reps", reps},
            {"statistic", statistic},
            {"threshold", threshold},
            {"direction", "statistic <= threshold"},
            {"control_statistic", control_statistic},
            {"control_rejected", control_rejected},
            {"passed", passed},
            {"marginals", marginals_json},
            {"artifacts", artifacts},
            {"config", config},
            {"details", details}};
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j)
{
    VerificationReport r;
    r.test_name = j.at("test_name").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<std::size_t>();
    r.reps = j.at("reps").get<std::size_t>();
    r.statistic = j.at("statistic").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.control_statistic = j.at("control_statistic").get<double>();
    r.control_rejected = j.at("control_rejected").get<bool>();
    r.passed = j.at("passed").get<bool>();
    for (const auto& m : j.at("marginals")) {
        r.marginals.push_back(marginal_from_json(m));
    }
    r.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    r.config = j.value("config", nlohmann::json::object());
    r.details = j.value("details", nlohmann::json::object());
    return r;
}

void write_campaign(const CampaignResult& result, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    for (const auto& raw : result.raw) {
        std::ofstream os(out_dir / raw.file, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot write " + (out_dir / raw.file).string());
        }
        os << "rep,t,value\n";
        for (std::size_t i = 0; i < raw.times.size(); ++i) {
            const std::string t = format_double(raw.times[i]);
            for (std::size_t r = 0; r < raw.values[i].size(); ++r) {
                os << r << ',' << t << ',' << format_double(raw.values[i][r]) << '\n';
            }
        }
    }
    const auto report_path = out_dir / (result.report.test_name + ".json");
    std::ofstream os(report_path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + report_path.string());
    }
    os << result.report.to_json().dump(2) << '\n';
}

StableParams control_law(double alpha, double beta, double t, double f_prime)
{
    if (f_prime == 0.0 || !std::isfinite(f_prime)) {
        throw std::invalid_argument("control_law: f' must be nonzero");
    }
    StableParams out{alpha, f_prime < 0.0 ? beta : -beta,
                     std::pow(std::abs(f_prime), alpha) * t, 0.0};
    out.validate();
    return out;
}

CampaignResult verify_sampler(const SamplerConfig& config)
{
    config.params.validate();
    if (config.n == 0 || !(config.t_step > 0.0) || !(config.t_max >= 0.0)) {
        throw std::invalid_argument("verify_sampler: need n >= 1, t_step > 0, t_max >= 0");
    }
    const std::size_t blocks = (config.n + kSamplerBlock - 1) / kSamplerBlock;
    std::vector<double> draws(config.n);
    parallel_for(blocks, config.threads, [&](std::size_t b) {
        Philox4x32 rng(derive_seed(config.seed, kTagReplicates), b);
        const std::size_t end = std::min(config.n, (b + 1) * kSamplerBlock);
        for (std::size_t i = b * kSamplerBlock; i < end; ++i) {
            draws[i] = draw(config.params, rng);
        }
    });

    const auto steps = static_cast<std::size_t>(std::llround(config.t_max / config.t_step));
    const std::size_t points = 2 * steps + 1;
    StableParams wrong = config.params;
    wrong.dispersion *= 2.0;
    std::vector<double> diff(points);
    std::vector<double> wrong_diff(points);
    std::vector<ComplexValue> ecf(points);
    parallel_for(points, config.threads, [&](std::size_t i) {
        const double t =
            (static_cast<double>(i) - static_cast<double>(steps)) * config.t_step;
        ecf[i] = empirical_char_fn(draws, t);
        diff[i] = std::abs(ecf[i] - char_fn(config.params, t));
        wrong_diff[i] = std::abs(ecf[i] - char_fn(wrong, t));
    });

    CampaignResult result;
    auto& report = result.report;
    report.test_name = "verify-sampler";
    report.seed = config.seed;
    report.n = config.n;
    report.reps = 1;
    report.threshold = config.threshold;
    report.statistic = *std::max_element(diff.begin(), diff.end());
    report.control_statistic = *std::max_element(wrong_diff.begin(), wrong_diff.end());
    report.control_rejected = report.control_statistic > report.threshold;
    report.passed = report.statistic <= report.threshold && report.control_rejected;
    report.config = {{"params", to_json(config.params)},
                     {"n", config.n},
                     {"t_max", config.t_max},
                     {"t_step", config.t_step},
                     {"seed", config.seed},
                     {"threshold", config.threshold}};
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t i = 0; i < points; ++i) {
        const double t =
            (static_cast<double>(i) - static_cast<double>(steps)) * config.t_step;
        table.push_back({{"t", t},
                         {"ecf_re", ecf[i].real()},
                         {"ecf_im", ecf[i].imag()},
                         {"abs_error", diff[i]}});
    }
    report.details = {{"control", "dispersion doubled"},
                      {"control_law", to_json(wrong)},
                      {"char_fn_table", table}};
    return result;
}

CampaignResult verify_remark(const RemarkConfig& config)
{
    if (!(config.alpha > 1.0 && config.alpha <= 2.0)) {
        throw std::invalid_argument("verify_remark: alpha must lie in (1, 2]");
    }
    if (config.reps == 0 || config.grid < 2) {
        throw std::invalid_argument("verify_remark: need reps >= 1 and grid >= 2");
    }
    const double eps = config.eps.value_or(1.0 / static_cast<double>(config.grid));
    if (!(eps > 0.0 && 2.0 * eps < config.t)) {
        throw std::invalid_argument("verify_remark: eps must lie in (0, t / 2)");
    }
    const StableParams null_law = limit_law(config.alpha, config.beta, config.t, 1.0);
    const StableParams wrong_law = control_law(config.alpha, config.beta, config.t, 1.0);

    std::vector<double> integrals(config.reps);
    std::vector<double> coarse(config.reps);
    parallel_for(config.reps, config.threads, [&](std::size_t r) {
        Philox4x32 rng(derive_seed(config.seed, kTagReplicates), r);
        const SamplePath path = simulate_levy_path(config.alpha, config.beta, rng, config.grid);
        integrals[r] = integral_riemann(path, config.t, eps);
        coarse[r] = integral_riemann(path, config.t, 2.0 * eps);
    });
    Philox4x32 null_rng(derive_seed(config.seed, kTagNullDraws), 0);
    Philox4x32 control_rng(derive_seed(config.seed, kTagControlDraws), 0);
    const auto direct = sample(null_law, null_rng, config.reps);
    const auto wrong = sample(wrong_law, control_rng, config.reps);

    const auto fit = ks_two_sample(integrals, direct);
    const auto misfit = ks_two_sample(integrals, wrong);

    double mean_abs = 0.0;
    double mean_abs_coarse = 0.0;
    for (std::size_t r = 0; r < config.reps; ++r) {
        mean_abs += std::abs(integrals[r]);
        mean_abs_coarse += std::abs(coarse[r]);
    }
    mean_abs /= static_cast<double>(config.reps);
    mean_abs_coarse /= static_cast<double>(config.reps);

    CampaignResult result;
    auto& report = result.report;
    report.test_name = "verify-remark";
    report.seed = config.seed;
    report.n = config.grid;
    report.reps = config.reps;
    report.threshold = config.threshold;
    report.marginals.push_back(MarginalResult{config.t, null_law, wrong_law, fit.statistic,
                                              fit.p_value, misfit.statistic});
    summarize_marginals(report);
    report.config = {{"alpha", config.alpha},     {"beta", config.beta},
                     {"reps", config.reps},       {"grid", config.grid},
                     {"eps", eps},                {"t", config.t},
                     {"seed", config.seed},       {"threshold", config.threshold}};
    report.details = {
        {"comparison", "two-sample KS against direct draws"},
        {"truncation",
         {{"eps", eps},
          {"mean_abs_integral", mean_abs},
          {"mean_abs_integral_2eps", mean_abs_coarse},
          {"relative_change", std::abs(mean_abs_coarse - mean_abs) / mean_abs}}}};
    RawSamples raw{"verify-remark_samples.csv", {config.t}, {std::move(integrals)}};
    report.artifacts.push_back(raw.file);
    result.raw.push_back(std::move(raw));
    return result;
}

CampaignResult verify_fclt(const FcltConfig& config)
{
    config.functional.validate();
    if (config.reps == 0 || config.times.empty()) {
        throw std::invalid_argument("verify_fclt: need reps >= 1 and at least one time");
    }
    for (double t : config.times) {
        if (!(t > 0.0 && t <= 1.0)) {
            throw std::invalid_argument("verify_fclt: times must lie in (0, 1]");
        }
    }
    const auto& fc = config.functional;
    const auto source = make_source(config.source, fc.spec);
    const double mu = source->mu();
    const double a_n = source->norming(fc.n);

    std::vector<std::vector<double>> values(config.times.size(),
                                            std::vector<double>(config.reps));
    parallel_for(config.reps, config.threads, [&](std::size_t r) {
        Philox4x32 rng(derive_seed(config.seed, kTagReplicates), r);
        const auto sums = source->partial_sums(rng, fc.n);
        const SamplePath path = functional_statistic_from_sums(sums, fc.fn, mu, a_n, fc.grid);
        for (std::size_t i = 0; i < config.times.size(); ++i) {
            values[i][r] = path(config.times[i]);
        }
    });

    CampaignResult result;
    auto& report = result.report;
    report.test_name = "verify-fclt";
    report.seed = config.seed;
    report.n = fc.n;
    report.reps = config.reps;
    report.threshold = config.threshold;
    report.marginals = test_marginals(config.times, values, source->alpha(), source->beta(),
                                      fc.fn.f_prime_at_mu);
    summarize_marginals(report);
    report.config = {{"distribution", to_json(fc.spec)},
                     {"function", fc.fn.name},
                     {"n", fc.n},
                     {"grid", fc.grid},
                     {"times", config.times},
                     {"reps", config.reps},
                     {"seed", config.seed},
                     {"threshold", config.threshold},
                     {"source", source_name(config.source)}};
    report.details = {{"a_n", a_n}, {"mu", mu}, {"f_prime_at_mu", fc.fn.f_prime_at_mu}};
    RawSamples raw{"verify-fclt_samples.csv", config.times, std::move(values)};
    report.artifacts.push_back(raw.file);
    result.raw.push_back(std::move(raw));
    return result;
}

CampaignResult verify_lemma(const LemmaConfig& config)
{
    if (config.ns.size() < 2 || config.reps == 0) {
        throw std::invalid_argument("verify_lemma: need at least two checkpoints and reps >= 1");
    }
    const NormingSeq norm = NormingSeq::for_spec(config.spec);
    const auto ratios = deviation_sum_ratios(config.spec, config.ns, norm, config.reps,
                                             derive_seed(config.seed, kTagReplicates),
                                             config.threads);

    // Band factor max(r_n / r_top, r_top / r_n); growth r_top / r_prev.
    auto band_and_growth = [&](const std::vector<double>& r) {
        const double top = r.back();
        double band = 1.0;
        for (double v : r) {
            if (top == 0.0 && v == 0.0) {
                continue;
            }
            if (top == 0.0 || v == 0.0) {
                band = std::numeric_limits<double>::infinity();
                continue;
            }
            band = std::max({band, v / top, top / v});
        }
        const double prev = r[r.size() - 2];
        const double growth = (prev == 0.0) ? (top == 0.0 ? 1.0 : std::numeric_limits<double>::infinity())
                                            : top / prev;
        return std::pair{band, growth};
    };

    std::vector<double> means;
    std::vector<double> control_means;
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t i = 0; i < config.ns.size(); ++i) {
        const double n = static_cast<double>(config.ns[i]);
        const double wrong_scale = std::pow(n, 0.25);
        means.push_back(ratios[i].mean);
        control_means.push_back(ratios[i].mean * wrong_scale);
        table.push_back({{"n", config.ns[i]},
                         {"a_n", norm.a(config.ns[i])},
                         {"ratio", ratios[i].mean},
                         {"std_error", ratios[i].std_error},
                         {"ci_low", ratios[i].lower()},
                         {"ci_high", ratios[i].upper()},
                         {"control_ratio", ratios[i].mean * wrong_scale}});
    }
    const auto [band, growth] = band_and_growth(means);
    const auto [control_band, control_growth] = band_and_growth(control_means);
    const bool trend_ok = growth <= 1.0 + config.trend_tolerance;
    const bool control_trend_ok = control_growth <= 1.0 + config.trend_tolerance;

    CampaignResult result;
    auto& report = result.report;
    report.test_name = "verify-lemma";
    report.seed = config.seed;
    report.n = config.ns.back();
    report.reps = config.reps;
    report.threshold = config.band_factor;
    report.statistic = band;
    report.control_statistic = control_band;
    report.control_rejected = control_band > config.band_factor || !control_trend_ok;
    report.passed = band <= config.band_factor && trend_ok && report.control_rejected;
    nlohmann::json ns_json = config.ns;
    report.config = {{"distribution", to_json(config.spec)},
                     {"ns", ns_json},
                     {"reps", config.reps},
                     {"seed", config.seed},
                     {"band_factor", config.band_factor},
                     {"trend_tolerance", config.trend_tolerance}};
    report.details = {{"ratios", table},
                      {"growth_top_decade", growth},
                      {"trend_ok", trend_ok},
                      {"control", "norming a_n / n^(1/4)"},
                      {"control_growth", control_growth}};
    return result;
}

CampaignResult verify_product(const ProductConfig& config)
{
    const DoaSpec& spec = config.spec;
    if (!spec.positivity()) {
        throw std::invalid_argument(
            "verify_product: the distribution must be positive (" + spec.name() + " is not)");
    }
    if (config.n == 0 || config.reps == 0) {
        throw std::invalid_argument("verify_product: need n >= 1 and reps >= 1");
    }
    const double alpha = spec.known_alpha();
    const double beta = alpha < 2.0 ? 1.0 : 0.0;
    const double mu = spec.known_mu();
    const double a_n = norming_sequence(spec, config.n).a_n;
    const double root_n = std::sqrt(static_cast<double>(config.n));
    double exponent = mu / a_n;
    if (config.convention == ExponentConvention::GammaOverRootN) {
        if (alpha != 2.0) {
            throw std::invalid_argument(
                "verify_product: gamma / sqrt(n) applies to finite-variance inputs only");
        }
        const double gamma = config.gamma.value_or(mu / (a_n / root_n));
        exponent = gamma / root_n;
    }
    const double threshold = config.threshold.value_or(alpha == 2.0 ? 0.04 : 0.07);

    std::vector<std::vector<double>> values(1, std::vector<double>(config.reps));
    parallel_for(config.reps, config.threads, [&](std::size_t r) {
        Philox4x32 rng(derive_seed(config.seed, kTagReplicates), r);
        const auto x = sample_doa(spec, rng, config.n);
        values[0][r] = log_product_statistic(x, mu, exponent);
    });

    CampaignResult result;
    auto& report = result.report;
    report.test_name = "verify-product";
    report.seed = config.seed;
    report.n = config.n;
    report.reps = config.reps;
    report.threshold = threshold;
    report.marginals = test_marginals({1.0}, values, alpha, beta, 1.0);
    summarize_marginals(report);
    report.config = {{"distribution", to_json(spec)},
                     {"n", config.n},
                     {"reps", config.reps},
                     {"seed", config.seed},
                     {"threshold", threshold},
                     {"convention", config.convention == ExponentConvention::GammaOverRootN
                                        ? "gamma/sqrt(n)"
                                        : "mu/a_n"}};
    report.details = {{"exponent", exponent}, {"a_n", a_n}, {"mu", mu},
                      {"comparison", "one-sample KS of log product statistic"}};
    RawSamples raw{"verify-product_samples.csv", {1.0}, std::move(values)};
    report.artifacts.push_back(raw.file);
    result.raw.push_back(std::move(raw));
    return result;
}

}  // namespace fclt
