#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fclt/functionals.hpp"
#include "fclt/paths.hpp"
#include "fclt/stable.hpp"

namespace fclt {

// One tested marginal: the simulated statistic at time t against the
// claimed limit law, and against the campaign's deliberately wrong law.
struct MarginalResult {
    double t = 1.0;
    StableParams null_law;
    StableParams control_law;
    double statistic = 0.0;
    double p_value = 1.0;
    double control_statistic = 0.0;
};

// Outcome of a campaign. passed is statistic <= threshold AND the control
// was rejected: a campaign that cannot reject a wrong null certifies nothing.
struct VerificationReport {
    std::string test_name;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t reps = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    double control_statistic = 0.0;
    bool control_rejected = false;
    bool passed = false;
    std::vector<MarginalResult> marginals;
    // artifact file names, relative to the output directory
    std::vector<std::string> artifacts;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json details = nlohmann::json::object();

    nlohmann::json to_json() const;
    static VerificationReport from_json(const nlohmann::json& j);
};

// Raw replicate values, one column per tested time; written as "rep,t,value".
struct RawSamples {
    std::string file;
    std::vector<double> times;
    std::vector<std::vector<double>> values;
};

struct CampaignResult {
    VerificationReport report;
    std::vector<RawSamples> raw;
};

// Writes <test_name>.json and every RawSamples file into out_dir.
void write_campaign(const CampaignResult& result, const std::filesystem::path& out_dir);

// Law used as the deliberately wrong null: the law of f' L(t) with reflected
// skewness, i.e. the limit with the Gamma(alpha + 1)^(1/alpha) factor dropped.
// At alpha = 2 this is N(0, f'^2 t), half the correct variance.
StableParams control_law(double alpha, double beta, double t, double f_prime);

struct SamplerConfig {
    StableParams params = StableParams::standard(2.0, 0.0);
    std::size_t n = 1000000;
    double t_max = 5.0;
    double t_step = 0.1;
    std::uint64_t seed = 0;
    double threshold = 5e-3;
    unsigned threads = 0;
};

struct RemarkConfig {
    double alpha = 2.0;
    double beta = 0.0;
    std::size_t reps = 5000;
    std::size_t grid = 4096;
    std::optional<double> eps;  // defaults to one grid cell
    double t = 1.0;
    std::uint64_t seed = 0;
    double threshold = 0.04;
    unsigned threads = 0;
};

enum class SourceKind { Iid, MovingAverage };

struct FcltConfig {
    explicit FcltConfig(FunctionalConfig f) : functional(std::move(f)) {}

    FunctionalConfig functional;
    std::vector<double> times{0.25, 0.5, 0.75, 1.0};
    std::size_t reps = 5000;
    std::uint64_t seed = 0;
    double threshold = 0.04;
    SourceKind source = SourceKind::Iid;
    unsigned threads = 0;
};

struct LemmaConfig {
    explicit LemmaConfig(DoaSpec s) : spec(std::move(s)) {}

    DoaSpec spec;
    std::vector<std::size_t> ns{100, 1000, 10000};
    std::size_t reps = 2000;
    std::uint64_t seed = 0;
    double band_factor = 2.0;
    double trend_tolerance = 0.1;
    unsigned threads = 0;
};

struct ProductConfig {
    explicit ProductConfig(DoaSpec s) : spec(std::move(s)) {}

    DoaSpec spec;
    std::size_t n = 10000;
    std::size_t reps = 5000;
    std::uint64_t seed = 0;
    std::optional<double> threshold;  // 0.04 at alpha = 2, 0.07 below
    ExponentConvention convention = ExponentConvention::MuOverNorming;
    std::optional<double> gamma;
    unsigned threads = 0;
};

// sup over t in [-t_max, t_max] of |empirical - analytic char. fn.|.
CampaignResult verify_sampler(const SamplerConfig& config);

// Riemann integrals of simulated Levy paths vs direct draws of the limit
// law, two-sample KS.
CampaignResult verify_remark(const RemarkConfig& config);

// Per-time one-sample KS of the functional statistic against the limit law.
CampaignResult verify_fclt(const FcltConfig& config);

// Boundedness of (sum_{k<=n} E|S_k - k mu| / k) / a_n across ns.
CampaignResult verify_lemma(const LemmaConfig& config);

// One-sample KS of the log product statistic against the limit law.
CampaignResult verify_product(const ProductConfig& config);

}  // namespace fclt
