#include "fclt/cli/campaign.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fclt/format.hpp"
#include "fclt/functionals.hpp"
#include "fclt/norming.hpp"
#include "fclt/paths.hpp"
#include "fclt/rng.hpp"
#include "fclt/serialize.hpp"

namespace fclt::cli {
namespace {

constexpr std::uint64_t kTagLevy = 1;
constexpr std::uint64_t kTagSequence = 2;

bool is_sample_artifact(const std::string& name)
{
    const std::string suffix = "_samples.csv";
    return name.size() > suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return os;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    auto os = open_out(path);
    os << j.dump(2) << '\n';
}

void write_path(const std::filesystem::path& path, const SamplePath& p)
{
    auto os = open_out(path);
    p.write_csv(os);
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw std::runtime_error("malformed number '" + s + "' in samples file");
    }
    return v;
}

// "rep,t,value" rows grouped by the t column's text.
std::map<std::string, std::vector<double>> read_samples(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::invalid_argument("emit_plotdata: missing artifact " + path.string());
    }
    std::map<std::string, std::vector<double>> out;
    std::string line;
    std::getline(is, line);
    if (line != "rep,t,value") {
        throw std::runtime_error("emit_plotdata: unexpected header in " + path.string());
    }
    while (std::getline(is, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("emit_plotdata: malformed row in " + path.string());
        }
        out[line.substr(c1 + 1, c2 - c1 - 1)].push_back(parse_double(line.substr(c2 + 1)));
    }
    return out;
}

nlohmann::json manifest(const CampaignConfig& config, const std::vector<std::string>& artifacts,
                        nlohmann::json details)
{
    return {{"test_name", config.campaign},
            {"seed", config.seed()},
            {"artifacts", artifacts},
            {"config", {{"cli", config.to_json()}}},
            {"details", std::move(details)}};
}

RunOutcome run_sample(const CampaignConfig& c)
{
    const StableParams params = c.stable();
    Philox4x32 rng(c.seed(), 0);
    const auto draws = sample(params, rng, c.count("n"));
    std::filesystem::create_directories(c.out_dir);

    RunOutcome out;
    const auto csv = c.out_dir / "samples.csv";
    {
        auto os = open_out(csv);
        os << "index,value\n";
        for (std::size_t i = 0; i < draws.size(); ++i) {
            os << i << ',' << format_double(draws[i]) << '\n';
        }
    }
    auto sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    const nlohmann::json details{{"params", to_json(params)},
                                 {"min", sorted.front()},
                                 {"median", sorted[sorted.size() / 2]},
                                 {"max", sorted.back()}};
    const auto json_path = c.out_dir / "sample.json";
    write_json(json_path, manifest(c, {"samples.csv"}, details));
    out.files = {csv, json_path};
    out.summary = "sample: wrote " + std::to_string(draws.size()) + " draws";
    return out;
}

RunOutcome run_paths(const CampaignConfig& c)
{
    const StableParams params = c.stable();
    const DoaSpec spec = c.distribution();
    const std::size_t n = c.count("n");
    const std::size_t grid = c.count("grid");

    Philox4x32 levy_rng(derive_seed(c.seed(), kTagLevy), 0);
    const SamplePath levy = simulate_levy_path(params.alpha, params.beta, levy_rng, grid);
    Philox4x32 seq_rng(derive_seed(c.seed(), kTagSequence), 0);
    const auto x = sample_doa(spec, seq_rng, n);
    const NormingValues norm = norming_sequence(spec, n);
    const SamplePath partial = partial_sum_process(x, spec.known_mu(), norm.a_n, grid);

    std::filesystem::create_directories(c.out_dir);
    RunOutcome out;
    std::vector<std::string> artifacts{"levy_path.csv", "partial_sum_path.csv"};
    write_path(c.out_dir / artifacts[0], levy);
    write_path(c.out_dir / artifacts[1], partial);
    if (spec.positivity()) {
        const SamplePath stat = functional_statistic(x, FunctionSpec::qi_log(spec.known_mu()),
                                                     spec.known_mu(), norm.a_n, grid);
        artifacts.push_back("statistic_path.csv");
        write_path(c.out_dir / artifacts.back(), stat);
    }
    const nlohmann::json details{{"distribution", to_json(spec)},
                                 {"a_n", norm.a_n},
                                 {"b_n", norm.b_n}};
    const auto json_path = c.out_dir / "paths.json";
    write_json(json_path, manifest(c, artifacts, details));
    for (const auto& a : artifacts) {
        out.files.push_back(c.out_dir / a);
    }
    out.files.push_back(json_path);
    out.summary = "paths: wrote " + std::to_string(artifacts.size()) + " paths";
    return out;
}

CampaignResult run_verification(const CampaignConfig& c)
{
    const std::string& name = c.campaign;
    if (name == "verify-sampler") {
        SamplerConfig s;
        s.params = c.stable();
        s.n = c.count("n");
        s.t_max = c.real("t-max");
        s.t_step = c.real("t-step");
        s.seed = c.seed();
        s.threshold = c.real("threshold");
        s.threads = c.threads;
        return verify_sampler(s);
    }
    if (name == "verify-remark") {
        RemarkConfig r;
        r.alpha = c.real("alpha");
        r.beta = c.real("beta");
        r.reps = c.count("reps");
        r.grid = c.count("grid");
        r.eps = c.real("eps");
        r.t = c.real("t");
        r.seed = c.seed();
        r.threshold = c.real("threshold");
        r.threads = c.threads;
        return verify_remark(r);
    }
    if (name == "verify-fclt") {
        const DoaSpec spec = c.distribution();
        const FunctionSpec fn = c.text("function") == "identity"
                                    ? FunctionSpec::identity()
                                    : FunctionSpec::qi_log(spec.known_mu());
        FcltConfig f{FunctionalConfig{spec, fn, c.count("n"), c.count("grid"), std::nullopt,
                                      ExponentConvention::MuOverNorming}};
        f.times = c.reals("times");
        f.reps = c.count("reps");
        f.seed = c.seed();
        f.threshold = c.real("threshold");
        f.source = c.text("source") == "moving-average" ? SourceKind::MovingAverage
                                                        : SourceKind::Iid;
        f.threads = c.threads;
        return verify_fclt(f);
    }
    if (name == "verify-lemma") {
        LemmaConfig l{c.distribution()};
        l.ns = c.counts("ns");
        l.reps = c.count("reps");
        l.seed = c.seed();
        l.band_factor = c.real("band-factor");
        l.trend_tolerance = c.real("trend-tolerance");
        l.threads = c.threads;
        return verify_lemma(l);
    }
    ProductConfig p{c.distribution()};
    p.n = c.count("n");
    p.reps = c.count("reps");
    p.seed = c.seed();
    p.threshold = c.real("threshold");
    if (c.text("convention") == "gamma/sqrt(n)") {
        p.convention = ExponentConvention::GammaOverRootN;
        if (c.has("gamma")) {
            p.gamma = c.real("gamma");
        }
    }
    p.threads = c.threads;
    return verify_product(p);
}

}  // namespace

std::vector<std::string> plotdata_files(const VerificationReport& report)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < report.marginals.size(); ++i) {
        out.push_back(report.test_name + "_overlay_" + std::to_string(i) + ".csv");
    }
    return out;
}

std::vector<std::filesystem::path> emit_plotdata(const VerificationReport& report,
                                                 const std::filesystem::path& out_dir)
{
    std::map<std::string, std::vector<double>> columns;
    bool any = false;
    for (const auto& a : report.artifacts) {
        if (!is_sample_artifact(a)) {
            continue;
        }
        any = true;
        for (auto& [t, v] : read_samples(out_dir / a)) {
            auto& dst = columns[t];
            dst.insert(dst.end(), v.begin(), v.end());
        }
    }
    if (!any) {
        throw std::invalid_argument("emit_plotdata: report '" + report.test_name +
                                    "' has no sample artifacts");
    }
    const auto names = plotdata_files(report);
    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < report.marginals.size(); ++i) {
        const auto& m = report.marginals[i];
        auto it = columns.find(format_double(m.t));
        if (it == columns.end()) {
            throw std::invalid_argument("emit_plotdata: no samples for t = " +
                                        format_double(m.t));
        }
        auto xs = it->second;
        std::sort(xs.begin(), xs.end());
        const auto path = out_dir / names[i];
        auto os = open_out(path);
        os << "x,empirical,theoretical\n";
        const double size = static_cast<double>(xs.size());
        for (std::size_t k = 0; k < xs.size(); ++k) {
            os << format_double(xs[k]) << ',' << format_double(static_cast<double>(k + 1) / size)
               << ',' << format_double(cdf(m.null_law, xs[k])) << '\n';
        }
        written.push_back(path);
    }
    return written;
}

RunOutcome run(const CampaignConfig& config)
{
    const CampaignConfig c = config.resolved();
    if (c.campaign == "sample") {
        return run_sample(c);
    }
    if (c.campaign == "paths") {
        return run_paths(c);
    }

    CampaignResult result = run_verification(c);
    auto& report = result.report;
    report.config["cli"] = c.to_json();

    std::vector<std::string> extra;
    if (c.campaign == "verify-lemma") {
        extra.push_back("norming.csv");
    }
    const bool has_samples =
        std::any_of(report.artifacts.begin(), report.artifacts.end(), is_sample_artifact);
    const auto overlays = has_samples ? plotdata_files(report) : std::vector<std::string>{};
    report.artifacts.insert(report.artifacts.end(), extra.begin(), extra.end());
    report.artifacts.insert(report.artifacts.end(), overlays.begin(), overlays.end());

    write_campaign(result, c.out_dir);
    RunOutcome out;
    for (const auto& raw : result.raw) {
        out.files.push_back(c.out_dir / raw.file);
    }
    out.files.push_back(c.out_dir / (report.test_name + ".json"));
    if (c.campaign == "verify-lemma") {
        auto os = open_out(c.out_dir / "norming.csv");
        write_norming_csv(os, c.distribution(), c.counts("ns"));
        out.files.push_back(c.out_dir / "norming.csv");
    }
    if (has_samples) {
        for (auto& p : emit_plotdata(report, c.out_dir)) {
            out.files.push_back(std::move(p));
        }
    }

    std::ostringstream summary;
    summary << report.test_name << ": statistic " << format_double(report.statistic)
            << " (threshold " << format_double(report.threshold) << "), control statistic "
            << format_double(report.control_statistic)
            << (report.control_rejected ? " rejected" : " NOT rejected") << " -> "
            << (report.passed ? "PASS" : "FAIL");
    out.summary = summary.str();
    out.status = report.passed ? 0 : 1;
    return out;
}

}  // namespace fclt::cli
