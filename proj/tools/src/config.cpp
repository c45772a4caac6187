#include "fclt/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "fclt/norming.hpp"

namespace fclt::cli {
namespace {

const std::vector<FieldInfo>& all_fields()
{
    static const std::vector<FieldInfo> fields{
        {"seed", FieldKind::Seed, "64-bit seed (required for verify-*)"},
        {"alpha", FieldKind::Real, "stability index"},
        {"beta", FieldKind::Real, "skewness in [-1, 1]"},
        {"dispersion", FieldKind::Real, "dispersion sigma^alpha (variance at alpha = 2)"},
        {"location", FieldKind::Real, "location"},
        {"family", FieldKind::Text,
         "exponential | pareto | exact-stable | two-sided-pareto | constant"},
        {"rate", FieldKind::Real, "exponential rate"},
        {"tail-index", FieldKind::Real, "Pareto tail index"},
        {"scale", FieldKind::Real, "Pareto scale x_m"},
        {"shift", FieldKind::Real, "Pareto shift (>= 0)"},
        {"asymmetry", FieldKind::Real, "two-sided Pareto P(X > 0)"},
        {"value", FieldKind::Real, "constant family value"},
        {"n", FieldKind::Count, "sample size / sequence length"},
        {"reps", FieldKind::Count, "replicates"},
        {"grid", FieldKind::Count, "grid cells on [0, 1]"},
        {"eps", FieldKind::Real, "Riemann truncation (default one grid cell)"},
        {"t", FieldKind::Real, "time of the tested marginal"},
        {"times", FieldKind::RealList, "tested times in (0, 1], comma separated"},
        {"ns", FieldKind::CountList, "checkpoints, comma separated"},
        {"t-max", FieldKind::Real, "char. fn. grid half-width"},
        {"t-step", FieldKind::Real, "char. fn. grid step"},
        {"threshold", FieldKind::Real, "pass threshold on the statistic"},
        {"band-factor", FieldKind::Real, "allowed ratio band"},
        {"trend-tolerance", FieldKind::Real, "allowed growth over the top decade"},
        {"function", FieldKind::Text, "qi-log | identity"},
        {"source", FieldKind::Text, "iid | moving-average"},
        {"convention", FieldKind::Text, "mu/a_n | gamma/sqrt(n)"},
        {"gamma", FieldKind::Real, "gamma for the gamma/sqrt(n) exponent"},
    };
    return fields;
}

const std::vector<std::string> kStable{"alpha", "beta", "dispersion", "location"};
const std::vector<std::string> kFamily{"family", "rate",  "tail-index", "scale",
                                       "shift",  "asymmetry", "value"};

std::vector<std::string> field_names(const std::string& campaign)
{
    std::vector<std::string> names{"seed"};
    auto add = [&](const std::vector<std::string>& more) {
        names.insert(names.end(), more.begin(), more.end());
    };
    if (campaign == "sample") {
        add(kStable);
        add({"n"});
    } else if (campaign == "paths") {
        add(kStable);
        add(kFamily);
        add({"n", "grid"});
    } else if (campaign == "verify-sampler") {
        add(kStable);
        add({"n", "t-max", "t-step", "threshold"});
    } else if (campaign == "verify-remark") {
        add({"alpha", "beta", "reps", "grid", "eps", "t", "threshold"});
    } else if (campaign == "verify-fclt") {
        add(kStable);
        add(kFamily);
        add({"function", "source", "n", "grid", "times", "reps", "threshold"});
    } else if (campaign == "verify-lemma") {
        add(kStable);
        add(kFamily);
        add({"ns", "reps", "band-factor", "trend-tolerance"});
    } else if (campaign == "verify-product") {
        add(kStable);
        add(kFamily);
        add({"n", "reps", "threshold", "convention", "gamma"});
    } else {
        throw ConfigError("campaign: unknown campaign '" + campaign + "'");
    }
    return names;
}

const FieldInfo& field_info(const std::string& name)
{
    for (const auto& f : all_fields()) {
        if (f.name == name) {
            return f;
        }
    }
    throw ConfigError(name + ": unknown key");
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text)
{
    const std::string s = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a finite number, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text)
{
    const std::string s = trim(text);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (!s.empty() && ec == std::errc{} && end == s.data() + s.size()) {
        return v;
    }
    // 1e6 style counts
    double d = 0.0;
    const auto [dend, dec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (!s.empty() && dec == std::errc{} && dend == s.data() + s.size() && d >= 0.0 &&
        d == std::floor(d) && d < 9007199254740992.0) {
        return static_cast<std::uint64_t>(d);
    }
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

nlohmann::json parse_text(const FieldInfo& f, const std::string& text)
{
    switch (f.kind) {
    case FieldKind::Real:
        return parse_real(f.name, text);
    case FieldKind::Count:
    case FieldKind::Seed:
        return parse_unsigned(f.name, text);
    case FieldKind::Text:
        return trim(text);
    case FieldKind::RealList: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& item : split_list(text)) {
            arr.push_back(parse_real(f.name, item));
        }
        return arr;
    }
    case FieldKind::CountList: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& item : split_list(text)) {
            arr.push_back(parse_unsigned(f.name, item));
        }
        return arr;
    }
    }
    return nullptr;
}

std::string scalar_text(const std::string& key, const nlohmann::json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number()) {
        return v.dump();
    }
    throw ConfigError(key + ": expected a scalar value, got " + v.dump());
}

std::string normalize_key(std::string key)
{
    key = trim(key);
    if (key.rfind("--", 0) == 0) {
        key = key.substr(2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw ConfigError(message);
    }
}

}  // namespace

const std::vector<std::string>& campaign_names()
{
    static const std::vector<std::string> names{"sample",        "paths",         "verify-sampler",
                                                "verify-remark", "verify-fclt",   "verify-lemma",
                                                "verify-product"};
    return names;
}

std::vector<FieldInfo> campaign_fields(const std::string& campaign)
{
    std::vector<FieldInfo> out;
    for (const auto& name : field_names(campaign)) {
        out.push_back(field_info(name));
    }
    return out;
}

CampaignConfig CampaignConfig::defaults(const std::string& campaign)
{
    CampaignConfig c;
    c.campaign = campaign;
    const auto names = field_names(campaign);
    const std::map<std::string, nlohmann::json> base{
        {"alpha", 2.0},       {"beta", 0.0},      {"dispersion", 1.0},
        {"location", 0.0},    {"family", "exponential"},
        {"rate", 1.0},        {"tail-index", 1.5}, {"scale", 1.0},
        {"shift", 0.0},       {"asymmetry", 0.5}, {"value", 1.0},
        {"grid", 4096},       {"t", 1.0},         {"t-max", 5.0},
        {"t-step", 0.1},      {"times", {0.25, 0.5, 0.75, 1.0}},
        {"ns", {100, 1000, 10000}},
        {"band-factor", 2.0}, {"trend-tolerance", 0.1},
        {"function", "qi-log"}, {"source", "iid"}, {"convention", "mu/a_n"},
    };
    for (const auto& name : names) {
        if (auto it = base.find(name); it != base.end()) {
            c.values[name] = it->second;
        }
    }
    if (campaign == "sample" || campaign == "paths") {
        c.values["seed"] = 0;
    }
    const std::map<std::string, std::size_t> n_default{{"sample", 1000},
                                                       {"paths", 10000},
                                                       {"verify-sampler", 1000000},
                                                       {"verify-fclt", 10000},
                                                       {"verify-product", 10000}};
    if (auto it = n_default.find(campaign); it != n_default.end()) {
        c.values["n"] = it->second;
    }
    if (campaign == "verify-lemma") {
        c.values["reps"] = 2000;
    } else if (campaign.rfind("verify-", 0) == 0 && campaign != "verify-sampler") {
        c.values["reps"] = 5000;
    }
    if (campaign == "verify-sampler") {
        c.values["threshold"] = 5e-3;
    } else if (campaign == "verify-remark" || campaign == "verify-fclt") {
        c.values["threshold"] = 0.04;
    }
    return c;
}

void CampaignConfig::set(const std::string& key, const std::string& text)
{
    const std::string name = normalize_key(key);
    const auto names = field_names(campaign);
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError(name + ": not a setting of " + campaign);
    }
    values[name] = parse_text(field_info(name), text);
}

void CampaignConfig::set(const std::string& key, const nlohmann::json& value)
{
    const std::string name = normalize_key(key);
    if (value.is_null()) {
        throw ConfigError(name + ": null is not a value");
    }
    if (value.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < value.size(); ++i) {
            joined += (i ? "," : "") + scalar_text(name, value[i]);
        }
        set(name, joined);
        return;
    }
    set(name, scalar_text(name, value));
}

double CampaignConfig::real(const std::string& key) const
{
    require(has(key), key + ": missing");
    return values.at(key).get<double>();
}

std::size_t CampaignConfig::count(const std::string& key) const
{
    require(has(key), key + ": missing");
    return values.at(key).get<std::size_t>();
}

std::uint64_t CampaignConfig::seed() const
{
    require(has("seed"), "seed: required for " + campaign + " (pass --seed)");
    return values.at("seed").get<std::uint64_t>();
}

std::string CampaignConfig::text(const std::string& key) const
{
    require(has(key), key + ": missing");
    return values.at(key).get<std::string>();
}

std::vector<double> CampaignConfig::reals(const std::string& key) const
{
    require(has(key), key + ": missing");
    return values.at(key).get<std::vector<double>>();
}

std::vector<std::size_t> CampaignConfig::counts(const std::string& key) const
{
    require(has(key), key + ": missing");
    return values.at(key).get<std::vector<std::size_t>>();
}

StableParams CampaignConfig::stable() const
{
    StableParams p{real("alpha"), has("beta") ? real("beta") : 0.0,
                   has("dispersion") ? real("dispersion") : 1.0,
                   has("location") ? real("location") : 0.0};
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("alpha/beta/dispersion/location: ") + e.what());
    }
    return p;
}

DoaSpec CampaignConfig::distribution() const
{
    const std::string name = text("family");
    try {
        if (name == "exponential") {
            return DoaSpec(family::Exponential{real("rate")});
        }
        if (name == "pareto") {
            return DoaSpec(family::Pareto{real("tail-index"), real("scale"), real("shift")});
        }
        if (name == "exact-stable") {
            return DoaSpec(family::ExactStable{stable()});
        }
        if (name == "two-sided-pareto") {
            return DoaSpec(family::TwoSidedPareto{real("tail-index"), real("asymmetry")});
        }
        if (name == "constant") {
            return DoaSpec(family::Constant{real("value")});
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("family " + name + ": " + e.what());
    }
    throw ConfigError("family: unknown family '" + name + "'");
}

CampaignConfig CampaignConfig::resolved() const
{
    CampaignConfig c = *this;
    field_names(campaign);
    const bool verify = campaign.rfind("verify-", 0) == 0;
    if (verify) {
        c.seed();
    }
    auto positive_count = [&](const std::string& key) {
        require(c.count(key) >= 1, key + ": must be at least 1");
    };

    if (campaign == "sample" || campaign == "verify-sampler") {
        c.stable();
        positive_count("n");
    }
    if (campaign == "paths") {
        const auto p = c.stable();
        require(p.alpha > 1.0, "alpha: the Levy path needs alpha in (1, 2]");
        positive_count("n");
        try {
            norming_sequence(c.distribution(), c.count("n"));
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("family: ") + e.what());
        }
        positive_count("grid");
    }
    if (campaign == "verify-sampler") {
        require(c.real("t-step") > 0.0, "t-step: must be positive");
        require(c.real("t-max") >= 0.0, "t-max: must be non-negative");
        require(c.real("threshold") > 0.0, "threshold: must be positive");
    }
    if (campaign == "verify-remark") {
        const double alpha = c.real("alpha");
        require(alpha > 1.0 && alpha <= 2.0, "alpha: must lie in (1, 2]");
        const double beta = c.real("beta");
        require(beta >= -1.0 && beta <= 1.0, "beta: must lie in [-1, 1]");
        positive_count("reps");
        require(c.count("grid") >= 2, "grid: must be at least 2");
        const double t = c.real("t");
        require(t > 0.0 && t <= 1.0, "t: must lie in (0, 1]");
        if (!c.has("eps")) {
            c.values["eps"] = 1.0 / static_cast<double>(c.count("grid"));
        }
        const double eps = c.real("eps");
        require(eps > 0.0 && 2.0 * eps < t, "eps: must lie in (0, t / 2)");
        require(c.real("threshold") > 0.0, "threshold: must be positive");
    }
    if (campaign == "verify-fclt") {
        const DoaSpec spec = c.distribution();
        positive_count("n");
        positive_count("grid");
        positive_count("reps");
        const auto times = c.reals("times");
        require(!times.empty(), "times: need at least one time");
        for (double t : times) {
            require(t > 0.0 && t <= 1.0, "times: every time must lie in (0, 1]");
        }
        const std::string fn = c.text("function");
        require(fn == "qi-log" || fn == "identity", "function: expected qi-log or identity");
        require(fn != "qi-log" || spec.positivity(),
                "function: qi-log needs a positive distribution (" + spec.name() + " is not)");
        const std::string source = c.text("source");
        require(source == "iid" || source == "moving-average",
                "source: expected iid or moving-average");
        require(c.real("threshold") > 0.0, "threshold: must be positive");
    }
    if (campaign == "verify-lemma") {
        const DoaSpec spec = c.distribution();
        const auto ns = c.counts("ns");
        require(ns.size() >= 2, "ns: need at least two checkpoints");
        for (std::size_t i = 0; i < ns.size(); ++i) {
            require(ns[i] >= 1, "ns: checkpoints must be at least 1");
            require(i == 0 || ns[i] > ns[i - 1], "ns: checkpoints must be increasing");
        }
        try {
            norming_sequence(spec, ns.back());
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("family: ") + e.what());
        }
        positive_count("reps");
        require(c.real("band-factor") >= 1.0, "band-factor: must be at least 1");
        require(c.real("trend-tolerance") >= 0.0, "trend-tolerance: must be non-negative");
    }
    if (campaign == "verify-product") {
        const DoaSpec spec = c.distribution();
        require(spec.positivity(),
                "family: the product statistic needs a positive distribution (" + spec.name() +
                    " is not)");
        try {
            norming_sequence(spec, c.count("n"));
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("family: ") + e.what());
        }
        positive_count("n");
        positive_count("reps");
        const std::string conv = c.text("convention");
        require(conv == "mu/a_n" || conv == "gamma/sqrt(n)",
                "convention: expected mu/a_n or gamma/sqrt(n)");
        require(conv == "mu/a_n" || spec.known_alpha() == 2.0,
                "convention: gamma/sqrt(n) applies to finite-variance inputs only");
        require(!c.has("gamma") || conv == "gamma/sqrt(n)",
                "gamma: only used with --convention gamma/sqrt(n)");
        if (!c.has("threshold")) {
            c.values["threshold"] = spec.known_alpha() == 2.0 ? 0.04 : 0.07;
        }
        require(c.real("threshold") > 0.0, "threshold: must be positive");
    }
    return c;
}

nlohmann::json CampaignConfig::to_json() const
{
    nlohmann::json j = values;
    j["campaign"] = campaign;
    return j;
}

CampaignConfig CampaignConfig::from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("campaign") || !j.at("campaign").is_string()) {
        throw ConfigError("campaign: missing in JSON config");
    }
    CampaignConfig c = defaults(j.at("campaign").get<std::string>());
    for (const auto& [key, value] : j.items()) {
        if (key != "campaign") {
            c.set(key, value);
        }
    }
    return c;
}

std::vector<std::pair<std::string, nlohmann::json>> read_config_file(
    const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw ConfigError("config: cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << is.rdbuf();
    const std::string content = buffer.str();
    std::vector<std::pair<std::string, nlohmann::json>> out;

    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
        }
        if (j.contains("config") && j.at("config").is_object() &&
            j.at("config").contains("cli")) {
            j = j.at("config").at("cli");
        }
        for (const auto& [key, value] : j.items()) {
            out.emplace_back(normalize_key(key), value);
        }
        return out;
    }

    std::istringstream lines(content);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty() || line.front() == '[') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: " + path.string() + ":" + std::to_string(number) +
                              ": expected key = value");
        }
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        out.emplace_back(normalize_key(line.substr(0, eq)), value);
    }
    return out;
}

}  // namespace fclt::cli
