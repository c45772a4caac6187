#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fclt/paths.hpp"
#include "fclt/stable.hpp"

namespace fclt::cli {

// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class FieldKind { Real, Count, Seed, Text, RealList, CountList };

struct FieldInfo {
    std::string name;
    FieldKind kind;
    std::string help;
};

// sample, paths, verify-sampler, verify-remark, verify-fclt, verify-lemma,
// verify-product
const std::vector<std::string>& campaign_names();

// Fields accepted by a campaign (flags, config-file keys and report keys all
// use these names). Throws ConfigError for an unknown campaign.
std::vector<FieldInfo> campaign_fields(const std::string& campaign);

// Every run is described by one of these. values holds the campaign's fields
// as JSON scalars/arrays; out_dir and threads are not part of the run's
// identity and are never embedded in reports.
struct CampaignConfig {
    std::string campaign;
    nlohmann::json values = nlohmann::json::object();
    std::filesystem::path out_dir = "out";
    unsigned threads = 0;

    // Documented defaults for the campaign.
    static CampaignConfig defaults(const std::string& campaign);

    // Parse text according to the field's kind. Lists are comma separated.
    void set(const std::string& key, const std::string& text);
    void set(const std::string& key, const nlohmann::json& value);
    void set(const std::string& key, const char* text) { set(key, std::string(text)); }

    bool has(const std::string& key) const { return values.contains(key); }
    double real(const std::string& key) const;
    std::size_t count(const std::string& key) const;
    std::uint64_t seed() const;
    std::string text(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<std::size_t> counts(const std::string& key) const;

    // Checks every field and fills derived defaults (eps, product threshold).
    CampaignConfig resolved() const;

    StableParams stable() const;
    DoaSpec distribution() const;

    // {"campaign": ..., <field>: ...}; key order is sorted, so stable.
    nlohmann::json to_json() const;
    static CampaignConfig from_json(const nlohmann::json& j);
};

// key/value pairs from a config file: JSON when the first non-blank character
// is '{', otherwise "key = value" lines with '#' comments. A JSON report is
// accepted too; its embedded "config"."cli" object is used.
std::vector<std::pair<std::string, nlohmann::json>> read_config_file(
    const std::filesystem::path& path);

}  // namespace fclt::cli
