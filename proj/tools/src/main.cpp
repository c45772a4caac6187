#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fclt/cli/campaign.hpp"
#include "fclt/cli/config.hpp"
#include "fclt/stable.hpp"

namespace {

constexpr int kExitConfig = 2;

struct Subcommand {
    CLI::App* app = nullptr;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, std::vector<std::string>> storage;
    std::string config_file;
    std::string out_dir = "out";
    unsigned threads = 0;
};

}  // namespace

int main(int argc, char** argv)
{
    using namespace fclt::cli;

    CLI::App app{"Stable-law simulation and functional limit theorem verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stablefclt 0.1.0");

    std::map<std::string, Subcommand> subs;
    for (const auto& name : campaign_names()) {
        auto& sub = subs[name];
        sub.app = app.add_subcommand(name);
        sub.app->add_option("--config", sub.config_file,
                            "config file (key = value lines or JSON; flags override it)");
        sub.app->add_option("--out-dir", sub.out_dir, "output directory")
            ->capture_default_str();
        sub.app->add_option("--threads", sub.threads,
                            "worker threads, 0 = all cores (results do not depend on it)");
        const auto defaults = CampaignConfig::defaults(name);
        for (const auto& field : campaign_fields(name)) {
            std::string help = field.help;
            if (defaults.has(field.name)) {
                help += " [default: " + defaults.values.at(field.name).dump() + "]";
            }
            auto* opt = sub.app->add_option("--" + field.name, sub.storage[field.name], help);
            if (field.kind == FieldKind::RealList || field.kind == FieldKind::CountList) {
                opt->delimiter(',');
            } else {
                opt->expected(1);
            }
            sub.options[field.name] = opt;
        }
    }
    subs.at("sample").app->description("draw from a stable law");
    subs.at("paths").app->description("simulate a Levy path and a partial-sum path");
    subs.at("verify-sampler").app->description("empirical vs analytic characteristic function");
    subs.at("verify-remark").app->description("Riemann integral of Levy paths vs the limit law");
    subs.at("verify-fclt").app->description("functional statistic marginals vs the limit law");
    subs.at("verify-lemma").app->description("boundedness of the normalized deviation sums");
    subs.at("verify-product").app->description("log product statistic vs the limit law");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    for (auto& [name, sub] : subs) {
        if (!sub.app->parsed()) {
            continue;
        }
        try {
            CampaignConfig config = CampaignConfig::defaults(name);
            if (!sub.config_file.empty()) {
                for (const auto& [key, value] : read_config_file(sub.config_file)) {
                    if (key == "campaign") {
                        if (value != name) {
                            throw ConfigError("campaign: config file is for " + value.dump() +
                                              ", not " + name);
                        }
                        continue;
                    }
                    config.set(key, value);
                }
            }
            for (const auto& [field, opt] : sub.options) {
                if (opt->count() > 0) {
                    std::string joined;
                    for (std::size_t i = 0; i < sub.storage[field].size(); ++i) {
                        joined += (i ? "," : "") + sub.storage[field][i];
                    }
                    config.set(field, joined);
                }
            }
            config.out_dir = sub.out_dir;
            config.threads = sub.threads;
            const RunOutcome outcome = run(config);
            std::printf("%s\n", outcome.summary.c_str());
            for (const auto& f : outcome.files) {
                std::printf("  wrote %s\n", f.string().c_str());
            }
            return outcome.status;
        } catch (const ConfigError& e) {
            std::fprintf(stderr, "configuration error: %s\n", e.what());
            return kExitConfig;
        } catch (const fclt::QuadratureError& e) {
            std::fprintf(stderr, "numerical failure: %s\n", e.what());
            return 1;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 1;
        }
    }
    return kExitConfig;
}
