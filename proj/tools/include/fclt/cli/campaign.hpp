#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fclt/cli/config.hpp"
#include "fclt/verification.hpp"

namespace fclt::cli {

// Result of run(): the process exit status and what was written.
struct RunOutcome {
    int status = 0;  // 0 pass, 1 fail
    std::vector<std::filesystem::path> files;
    std::string summary;
};

// Validates the config (ConfigError before anything touches the disk), runs
// the campaign and writes its report, raw CSVs and overlay files to out_dir.
RunOutcome run(const CampaignConfig& config);

// Overlay file names emit_plotdata() writes for the report, in order.
std::vector<std::string> plotdata_files(const VerificationReport& report);

// For each tested marginal, reads the raw samples named in the report's
// artifacts from out_dir and writes "x,empirical,theoretical" sorted by x,
// the theoretical column being the marginal's null law. Throws
// std::invalid_argument when the report carries no sample artifacts.
std::vector<std::filesystem::path> emit_plotdata(const VerificationReport& report,
                                                 const std::filesystem::path& out_dir);

}  // namespace fclt::cli
