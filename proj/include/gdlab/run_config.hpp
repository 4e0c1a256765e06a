#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdlab/constants.hpp"
#include "gdlab/decomposition.hpp"
#include "gdlab/equidistribution.hpp"

namespace gdlab {

struct DiscrepancySettings {
    u64 q_max = 50;
    DiscrepancyMode mode = DiscrepancyMode::fixed_residue;
    std::vector<WeightKind> kinds = {WeightKind::psi_plain};
    PsiComparator comparator = PsiComparator::linear_y;
};

enum class OutputFormat { json, csv };

struct OutputSettings {
    OutputFormat format = OutputFormat::json;
    std::string path;   // empty = stdout
    int precision = 17; // significant digits for floats
};

// One run, loadable from a JSON config document; CLI flags mirror the keys
// and win over the file.
struct RunConfig {
    u64 table_limit = 100'000;
    std::string cache_path; // empty = no cache

    std::vector<u64> targets;

    std::optional<double> Q;
    std::optional<double> alpha;
    std::optional<double> theta;
    std::optional<double> A;
    std::optional<u64> B;
    u64 prime_cutoff = kDefaultPrimeCutoff;

    std::optional<DiscrepancySettings> discrepancy;
    OutputSettings output;

    bool force = false;
    bool assume_yes = false;
    unsigned threads = 0;

    // Materializes DecompParams for one target: defaults overridden by the
    // explicit settings above.
    DecompParams params_for(u64 N) const;
};

// Parses a config document; throws ConfigError with field diagnostics.
RunConfig parse_config(const std::string& json_text, const std::string& origin = "<config>");
RunConfig parse_config_file(const std::string& path);

// Rejects configs whose targets exceed the table limit, bad precision, ...
void validate_config(const RunConfig& config);

// "from:to[:stride]" -> targets
std::vector<u64> expand_range(const std::string& text);

const char* to_string(DiscrepancyMode mode);
const char* to_string(WeightKind kind);
const char* to_string(PsiComparator comparator);
bool parse_mode(const std::string& s, DiscrepancyMode& out);
bool parse_kind(const std::string& s, WeightKind& out);
bool parse_comparator(const std::string& s, PsiComparator& out);

} // namespace gdlab
