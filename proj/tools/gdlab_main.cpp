// gdlab: desk-scale laboratory for weighted Goldbach representation sums.
//
// Subcommands:
//   tables       build/cached arithmetic-function tables
//   constants    singular series, density constants, convergent series
//   decompose    rtilde, the four-way split, S1..S4, twisted sums
//   discrepancy  per-modulus equidistribution profiles
//   verify       cross-module invariant suite
//
// Flags mirror the JSON config keys; flags win over --config.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gdlab/commands.hpp"

namespace {

using namespace gdlab;

struct CliArgs {
    std::string config_path;
    std::vector<std::uint64_t> targets;
    std::string range;
    std::uint64_t limit = 0;
    std::string cache;
    double q_trunc = -1.0;
    double alpha = -1.0;
    double theta = -1.0;
    double big_a = -1.0;
    std::uint64_t b_cap = 0;
    std::uint64_t cutoff = 0;
    std::uint64_t qmax = 0;
    std::string mode;
    std::string kind;
    std::string comparator;
    std::string format;
    std::string out;
    int precision = 0;
    unsigned threads = 0;
    bool force = false;
    bool yes = false;
};

// Relative cache paths resolve under GDLAB_CACHE_DIR when the variable is
// set.
std::string resolve_cache_path(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("GDLAB_CACHE_DIR");
    if (!dir || *dir == '\0') return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

RunConfig merge(const CliArgs& a) {
    RunConfig cfg;
    if (!a.config_path.empty()) cfg = parse_config_file(a.config_path);

    if (a.limit) cfg.table_limit = a.limit;
    if (!a.cache.empty()) cfg.cache_path = a.cache;
    cfg.cache_path = resolve_cache_path(cfg.cache_path);
    if (!a.targets.empty()) cfg.targets = a.targets;
    if (!a.range.empty()) {
        const std::vector<std::uint64_t> expanded = expand_range(a.range);
        cfg.targets.insert(cfg.targets.end(), expanded.begin(), expanded.end());
    }
    if (a.q_trunc >= 0.0) cfg.Q = a.q_trunc;
    if (a.alpha >= 0.0) cfg.alpha = a.alpha;
    if (a.theta >= 0.0) cfg.theta = a.theta;
    if (a.big_a >= 0.0) cfg.A = a.big_a;
    if (a.b_cap) cfg.B = a.b_cap;
    if (a.cutoff) cfg.prime_cutoff = a.cutoff;

    if (a.qmax || !a.mode.empty() || !a.kind.empty() || !a.comparator.empty()) {
        DiscrepancySettings ds = cfg.discrepancy.value_or(DiscrepancySettings{});
        if (a.qmax) ds.q_max = a.qmax;
        if (!a.mode.empty() && !parse_mode(a.mode, ds.mode))
            throw ConfigError("--mode: expected fixed_residue or max_over_all");
        if (!a.kind.empty()) {
            WeightKind k;
            if (!parse_kind(a.kind, k))
                throw ConfigError("--kind: expected psi_plain | mu_twisted | mu_twisted_log");
            ds.kinds = {k};
        }
        if (!a.comparator.empty() && !parse_comparator(a.comparator, ds.comparator))
            throw ConfigError("--comparator: expected linear_y or scaled_psi");
        cfg.discrepancy = ds;
    }

    if (!a.format.empty()) {
        if (a.format == "json") cfg.output.format = OutputFormat::json;
        else if (a.format == "csv") cfg.output.format = OutputFormat::csv;
        else throw ConfigError("--format: expected json or csv");
    }
    if (!a.out.empty()) cfg.output.path = a.out;
    if (a.precision) cfg.output.precision = a.precision;
    if (a.threads) cfg.threads = a.threads;
    cfg.force = cfg.force || a.force;
    cfg.assume_yes = cfg.assume_yes || a.yes;

    validate_config(cfg);
    return cfg;
}

void add_common(CLI::App* cmd, CliArgs& a, bool with_targets, bool with_params,
                bool with_discrepancy) {
    cmd->add_option("--config", a.config_path, "JSON config file (flags win)");
    cmd->add_option("--limit", a.limit, "table limit");
    cmd->add_option("--cache", a.cache, "binary table cache path");
    cmd->add_option("--threads", a.threads, "worker threads (0 = hardware)");
    cmd->add_option("--format", a.format, "json|csv");
    cmd->add_option("--out", a.out, "output path (default stdout)");
    cmd->add_option("--precision", a.precision, "float significant digits (1-17)");
    cmd->add_flag("--force", a.force, "allow overwriting outputs");
    cmd->add_flag("--yes", a.yes, "skip long-run confirmation");
    if (with_targets) {
        cmd->add_option("--n", a.targets, "target N (repeatable)");
        cmd->add_option("--range", a.range, "targets from:to[:stride]");
    }
    if (with_params) {
        cmd->add_option("--q", a.q_trunc, "split truncation Q (default sqrt N)");
        cmd->add_option("--alpha", a.alpha, "divisor truncation alpha (default N^theta)");
        cmd->add_option("--theta", a.theta, "level of distribution (default 0.5)");
        cmd->add_option("--big-a", a.big_a, "error-budget exponent A (default 1)");
        cmd->add_option("--b-cap", a.b_cap, "auxiliary cutoff B");
        cmd->add_option("--cutoff", a.cutoff, "Euler-product prime cutoff");
    }
    if (with_discrepancy) {
        cmd->add_option("--qmax", a.qmax, "largest modulus");
        cmd->add_option("--mode", a.mode, "fixed_residue|max_over_all");
        cmd->add_option("--kind", a.kind, "psi_plain|mu_twisted|mu_twisted_log");
        cmd->add_option("--comparator", a.comparator, "linear_y|scaled_psi (plain kind)");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale Goldbach decomposition laboratory"};
    app.require_subcommand(1);

    CliArgs args;
    CLI::App* c_tables = app.add_subcommand("tables", "build tables and optionally cache them");
    add_common(c_tables, args, false, false, false);
    CLI::App* c_constants =
        app.add_subcommand("constants", "singular series and companion constants");
    add_common(c_constants, args, true, true, false);
    CLI::App* c_decompose = app.add_subcommand("decompose", "full decomposition report");
    add_common(c_decompose, args, true, true, false);
    CLI::App* c_discrepancy =
        app.add_subcommand("discrepancy", "per-modulus discrepancy profiles");
    add_common(c_discrepancy, args, true, false, true);
    CLI::App* c_verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(c_verify, args, false, false, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = merge(args);
        CommandIO io{std::cin, std::cout, std::cerr};
        if (c_tables->parsed()) return cmd_tables(cfg, io);
        if (c_constants->parsed()) return cmd_constants(cfg, io);
        if (c_decompose->parsed()) return cmd_decompose(cfg, io);
        if (c_discrepancy->parsed()) return cmd_discrepancy(cfg, io);
        if (c_verify->parsed()) return cmd_verify(cfg, io);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CacheError& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
