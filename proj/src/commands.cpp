#include "gdlab/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gdlab/cache.hpp"
#include "gdlab/report_io.hpp"
#include "gdlab/verify.hpp"

namespace gdlab {

namespace {

constexpr double kConfirmThreshold = 2e10;

// Long runs print a cost estimate first; above the threshold they need an
// interactive yes or the no-confirm flag.
bool confirm_cost(const RunConfig& cfg, double estimated_ops, CommandIO& io) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", estimated_ops);
    io.err << "estimated operation count: " << buf << "\n";
    if (estimated_ops <= kConfirmThreshold || cfg.assume_yes) return true;
    io.err << "this looks like a long run; proceed? [y/N] " << std::flush;
    std::string line;
    std::getline(io.in, line);
    if (!line.empty() && (line[0] == 'y' || line[0] == 'Y')) return true;
    io.err << "aborted\n";
    return false;
}

int write_output(const RunConfig& cfg, const std::string& text, CommandIO& io) {
    if (cfg.output.path.empty()) {
        io.out << text;
        return 0;
    }
    if (std::filesystem::exists(cfg.output.path) && !cfg.force) {
        io.err << "refusing to overwrite " << cfg.output.path << " (use --force)\n";
        return 2;
    }
    std::ofstream f(cfg.output.path, std::ios::binary);
    if (!f) {
        io.err << "cannot open " << cfg.output.path << " for writing\n";
        return 2;
    }
    f << text;
    return f.good() ? 0 : 2;
}

ArithTables acquire_tables(const RunConfig& cfg, CommandIO& io) {
    BuildOptions opts;
    opts.threads = cfg.threads;
    if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
        ArithTables t = load_cache(cfg.cache_path);
        if (t.limit >= cfg.table_limit) {
            io.err << "loaded table cache " << cfg.cache_path << " (limit " << t.limit << ")\n";
            return t;
        }
        io.err << "cache limit " << t.limit << " below requested " << cfg.table_limit
               << "; rebuilding\n";
    }
    return build_tables(cfg.table_limit, opts);
}

} // namespace

int cmd_tables(const RunConfig& cfg, CommandIO io) {
    if (!confirm_cost(cfg, 4.0 * static_cast<double>(cfg.table_limit), io)) return 1;

    BuildOptions opts;
    opts.threads = cfg.threads;
    const auto t0 = std::chrono::steady_clock::now();
    const ArithTables t = build_tables(cfg.table_limit, opts);
    const auto t1 = std::chrono::steady_clock::now();

    TablesSummary summary;
    summary.limit = t.limit;
    summary.bytes = ArithTables::bytes_needed(t.limit);
    summary.build_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (!cfg.cache_path.empty()) {
        if (std::filesystem::exists(cfg.cache_path) && !cfg.force) {
            io.err << "refusing to overwrite cache " << cfg.cache_path << " (use --force)\n";
            return 2;
        }
        save_cache(t, cfg.cache_path);
        summary.cache_path = cfg.cache_path;
        summary.cache_written = true;
    }
    return write_output(cfg, tables_json(summary, cfg.output.precision), io);
}

int cmd_constants(const RunConfig& cfg, CommandIO io) {
    if (cfg.targets.empty()) {
        io.err << "constants: no targets (use --n or --range)\n";
        return 2;
    }
    const double ops =
        static_cast<double>(cfg.table_limit) * 4.0 +
        static_cast<double>(cfg.targets.size()) * (2e5 + static_cast<double>(cfg.prime_cutoff));
    if (!confirm_cost(cfg, ops, io)) return 1;

    const ArithTables t = acquire_tables(cfg, io);
    const double R = static_cast<double>(std::min<u64>(t.limit, 100'000));
    const u64 series_cutoff = std::min<u64>(t.limit, 1'000'000);

    std::vector<ConstantsRow> rows;
    for (u64 N : cfg.targets) {
        ConstantsRow r;
        r.N = N;
        r.singular = singular_series(N, cfg.prime_cutoff);
        r.density = squarefree_density(N, cfg.prime_cutoff);
        r.density_series = density_series_partial(N, series_cutoff, t);
        r.least_nondividing_prime = least_nondividing_odd_prime(N, t);
        r.series_truncation = R;
        r.gy_log = gy_sum_log(N, R, t);
        r.gy_plain = gy_sum_plain(N, R, t);
        r.weighted_log = weighted_mobius_log_sum(N, R, t, cfg.prime_cutoff);
        const DecompParams p = cfg.params_for(N);
        r.double_sum = mobius_double_sum(N, p.theta, p.B, t);
        r.double_sum_theta = p.theta;
        r.double_sum_B = p.B;
        rows.push_back(r);
    }

    const std::string text = cfg.output.format == OutputFormat::json
                                 ? constants_json(rows, cfg.prime_cutoff, cfg.output.precision)
                                 : constants_csv(rows, cfg.output.precision);
    return write_output(cfg, text, io);
}

int cmd_decompose(const RunConfig& cfg, CommandIO io) {
    if (cfg.targets.empty()) {
        io.err << "decompose: no targets (use --n or --range)\n";
        return 2;
    }
    double ops = 4.0 * static_cast<double>(cfg.table_limit);
    for (u64 N : cfg.targets)
        ops += 5.0 * static_cast<double>(N) * (std::log2(static_cast<double>(N)) + 1.0);
    if (!confirm_cost(cfg, ops, io)) return 1;

    const ArithTables t = acquire_tables(cfg, io);
    std::vector<DecompositionReport> reports;
    for (u64 N : cfg.targets) {
        const DecompParams params = cfg.params_for(N);
        reports.push_back(decomposition_report(params, t, cfg.prime_cutoff));
        if (reports.back().odd_target)
            io.err << "note: N=" << N << " is odd; singular series is exactly 0\n";
    }

    const std::string text = cfg.output.format == OutputFormat::json
                                 ? decomposition_json(reports, cfg.output.precision)
                                 : decomposition_csv(reports, cfg.output.precision);
    return write_output(cfg, text, io);
}

int cmd_discrepancy(const RunConfig& cfg, CommandIO io) {
    if (cfg.targets.empty()) {
        io.err << "discrepancy: no targets (use --n or --range)\n";
        return 2;
    }
    DiscrepancySettings ds = cfg.discrepancy.value_or(DiscrepancySettings{});
    double ops = 4.0 * static_cast<double>(cfg.table_limit);
    for (u64 N : cfg.targets)
        ops += static_cast<double>(ds.q_max) * static_cast<double>(N) *
               static_cast<double>(ds.kinds.size());
    if (!confirm_cost(cfg, ops, io)) return 1;

    const ArithTables t = acquire_tables(cfg, io);
    std::vector<DiscrepancyProfile> profiles;
    for (u64 N : cfg.targets) {
        const u64 q_max = std::min<u64>(ds.q_max, N);
        for (WeightKind kind : ds.kinds)
            profiles.push_back(discrepancy_profile(t, N, q_max, ds.mode, kind, ds.comparator,
                                                   cfg.threads));
    }

    std::string text;
    if (cfg.output.format == OutputFormat::json) {
        text = profiles_json(profiles, cfg.output.precision);
    } else {
        if (profiles.size() != 1) {
            io.err << "csv output carries a single profile; got " << profiles.size()
                   << " (one target and one kind, or use json)\n";
            return 2;
        }
        text = profile_csv(profiles[0], cfg.output.precision);
    }
    return write_output(cfg, text, io);
}

int cmd_verify(const RunConfig& cfg, CommandIO io) {
    VerifyOptions opts;
    opts.limit = cfg.table_limit;
    opts.threads = cfg.threads;
    const int failures = run_verify(opts, io.out);
    if (failures == 0) {
        io.out << "all invariants hold\n";
        return 0;
    }
    io.out << failures << " invariant(s) failed\n";
    return 1;
}

} // namespace gdlab
