#include "gdlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <ostream>
#include <random>

#include "gdlab/cache.hpp"
#include "gdlab/constants.hpp"
#include "gdlab/decomposition.hpp"
#include "gdlab/equidistribution.hpp"
#include "gdlab/oracle.hpp"

namespace gdlab {

namespace {

class Checker {
public:
    explicit Checker(std::ostream& out) : out_(out) {}

    void close(const char* name, double lhs, double rhs, double tol) {
        const bool ok = std::fabs(lhs - rhs) <= tol;
        report(name, ok, lhs, rhs);
    }

    void holds(const char* name, bool ok, double lhs = 0.0, double rhs = 0.0) {
        report(name, ok, lhs, rhs);
    }

    int failures() const { return failures_; }

private:
    void report(const char* name, bool ok, double lhs, double rhs) {
        if (ok) {
            out_ << "ok   " << name << "\n";
        } else {
            ++failures_;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "FAIL %s: lhs=%.17g rhs=%.17g", name, lhs, rhs);
            out_ << buf << "\n";
        }
    }

    std::ostream& out_;
    int failures_ = 0;
};

} // namespace

int run_verify(const VerifyOptions& opts, std::ostream& out) {
    if (opts.limit < 2000) throw ParameterError("verify: limit must be >= 2000");
    BuildOptions bopts;
    bopts.threads = opts.threads;
    const ArithTables t = build_tables(opts.limit, bopts);
    Checker c(out);

    {
        bool ok = true;
        u64 bad = 0;
        const u64 top = std::min<u64>(opts.limit, 20'000);
        for (u64 n = 1; n <= top && ok; ++n) {
            if (t.mu(n) != oracle::naive_mu(n) || t.phi(n) != oracle::naive_phi(n) ||
                std::fabs(t.lambda_log(n) - oracle::naive_lambda(n)) > 1e-12 ||
                (n >= 2 && t.spf(n) != oracle::naive_spf(n))) {
                ok = false;
                bad = n;
            }
        }
        c.holds("tables match trial division", ok, static_cast<double>(bad), 0.0);
    }

    {
        double worst = 0.0;
        const u64 top = std::min<u64>(opts.limit, 100'000);
        for (u64 n = 2; n <= top; ++n)
            worst = std::max(worst,
                             std::fabs(t.lambda_log(n) -
                                       lambda_truncated(n, static_cast<double>(n), t)));
        c.close("moebius inversion recovers Lambda", worst, 0.0, 1e-8);
    }

    {
        double worst = 0.0;
        for (u64 n = 2; n <= std::min<u64>(opts.limit, 5000); ++n) {
            const double a = std::sqrt(static_cast<double>(n));
            worst = std::max(worst, std::fabs(lambda_truncated(n, a, t) + lambda_tail(n, a, t) -
                                              t.lambda_log(n)));
        }
        c.close("truncation partitions Lambda", worst, 0.0, 1e-8);
    }

    {
        bool ok = true;
        for (u64 n : {1ull, 7ull, 12ull, 360ull, 1024ull})
            ok = ok && t.tau3(n) == oracle::naive_tau3(n);
        c.holds("tau3 matches enumeration", ok);
    }

    {
        const double base = singular_series(2, 100'000).value;
        bool ok = singular_series(9, 100'000).value == 0.0;
        for (u64 N = 4; N <= 512; N += 2)
            ok = ok && singular_series(N, 100'000).value >= base;
        c.holds("singular series: zero on odd, minimal at N=2", ok);
    }

    {
        bool ok = true;
        double lhs = 0, rhs = 0;
        for (u64 N = 2; N <= 2000 && ok; N += 26) {
            const u64 p0 = least_nondividing_odd_prime(N, t);
            lhs = 1.0 - squarefree_density(N, 100'000).value;
            rhs = 1.0 / static_cast<double>(p0 * (p0 - 1));
            ok = lhs >= rhs;
        }
        c.holds("density gap meets the least-prime bound", ok, lhs, rhs);
    }

    {
        bool ok = true;
        for (u64 b = 1; b <= 100 && ok; ++b) {
            if (t.mu(b) == 0) continue;
            for (u64 d = 1; d <= 100; ++d) {
                if (t.mu(d) == 0) continue;
                const u64 g = oracle::naive_gcd(b * b, d);
                if (phi_lcm_square(b, d, t) != oracle::naive_phi(b * b / g * d)) {
                    ok = false;
                    break;
                }
            }
        }
        c.holds("phi(lcm(b^2,d)) identity", ok);
    }

    {
        const double lhs = mobius_series_weight(10, 21);
        const double rhs = mobius_series_weight(10, 3) * mobius_series_weight(10, 7);
        c.close("series weight multiplicative", lhs, rhs, 1e-13);
    }

    {
        const double target = singular_series(2, 100'000).value;
        const double err_lo = std::fabs(gy_sum_log(2, 100.0, t) - target);
        const double err_hi =
            std::fabs(gy_sum_log(2, static_cast<double>(std::min<u64>(opts.limit, 100'000)), t) -
                      target);
        c.holds("gy log sum converges toward the singular series", err_hi < err_lo, err_hi,
                err_lo);
    }

    {
        const u64 N = std::min<u64>(opts.limit, 2000);
        const double Q = std::sqrt(static_cast<double>(N));
        const SplitSums f = truncated_split_sums(N, Q, t);
        const double direct = oracle::naive_restricted_double_sum(N);
        c.close("four-way split reassembles the double sum", f.r0 + f.r1 + f.r2 + f.r3, direct,
                1e-6 * static_cast<double>(N));

        const oracle::NaiveSplitSums o = oracle::naive_split_sums(500, 22.0);
        const SplitSums f2 = truncated_split_sums(500, 22.0, t);
        c.close("split sums match the oracle", f2.r0 + 2 * f2.r1 + 3 * f2.r2 + 4 * f2.r3,
                o.r0 + 2 * o.r1 + 3 * o.r2 + 4 * o.r3, 1e-6 * 500.0);
    }

    {
        const u64 N = std::min<u64>(opts.limit, 2000);
        bool ok = true;
        double lhs = 0, rhs = 0;
        for (double alpha : {1.0, std::sqrt(static_cast<double>(N)), static_cast<double>(N)}) {
            DecompParams p = DecompParams::defaults(N, t.limit);
            p.alpha = alpha;
            lhs = s1_sum(p, t) + s2_sum(p, t);
            rhs = squarefree_weighted_lambda_product(N, t);
            ok = ok && std::fabs(lhs - rhs) < 1e-6 * static_cast<double>(N);
        }
        c.holds("S1 + S2 splitting identity", ok, lhs, rhs);

        DecompParams p = DecompParams::defaults(N, t.limit);
        c.close("s2 equals its k-form", s2_sum(p, t), s2_kform(p, t),
                1e-6 * static_cast<double>(N));
        c.close("S3 - S4 equals the coprime k-form", s3_sum(p, t) - s4_sum(p, t),
                s2_kform(p, t, KRange::coprime_only), 1e-6 * static_cast<double>(N));
    }

    {
        bool ok = true;
        for (u64 N = 4; N <= 260 && ok; ++N)
            ok = std::fabs(rtilde(N, t) - oracle::naive_rtilde(N)) <
                 1e-8 * static_cast<double>(N);
        c.holds("rtilde matches the oracle", ok);
    }

    {
        const u64 N = std::min<u64>(opts.limit, 10'000);
        const double gap = rtilde(N, t) - squarefree_weighted_lambda_product(N, t);
        double direct = 0.0;
        for (u64 m = 4; m < N; ++m) {
            if (t.prime_power_base(m) == 0 || m == t.prime_power_base(m)) continue;
            direct += t.lambda_log(N - m) * t.lambda_log(m);
        }
        c.close("mu^2 insertion drops exactly the higher prime powers", gap, direct,
                1e-9 * static_cast<double>(N));
    }

    {
        const u64 N = std::min<u64>(opts.limit, 10'000);
        bool ok = true;
        for (u64 q = 1; q <= 20 && ok; ++q) {
            for (u64 y : {N / 2, N}) {
                double total = 0.0;
                for (u64 a = 0; a < q; ++a) total += psi_progression(t, y, q, a);
                const double psi = psi_progression(t, y, 1, 0);
                ok = ok && std::fabs(total - psi) <= 1e-9 * std::fabs(psi);
            }
        }
        c.holds("progression columns sum to psi", ok);
    }

    {
        bool ok = true;
        double lhs = 0, rhs = 0;
        for (WeightKind kind : {WeightKind::mu_twisted, WeightKind::mu_twisted_log}) {
            const DiscrepancyProfile prof =
                discrepancy_profile(t, 100, 5, DiscrepancyMode::fixed_residue, kind, {},
                                    opts.threads);
            const oracle::NaiveKind nk = kind == WeightKind::mu_twisted
                                             ? oracle::NaiveKind::mu_twisted
                                             : oracle::NaiveKind::mu_twisted_log;
            for (const auto& [q, d] : prof.per_q) {
                lhs = d;
                rhs = oracle::naive_discrepancy(100, q, 100 % q, nk);
                ok = ok && std::fabs(lhs - rhs) <= 1e-10 * (1.0 + std::fabs(rhs));
            }
        }
        c.holds("discrepancies match the oracle", ok, lhs, rhs);
    }

    {
        const u64 N = std::min<u64>(opts.limit, 10'000);
        std::mt19937_64 rng(7);
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < 20 && ok; ++i) {
            const u64 q = 1 + rng() % 97;
            const u64 a = rng() % q;
            const u64 y = 2 + rng() % (N - 3);
            const double r = abel_identity_residual(t, N, q, a, y);
            worst = std::max(worst, r);
            ok = r < 1e-6;
        }
        c.holds("partial-summation identity", ok, worst, 1e-6);
    }

    {
        const std::string path = "gdlab_verify_cache.bin";
        ArithTables small = build_tables(5000);
        save_cache(small, path);
        ArithTables back = load_cache(path);
        std::filesystem::remove(path);
        c.holds("cache round trip",
                back.limit == small.limit && back.mu_v == small.mu_v &&
                    back.lambda_v == small.lambda_v && back.phi_v == small.phi_v &&
                    back.spf_v == small.spf_v && back.ppb_v == small.ppb_v);
    }

    return c.failures();
}

} // namespace gdlab
