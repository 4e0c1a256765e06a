#include "gdlab/decomposition.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gdlab/summation.hpp"

namespace gdlab {

DecompParams DecompParams::defaults(u64 N, u64 table_limit) {
    DecompParams p;
    p.N = N;
    p.Q = std::sqrt(static_cast<double>(N));
    p.theta = 0.5;
    p.alpha = std::pow(static_cast<double>(N), p.theta);
    p.A = 1.0;
    const double logN = std::log(static_cast<double>(N));
    const double b_raw = std::ceil(std::pow(logN, p.A + 4.0));
    const double b_cap = std::floor(std::sqrt(static_cast<double>(table_limit)));
    p.B = static_cast<u64>(std::max(1.0, std::min(b_raw, b_cap)));
    return p;
}

void DecompParams::validate() const {
    if (N < 4) throw ParameterError("params: N must be >= 4");
    if (!(Q >= 0.0)) throw ParameterError("params: Q must be >= 0");
    if (!(alpha >= 1.0)) throw ParameterError("params: alpha must be >= 1");
    if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("params: theta must lie in (0, 1)");
    if (!(A > 0.0)) throw ParameterError("params: A must be > 0");
    if (B < 1) throw ParameterError("params: B must be >= 1");
}

namespace {

void check_target(u64 N, const ArithTables& tables, const char* who) {
    if (N < 2) throw ParameterError(std::string(who) + ": N must be >= 2");
    if (N > tables.limit)
        throw ParameterError(std::string(who) + ": N=" + std::to_string(N) +
                             " exceeds the table limit " + std::to_string(tables.limit));
}

// Signed sum of mu(d) log(1/d) over squarefree divisors d of n that satisfy
// pred(d). Walks the subsets of the distinct primes of n.
template <typename Pred>
double squarefree_divisor_sum(u64 n, const ArithTables& tables, Pred pred) {
    const Factorization fac = tables.factorize(n);
    const unsigned subsets = 1u << fac.count;
    CompensatedSum acc;
    for (unsigned mask = 0; mask < subsets; ++mask) {
        u64 d = 1;
        int mu = 1;
        for (int i = 0; i < fac.count; ++i) {
            if (mask & (1u << i)) {
                d *= fac.f[i].p;
                mu = -mu;
            }
        }
        if (!pred(d)) continue;
        if (d > 1) acc.add(mu * -std::log(static_cast<double>(d)));
    }
    return acc.value();
}

} // namespace

double lambda_truncated(u64 n, double alpha, const ArithTables& tables) {
    if (n < 1 || n > tables.limit)
        throw ParameterError("lambda_truncated: n outside table range");
    return squarefree_divisor_sum(n, tables,
                                  [&](u64 d) { return static_cast<double>(d) <= alpha; });
}

double lambda_tail(u64 n, double alpha, const ArithTables& tables) {
    if (n < 1 || n > tables.limit)
        throw ParameterError("lambda_tail: n outside table range");
    return squarefree_divisor_sum(n, tables,
                                  [&](u64 d) { return static_cast<double>(d) > alpha; });
}

double rtilde(u64 N, const ArithTables& tables) {
    check_target(N, tables, "rtilde");
    CompensatedSum acc;
    for (u64 n = 1; n < N; ++n) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        const double lm = tables.lambda_log(N - n);
        if (lm == 0.0) continue;
        acc.add(ln * lm);
    }
    return acc.value();
}

SplitSums truncated_split_sums(u64 N, double Q, const ArithTables& tables) {
    check_target(N, tables, "truncated_split_sums");
    if (!(Q >= 0.0)) throw ParameterError("truncated_split_sums: Q must be >= 0");

    // a_le[x] = sum_{d|x, d<=Q} mu(d) log d          a_gt[x]: same over d > Q
    // b_le[x] = sum_{d|x, d<=Q, (d,N)=1} mu(d) log d b_gt[x]: same over d > Q
    // Each side of the split gets its own accumulation pass so degenerate
    // truncations (Q = 0, Q >= N) come out exactly zero.
    std::vector<double> a_le(N, 0.0), a_gt(N, 0.0), b_le(N, 0.0), b_gt(N, 0.0);
    const CoprimeFilter filter(tables, N);
    for (u64 d = 2; d < N; ++d) {
        const int mu = tables.mu(d);
        if (mu == 0) continue;
        const bool le = static_cast<double>(d) <= Q;
        const bool cop = filter.coprime(d);
        const double w = mu * std::log(static_cast<double>(d));
        if (le) {
            if (cop) {
                for (u64 m = d; m < N; m += d) {
                    a_le[m] += w;
                    b_le[m] += w;
                }
            } else {
                for (u64 m = d; m < N; m += d) a_le[m] += w;
            }
        } else {
            if (cop) {
                for (u64 m = d; m < N; m += d) {
                    a_gt[m] += w;
                    b_gt[m] += w;
                }
            } else {
                for (u64 m = d; m < N; m += d) a_gt[m] += w;
            }
        }
    }

    CompensatedSum r0, r1, r2, r3;
    for (u64 n = 1; n < N; ++n) {
        const u64 m = N - n;
        const double al = a_le[n];
        const double ag = a_gt[n];
        const double bl = b_le[m];
        const double bg = b_gt[m];
        if (al != 0.0) {
            if (bl != 0.0) r0.add(al * bl);
            if (bg != 0.0) r1.add(al * bg);
        }
        if (ag != 0.0) {
            if (bl != 0.0) r2.add(ag * bl);
            if (bg != 0.0) r3.add(ag * bg);
        }
    }
    return {r0.value(), r1.value(), r2.value(), r3.value()};
}

namespace {

// Lambda_alpha over [1, N) by multiples accumulation: every squarefree
// d <= alpha adds mu(d) log(1/d) to its multiples. With tail = true the
// complementary range d > alpha is accumulated instead.
std::vector<double> lambda_alpha_array(u64 N, double alpha, const ArithTables& tables,
                                       bool tail = false) {
    std::vector<double> acc(N, 0.0);
    for (u64 d = 2; d < N; ++d) {
        const bool below = static_cast<double>(d) <= alpha;
        if (!tail && !below) break; // d only grows
        if (below == tail) continue;
        const int mu = tables.mu(d);
        if (mu == 0) continue;
        const double w = mu * -std::log(static_cast<double>(d));
        for (u64 m = d; m < N; m += d) acc[m] += w;
    }
    return acc;
}

} // namespace

double s1_sum(const DecompParams& params, const ArithTables& tables) {
    params.validate();
    check_target(params.N, tables, "s1_sum");
    const u64 N = params.N;
    const std::vector<double> la = lambda_alpha_array(N, params.alpha, tables);
    CompensatedSum acc;
    for (u64 n = 1; n < N; ++n) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        const u64 m = N - n;
        if (tables.mu(m) == 0) continue;
        if (la[m] != 0.0) acc.add(ln * la[m]);
    }
    return acc.value();
}

double s2_sum(const DecompParams& params, const ArithTables& tables) {
    params.validate();
    check_target(params.N, tables, "s2_sum");
    const u64 N = params.N;
    const std::vector<double> lt = lambda_alpha_array(N, params.alpha, tables, /*tail=*/true);
    CompensatedSum acc;
    for (u64 n = 1; n < N; ++n) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        const u64 m = N - n;
        if (tables.mu(m) == 0) continue;
        if (lt[m] != 0.0) acc.add(ln * lt[m]);
    }
    return acc.value();
}

double s2_kform(const DecompParams& params, const ArithTables& tables, KRange range) {
    params.validate();
    check_target(params.N, tables, "s2_kform");
    const u64 N = params.N;
    const double k_limit = static_cast<double>(N - 1) / params.alpha;
    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 k = 1; static_cast<double>(k) < k_limit; ++k) {
        if (range == KRange::coprime_only && !filter.coprime(k)) continue;
        const int muk = tables.mu(k);
        if (muk == 0) continue;
        const double logk = std::log(static_cast<double>(k));
        const u64 start = (N % k == 0) ? k : N % k;
        for (u64 n = start; n < N; n += k) {
            const u64 m = N - n;
            // k pairs with the complementary divisor d = m/k; only tail
            // divisors d > alpha belong to S2. Testing d keeps the predicate
            // identical to the divisor-side split.
            if (static_cast<double>(m / k) <= params.alpha) continue;
            const double ln = tables.lambda_log(n);
            if (ln == 0.0) continue;
            const int mum = tables.mu(m);
            if (mum == 0) continue;
            acc.add(muk * ln * mum * (logk - std::log(static_cast<double>(m))));
        }
    }
    return acc.value();
}

namespace {

// Shared skeleton of S3 / S4: coprime squarefree k below (N-1)/alpha, inner
// progression n = N (mod k) restricted to complementary divisors above
// alpha, exactly as in s2_kform.
template <typename Term>
double coprime_kform_sum(const DecompParams& params, const ArithTables& tables, Term term) {
    const u64 N = params.N;
    const double k_limit = static_cast<double>(N - 1) / params.alpha;
    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 k = 1; static_cast<double>(k) < k_limit; ++k) {
        if (!filter.coprime(k)) continue;
        const int muk = tables.mu(k);
        if (muk == 0) continue;
        const u64 start = (N % k == 0) ? k : N % k;
        for (u64 n = start; n < N; n += k) {
            const u64 m = N - n;
            if (static_cast<double>(m / k) <= params.alpha) continue;
            const double ln = tables.lambda_log(n);
            if (ln == 0.0) continue;
            const int mum = tables.mu(m);
            if (mum == 0) continue;
            acc.add(term(k, muk, n, ln, mum));
        }
    }
    return acc.value();
}

} // namespace

double s3_sum(const DecompParams& params, const ArithTables& tables) {
    params.validate();
    check_target(params.N, tables, "s3_sum");
    return coprime_kform_sum(params, tables, [](u64 k, int muk, u64, double ln, int mum) {
        return muk * std::log(static_cast<double>(k)) * ln * mum;
    });
}

double s4_sum(const DecompParams& params, const ArithTables& tables) {
    params.validate();
    check_target(params.N, tables, "s4_sum");
    const u64 N = params.N;
    return coprime_kform_sum(params, tables, [N](u64, int muk, u64 n, double ln, int mum) {
        return muk * ln * mum * std::log(static_cast<double>(N - n));
    });
}

double twisted_sum(u64 N, const ArithTables& tables) {
    check_target(N, tables, "twisted_sum");
    CompensatedSum acc;
    for (u64 n = 1; n < N; ++n) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        const int mum = tables.mu(N - n);
        if (mum == 0) continue;
        acc.add(ln * mum);
    }
    return acc.value();
}

double squarefree_weighted_sum(u64 N, const ArithTables& tables) {
    check_target(N, tables, "squarefree_weighted_sum");
    CompensatedSum acc;
    for (u64 n = 1; n < N; ++n) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        if (tables.mu(N - n) == 0) continue;
        acc.add(ln);
    }
    return acc.value();
}

double squarefree_weighted_lambda_product(u64 N, const ArithTables& tables) {
    check_target(N, tables, "squarefree_weighted_lambda_product");
    CompensatedSum acc;
    for (u64 n = 1; n < N; ++n) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        const u64 m = N - n;
        if (tables.mu(m) == 0) continue;
        const double lm = tables.lambda_log(m);
        if (lm == 0.0) continue;
        acc.add(ln * lm);
    }
    return acc.value();
}

DecompositionReport decomposition_report(const DecompParams& params, const ArithTables& tables,
                                         u64 prime_cutoff) {
    params.validate();
    if (params.N < 4) throw ParameterError("decomposition_report: N must be >= 4");
    check_target(params.N, tables, "decomposition_report");

    DecompositionReport rep;
    rep.params = params;
    rep.odd_target = (params.N % 2 != 0);

    const u64 N = params.N;
    rep.rtilde = rtilde(N, tables);
    const SplitSums split = truncated_split_sums(N, params.Q, tables);
    rep.r0 = split.r0;
    rep.r1 = split.r1;
    rep.r2 = split.r2;
    rep.r3 = split.r3;
    rep.s1 = s1_sum(params, tables);
    rep.s2 = s2_sum(params, tables);
    rep.s3 = s3_sum(params, tables);
    rep.s4 = s4_sum(params, tables);
    rep.twisted_sum = twisted_sum(N, tables);
    rep.squarefree_weighted = squarefree_weighted_sum(N, tables);

    rep.sq_identity_residual =
        (rep.s1 + rep.s2) - squarefree_weighted_lambda_product(N, tables);

    const SeriesEstimate ss = singular_series(N, prime_cutoff);
    const SeriesEstimate ad = squarefree_density(N, prime_cutoff);
    rep.singular_series_used = ss.value;
    rep.squarefree_density_used = ad.value;
    rep.main_identity_residual =
        rep.rtilde - ss.value * (static_cast<double>(N) - rep.twisted_sum);
    rep.density_lower_bound = ss.value * (1.0 - ad.value) * static_cast<double>(N);
    rep.meets_lower_bound = rep.rtilde >= rep.density_lower_bound;
    return rep;
}

} // namespace gdlab
