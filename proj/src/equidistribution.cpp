#include "gdlab/equidistribution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "gdlab/summation.hpp"

namespace gdlab {

namespace {

struct Event {
    u32 n;
    double w;
};

// Support of the weight: n with w(n) != 0, ascending. Shared across moduli.
std::vector<Event> weight_events(const ArithTables& tables, u64 N, WeightKind kind, u64 y_max) {
    std::vector<Event> ev;
    for (u64 n = 1; n <= y_max; ++n) {
        double w = tables.lambda_log(n);
        if (w == 0.0) continue;
        if (kind != WeightKind::psi_plain) {
            const int mu = tables.mu(N - n);
            if (mu == 0) continue;
            w *= mu;
            if (kind == WeightKind::mu_twisted_log)
                w *= std::log(static_cast<double>(N - n));
        }
        ev.push_back({static_cast<u32>(n), w});
    }
    return ev;
}

// max over integer y in [1, y_max] of |S_a(y) - comparator(y)| for one
// residue class. S_a and the step comparators only move at events; the
// linear comparator y/phi(q) makes every plateau's extremes sit at its
// endpoints, so checking y = n-1 and y = n at each event n plus y = y_max
// is exhaustive.
double residue_discrepancy(const std::vector<Event>& events, u64 y_max, u64 q, u64 a,
                           double phi_q, WeightKind kind, PsiComparator comparator) {
    double best = 0.0;
    CompensatedSum sa;
    if (kind == WeightKind::psi_plain && comparator == PsiComparator::linear_y) {
        for (const Event& e : events) {
            if (e.n > 1)
                best = std::max(best, std::fabs(sa.value() - (e.n - 1) / phi_q));
            if (e.n % q == a) sa.add(e.w);
            best = std::max(best, std::fabs(sa.value() - e.n / phi_q));
        }
        best = std::max(best, std::fabs(sa.value() - static_cast<double>(y_max) / phi_q));
    } else {
        CompensatedSum st;
        for (const Event& e : events) {
            st.add(e.w);
            if (e.n % q == a) sa.add(e.w);
            best = std::max(best, std::fabs(sa.value() - st.value() / phi_q));
        }
    }
    return best;
}

} // namespace

double psi_progression(const ArithTables& tables, u64 y, u64 q, u64 a) {
    if (q < 1 || a >= q) throw ParameterError("psi_progression: need q >= 1 and a < q");
    if (y > tables.limit)
        throw ParameterError("psi_progression: y exceeds the table limit");
    CompensatedSum acc;
    for (u64 n = (a == 0) ? q : a; n <= y; n += q) acc.add(tables.lambda_log(n));
    return acc.value();
}

DiscrepancyProfile discrepancy_profile(const ArithTables& tables, u64 N, u64 q_max,
                                       DiscrepancyMode mode, WeightKind kind,
                                       PsiComparator comparator, unsigned threads) {
    if (N < 2 || N > tables.limit)
        throw ParameterError("discrepancy_profile: N outside table range");
    if (q_max < 1 || q_max > N)
        throw ParameterError("discrepancy_profile: need 1 <= q_max <= N");

    DiscrepancyProfile prof;
    prof.N = N;
    prof.q_max = q_max;
    prof.mode = mode;
    prof.kind = kind;
    prof.comparator = comparator;

    // Twisted kinds take y < N (mu(N - n) must exist); the plain kind runs
    // to y = N.
    const u64 y_max = (kind == WeightKind::psi_plain) ? N : N - 1;
    const std::vector<Event> events = weight_events(tables, N, kind, y_max);

    std::vector<double> disc(q_max + 1, -1.0); // -1 marks skipped
    auto run_q = [&](u64 q) {
        const double phi_q = static_cast<double>(tables.phi(q));
        if (mode == DiscrepancyMode::fixed_residue) {
            if (std::gcd(N, q) > 1) return; // stays skipped
            disc[q] = residue_discrepancy(events, y_max, q, N % q, phi_q, kind, comparator);
        } else {
            double best = 0.0;
            for (u64 a = 0; a < q; ++a) {
                if (std::gcd(a == 0 ? q : a, q) != 1) continue;
                best = std::max(best, residue_discrepancy(events, y_max, q, a, phi_q, kind,
                                                          comparator));
            }
            disc[q] = best;
        }
    };

    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads <= 1 || q_max < 4) {
        for (u64 q = 1; q <= q_max; ++q) run_q(q);
    } else {
        std::vector<std::thread> pool;
        std::atomic<u64> next{1};
        for (unsigned i = 0; i < nthreads; ++i)
            pool.emplace_back([&] {
                for (;;) {
                    const u64 q = next.fetch_add(1);
                    if (q > q_max) return;
                    run_q(q);
                }
            });
        for (auto& th : pool) th.join();
    }

    CompensatedSum total;
    for (u64 q = 1; q <= q_max; ++q) {
        if (disc[q] < 0.0) {
            prof.skipped_q.push_back(q);
        } else {
            prof.per_q.emplace_back(q, disc[q]);
            total.add(disc[q]);
        }
    }
    prof.total = total.value();
    return prof;
}

double abel_identity_residual(const ArithTables& tables, u64 N, u64 q, u64 a, u64 y) {
    if (N < 3 || N > tables.limit)
        throw ParameterError("abel_identity_residual: N outside table range");
    if (q < 1 || a >= q) throw ParameterError("abel_identity_residual: need q >= 1 and a < q");
    if (y < 2 || y >= N) throw ParameterError("abel_identity_residual: need 2 <= y < N");

    // Jumps of the progression-restricted partial sum below y.
    std::vector<std::pair<u64, double>> jumps;
    for (u64 n = (a == 0) ? q : a; n <= y; n += q) {
        const double ln = tables.lambda_log(n);
        if (ln == 0.0) continue;
        const int mu = tables.mu(N - n);
        if (mu == 0) continue;
        jumps.emplace_back(n, ln * mu);
    }
    if (jumps.empty()) return 0.0;

    CompensatedSum lhs;
    for (const auto& [n, w] : jumps) lhs.add(w * std::log(static_cast<double>(N - n)));

    CompensatedSum level; // running partial sum C_j
    CompensatedSum integral;
    for (std::size_t j = 0; j < jumps.size(); ++j) {
        level.add(jumps[j].second);
        const u64 from = jumps[j].first;
        const u64 to = (j + 1 < jumps.size()) ? jumps[j + 1].first : y;
        if (to > from)
            integral.add(level.value() *
                         std::log(static_cast<double>(N - from) / static_cast<double>(N - to)));
    }
    const double rhs = level.value() * std::log(static_cast<double>(N - y)) + integral.value();
    return std::fabs(lhs.value() - rhs);
}

SquaredModuliCheck squared_moduli_check(const ArithTables& tables, u64 N, u64 q_max) {
    if (N < 2 || N > tables.limit)
        throw ParameterError("squared_moduli_check: N outside table range");
    if (q_max < 1) throw ParameterError("squared_moduli_check: q_max must be >= 1");

    const CoprimeFilter filter(tables, N);
    SquaredModuliCheck out;
    CompensatedSum main_acc, err_acc;
    for (u64 b = 1; b <= q_max; ++b) {
        if (!filter.coprime(b)) continue;
        const double phi_b2 = static_cast<double>(b * tables.phi(b)); // phi(b^2)
        const int mu = tables.mu(b);
        if (mu != 0) main_acc.add(mu / phi_b2);

        const u64 m = b * b;
        CompensatedSum psi;
        const u64 r = N % m;
        for (u64 n = (r == 0) ? m : r; n < N; n += m) psi.add(tables.lambda_log(n));
        const double err = std::fabs(psi.value() - static_cast<double>(N) / phi_b2);
        out.per_b.emplace_back(b, err);
        err_acc.add(err);
    }
    out.main_term = static_cast<double>(N) * main_acc.value();
    out.error_sum = err_acc.value();
    return out;
}

} // namespace gdlab
