#include "gdlab/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gdlab/errors.hpp"

namespace gdlab::oracle {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

void check_budget(u64 N, const char* who) {
    if (N > kBudgetN)
        throw ParameterError(std::string(who) + ": N=" + std::to_string(N) +
                             " exceeds the oracle budget of " + std::to_string(kBudgetN));
}

} // namespace

int naive_mu(u64 n) {
    int mu = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

u64 naive_phi(u64 n) {
    u64 result = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

double naive_lambda(u64 n) {
    if (n < 2) return 0.0;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n)); // n itself prime
}

u64 naive_spf(u64 n) {
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

u64 naive_tau3(u64 n) {
    u64 count = 0;
    for (u64 a = 1; a <= n; ++a) {
        if (n % a != 0) continue;
        const u64 rest = n / a;
        for (u64 b = 1; b <= rest; ++b)
            if (rest % b == 0) ++count; // c = rest / b is forced
    }
    return count;
}

u64 naive_gcd(u64 a, u64 b) {
    while (b != 0) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

double naive_rtilde(u64 N) {
    check_budget(N, "naive_rtilde");
    double s = 0.0;
    for (u64 n = 1; n < N; ++n) s += naive_lambda(n) * naive_lambda(N - n);
    return s;
}

namespace {

// sum over divisors d | n with the given side of the Q split of mu(d) log d,
// literal d = 1..n scan.
double divisor_mu_log(u32 n, double Q, bool below, bool coprime_to, u64 N) {
    double s = 0.0;
    for (u32 d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const bool le = static_cast<double>(d) <= Q;
        if (le != below) continue;
        if (coprime_to && naive_gcd(d, N) != 1) continue;
        const int mu = naive_mu(d);
        if (mu == 0) continue;
        s += mu * std::log(static_cast<double>(d));
    }
    return s;
}

} // namespace

NaiveSplitSums naive_split_sums(u64 N, double Q) {
    check_budget(N, "naive_split_sums");
    NaiveSplitSums out;
    for (u64 n = 1; n < N; ++n) {
        const u32 a = static_cast<u32>(n);
        const u32 b = static_cast<u32>(N - n);
        const double a_le = divisor_mu_log(a, Q, true, false, N);
        const double a_gt = divisor_mu_log(a, Q, false, false, N);
        const double b_le = divisor_mu_log(b, Q, true, true, N);
        const double b_gt = divisor_mu_log(b, Q, false, true, N);
        out.r0 += a_le * b_le;
        out.r1 += a_le * b_gt;
        out.r2 += a_gt * b_le;
        out.r3 += a_gt * b_gt;
    }
    return out;
}

double naive_restricted_double_sum(u64 N) {
    check_budget(N, "naive_restricted_double_sum");
    double s = 0.0;
    for (u64 n = 1; n < N; ++n) {
        double a_full = 0.0, b_full = 0.0;
        const u32 a = static_cast<u32>(n);
        const u32 b = static_cast<u32>(N - n);
        for (u32 d = 1; d <= a; ++d) {
            if (a % d != 0) continue;
            const int mu = naive_mu(d);
            if (mu != 0) a_full += mu * std::log(static_cast<double>(d));
        }
        for (u32 d = 1; d <= b; ++d) {
            if (b % d != 0) continue;
            if (naive_gcd(d, N) != 1) continue;
            const int mu = naive_mu(d);
            if (mu != 0) b_full += mu * std::log(static_cast<double>(d));
        }
        s += a_full * b_full;
    }
    return s;
}

NaiveSSums naive_s_sums(u64 N, double alpha) {
    check_budget(N, "naive_s_sums");
    NaiveSSums out;

    // S1 and S2: divisor sums of mu(d) log(1/d) below and above alpha,
    // weighted by Lambda(n) mu^2(N-n).
    for (u64 n = 1; n < N; ++n) {
        const double ln = naive_lambda(n);
        if (ln == 0.0) continue;
        const u32 m = static_cast<u32>(N - n);
        const int mum = naive_mu(m);
        if (mum == 0) continue; // mu^2 = 0
        double below = 0.0, above = 0.0;
        for (u32 d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            const int mud = naive_mu(d);
            if (mud == 0) continue;
            const double term = -mud * std::log(static_cast<double>(d)); // log(1/d)
            if (static_cast<double>(d) <= alpha)
                below += term;
            else
                above += term;
        }
        out.s1 += ln * below;
        out.s2 += ln * above;
    }

    // S3 and S4: the k-form with (k, N) = 1, each k paired with the
    // complementary divisor (N - n)/k of the tail range d > alpha.
    const double k_limit = static_cast<double>(N - 1) / alpha;
    for (u64 k = 1; static_cast<double>(k) < k_limit; ++k) {
        if (naive_gcd(k, N) != 1) continue;
        const int muk = naive_mu(k);
        if (muk == 0) continue;
        double inner_plain = 0.0, inner_log = 0.0;
        for (u64 n = N % k == 0 ? k : N % k; n < N; n += k) {
            if (static_cast<double>((N - n) / k) <= alpha) continue;
            const double ln = naive_lambda(n);
            if (ln == 0.0) continue;
            const int mum = naive_mu(N - n);
            if (mum == 0) continue;
            inner_plain += ln * mum;
            inner_log += ln * mum * std::log(static_cast<double>(N - n));
        }
        out.s3 += muk * std::log(static_cast<double>(k)) * inner_plain;
        out.s4 += muk * inner_log;
    }
    return out;
}

double naive_discrepancy(u64 N, u64 q, u64 a, NaiveKind kind) {
    check_budget(N, "naive_discrepancy");
    if (q < 1 || a >= q) throw ParameterError("naive_discrepancy: need 1 <= q and a < q");

    const u64 Ny = (kind == NaiveKind::psi_plain) ? N : N - 1;
    std::vector<double> w(Ny + 1, 0.0);
    for (u64 n = 1; n <= Ny; ++n) {
        double v = naive_lambda(n);
        if (v == 0.0) continue;
        if (kind != NaiveKind::psi_plain) {
            v *= naive_mu(N - n);
            if (kind == NaiveKind::mu_twisted_log) v *= std::log(static_cast<double>(N - n));
        }
        w[n] = v;
    }

    const double phiq = static_cast<double>(naive_phi(q));
    double best = 0.0;
    for (u64 y = 1; y <= Ny; ++y) {
        double sa = 0.0, st = 0.0;
        u64 r = 1 % q;
        for (u64 n = 1; n <= y; ++n) {
            st += w[n];
            if (r == a) sa += w[n];
            if (++r == q) r = 0;
        }
        const double comp =
            (kind == NaiveKind::psi_plain) ? static_cast<double>(y) / phiq : st / phiq;
        const double d = std::fabs(sa - comp);
        if (d > best) best = d;
    }
    return best;
}

} // namespace gdlab::oracle
