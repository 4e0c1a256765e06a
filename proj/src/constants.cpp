#include "gdlab/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "gdlab/summation.hpp"

namespace gdlab {

namespace {

struct OddPrimeProducts {
    double twin = 1.0;    // prod_{2<p<=cutoff} (1 - 1/(p-1)^2)
    double density = 1.0; // prod_{2<p<=cutoff} (1 - 1/(p(p-1)))
};

// Both base products over one odd-only sieve pass; memoized per cutoff.
// Per-N corrections are applied on top by the callers.
const OddPrimeProducts& odd_prime_products(u64 cutoff) {
    static std::mutex mtx;
    static std::map<u64, OddPrimeProducts> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(cutoff);
    if (it != cache.end()) return it->second;

    OddPrimeProducts out;
    if (cutoff >= 3) {
        // composite[i] marks the odd number 2i+3.
        const u64 half = (cutoff - 1) / 2;
        std::vector<char> composite(half, 0);
        for (u64 i = 0;; ++i) {
            const u64 p = 2 * i + 3;
            if (p * p > cutoff) break;
            if (composite[i]) continue;
            for (u64 m = (p * p - 3) / 2; m < half; m += p) composite[m] = 1;
        }
        for (u64 i = 0; i < half; ++i) {
            if (composite[i]) continue;
            const double p = static_cast<double>(2 * i + 3);
            out.twin *= (p * (p - 2.0)) / ((p - 1.0) * (p - 1.0));
            out.density *= 1.0 - 1.0 / (p * (p - 1.0));
        }
    }
    return cache.emplace(cutoff, out).first->second;
}

// Distinct odd prime factors by trial division; works for any u64 N without
// needing tables.
std::vector<u64> odd_prime_factors(u64 N) {
    std::vector<u64> ps;
    u64 m = N;
    while (m % 2 == 0) m /= 2;
    for (u64 p = 3; p * p <= m; p += 2) {
        if (m % p == 0) {
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

// |log(true/truncated)| <= 2 * sum_{p>cutoff} x_p <= 4/cutoff for both
// products (x_p <= 2/cutoff summed, |log(1-x)| <= 2x for x <= 1/2).
double product_tail_bound(double value, u64 cutoff) {
    return std::fabs(value) * std::expm1(4.0 / static_cast<double>(cutoff));
}

void check_series_args(u64 N, u64 prime_cutoff) {
    if (N < 2) throw ParameterError("series constant: N must be >= 2");
    if (prime_cutoff < 3) throw ParameterError("series constant: prime_cutoff must be >= 3");
}

} // namespace

SeriesEstimate singular_series(u64 N, u64 prime_cutoff) {
    check_series_args(N, prime_cutoff);
    if (N % 2 != 0) return {0.0, prime_cutoff, 0.0, TailKind::rigorous};

    double value = 2.0 * odd_prime_products(prime_cutoff).twin;
    for (u64 p : odd_prime_factors(N)) value *= (p - 1.0) / (p - 2.0); // 1 + 1/(p-2)
    return {value, prime_cutoff, product_tail_bound(value, prime_cutoff), TailKind::rigorous};
}

SeriesEstimate squarefree_density(u64 N, u64 prime_cutoff) {
    check_series_args(N, prime_cutoff);
    double value = odd_prime_products(prime_cutoff).density;
    for (u64 p : odd_prime_factors(N)) {
        if (p <= prime_cutoff) value /= 1.0 - 1.0 / (static_cast<double>(p) * (p - 1.0));
    }
    return {value, prime_cutoff, product_tail_bound(value, prime_cutoff), TailKind::rigorous};
}

double mobius_series_weight(u64 N, u64 d) {
    if (d < 1) throw ParameterError("mobius_series_weight: d must be >= 1");
    double w = 1.0;
    u64 m = d;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0)
                throw ParameterError("mobius_series_weight: d=" + std::to_string(d) +
                                     " is not squarefree");
            if (N % p != 0) {
                const double pd = static_cast<double>(p);
                w *= (pd - 1.0) * (pd - 1.0) / (pd * (pd - 1.0) - 1.0);
            }
        }
    }
    if (m > 1 && N % m != 0) {
        const double pd = static_cast<double>(m);
        w *= (pd - 1.0) * (pd - 1.0) / (pd * (pd - 1.0) - 1.0);
    }
    return w;
}

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

void check_truncation(double R, const ArithTables& tables, const char* who) {
    if (R < 1.0) throw ParameterError(std::string(who) + ": R must be >= 1");
    if (R > static_cast<double>(tables.limit))
        throw ParameterError(std::string(who) + ": R exceeds the table limit " +
                             std::to_string(tables.limit));
}

} // namespace

double gy_sum_log(u64 N, double R, const ArithTables& tables) {
    check_truncation(R, tables, "gy_sum_log");
    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 d = 1; static_cast<double>(d) <= R; ++d) {
        const int mu = tables.mu(d);
        if (mu == 0 || !filter.coprime(d)) continue;
        acc.add(mu * std::log(R / static_cast<double>(d)) / static_cast<double>(tables.phi(d)));
    }
    return acc.value();
}

double gy_sum_plain(u64 N, double R, const ArithTables& tables) {
    check_truncation(R, tables, "gy_sum_plain");
    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 d = 1; static_cast<double>(d) <= R; ++d) {
        const int mu = tables.mu(d);
        if (mu == 0 || !filter.coprime(d)) continue;
        acc.add(static_cast<double>(mu) / static_cast<double>(tables.phi(d)));
    }
    return acc.value();
}

double weighted_mobius_log_sum(u64 N, double R, const ArithTables& tables, u64 prime_cutoff) {
    check_truncation(R, tables, "weighted_mobius_log_sum");
    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 d = 1; static_cast<double>(d) <= R; ++d) {
        const int mu = tables.mu(d);
        if (mu == 0 || !filter.coprime(d)) continue;
        // g(d) for squarefree d coprime to N: every prime of d contributes.
        const Factorization fac = tables.factorize(d);
        double g = 1.0;
        for (int i = 0; i < fac.count; ++i) {
            const double p = static_cast<double>(fac.f[i].p);
            g *= (p - 1.0) * (p - 1.0) / (p * (p - 1.0) - 1.0);
        }
        acc.add(mu * -std::log(static_cast<double>(d)) * g / static_cast<double>(tables.phi(d)));
    }
    return squarefree_density(N, prime_cutoff).value * acc.value();
}

u64 phi_lcm_square(u64 b, u64 d, const ArithTables& tables) {
    if (b < 1 || d < 1 || b > tables.limit || d > tables.limit)
        throw ParameterError("phi_lcm_square: arguments outside table range");
    if (tables.mu(b) == 0)
        throw ParameterError("phi_lcm_square: b=" + std::to_string(b) + " is not squarefree");
    if (tables.mu(d) == 0)
        throw ParameterError("phi_lcm_square: d=" + std::to_string(d) + " is not squarefree");
    const u64 g = std::gcd(b, d);
    // For squarefree d = g * (d/g) with the parts coprime, phi(g) | phi(d).
    const u64 quotient = tables.phi(d) / tables.phi(g);
    const unsigned __int128 r =
        static_cast<unsigned __int128>(b) * tables.phi(b) * quotient;
    if (r > static_cast<unsigned __int128>(~u64(0)))
        throw ParameterError("phi_lcm_square: phi(lcm(b^2, d)) overflows 64 bits");
    return static_cast<u64>(r);
}

double mobius_double_sum(u64 N, double theta, u64 B, const ArithTables& tables) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ParameterError("mobius_double_sum: theta must lie in (0, 1)");
    if (B < 1) throw ParameterError("mobius_double_sum: B must be >= 1");
    if (B > tables.limit)
        throw ParameterError("mobius_double_sum: B exceeds the table limit");
    const double d_max = std::pow(static_cast<double>(N), theta);
    if (d_max > static_cast<double>(tables.limit))
        throw ParameterError("mobius_double_sum: N^theta exceeds the table limit");

    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 d = 1; static_cast<double>(d) <= d_max; ++d) {
        const int mud = tables.mu(d);
        if (mud == 0 || !filter.coprime(d)) continue;
        const double outer = mud * -std::log(static_cast<double>(d));
        if (outer == 0.0) continue; // d = 1
        for (u64 b = 1; b <= B; ++b) {
            const int mub = tables.mu(b);
            if (mub == 0 || !filter.coprime(b)) continue;
            const double philcm = static_cast<double>(phi_lcm_square(b, d, tables));
            acc.add(outer * mub / philcm);
        }
    }
    return acc.value();
}

SeriesEstimate density_series_partial(u64 N, u64 cutoff, const ArithTables& tables) {
    if (cutoff < 1) throw ParameterError("density_series_partial: cutoff must be >= 1");
    if (cutoff > tables.limit)
        throw ParameterError("density_series_partial: cutoff exceeds the table limit");
    const CoprimeFilter filter(tables, N);
    CompensatedSum acc;
    for (u64 d = 1; d <= cutoff; ++d) {
        const int mu = tables.mu(d);
        if (mu == 0 || !filter.coprime(d)) continue;
        // phi(d^2) = d phi(d)
        acc.add(static_cast<double>(mu) / static_cast<double>(d * tables.phi(d)));
    }
    // Heuristic: sum_{d>cutoff} log log d / d^2 ~ 2 log log(cutoff) / cutoff.
    const double cd = static_cast<double>(cutoff < 3 ? 3 : cutoff);
    const double tail = 2.0 * std::max(1.0, std::log(std::log(cd))) / static_cast<double>(cutoff);
    return {acc.value(), cutoff, tail, TailKind::heuristic};
}

u64 least_nondividing_odd_prime(u64 N, const ArithTables& tables) {
    if (N < 2) throw ParameterError("least_nondividing_odd_prime: N must be >= 2");
    for (u64 p = 3;; p += 2) {
        const bool prime = (p <= tables.limit) ? tables.is_prime(p) : trial_prime(p);
        if (prime && N % p != 0) return p;
    }
}

} // namespace gdlab
