#include "gdlab/arith_tables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace gdlab {

u64 ArithTables::bytes_needed(u64 limit) {
    const u64 slots = limit + 1;
    return slots * (sizeof(std::int8_t) + sizeof(double) + 3 * sizeof(u32));
}

Factorization ArithTables::factorize(u64 n) const {
    if (n < 1 || n > limit)
        throw ParameterError("factorize: n=" + std::to_string(n) +
                             " outside table range [1, " + std::to_string(limit) + "]");
    Factorization out;
    u32 m = static_cast<u32>(n);
    while (m > 1) {
        const u32 p = spf_v[m];
        u32 e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        out.f[out.count].p = p;
        out.f[out.count].e = e;
        ++out.count;
    }
    return out;
}

u64 ArithTables::tau3(u64 n) const {
    const Factorization fac = factorize(n);
    u64 t = 1;
    for (int i = 0; i < fac.count; ++i) {
        const u64 e = fac.f[i].e;
        t *= (e + 1) * (e + 2) / 2;
    }
    return t;
}

namespace {

std::vector<u32> base_primes(u32 bound) {
    std::vector<u32> primes;
    if (bound < 2) return primes;
    std::vector<char> composite(bound + 1, 0);
    for (u32 i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = u64(i) * i; j <= bound; j += i) composite[j] = 1;
    }
    return primes;
}

// Phase 1 on one segment [lo, hi]: mark spf with the smallest base prime
// dividing each entry, then promote unmarked entries to primes.
void sieve_spf_segment(std::vector<u32>& spf, const std::vector<u32>& primes, u64 lo, u64 hi) {
    for (u32 p : primes) {
        const u64 p2 = u64(p) * p;
        if (p2 > hi) break;
        u64 start = std::max(p2, ((lo + p - 1) / p) * p);
        for (u64 m = start; m <= hi; m += p)
            if (spf[m] == 0) spf[m] = p;
    }
    for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n)
        if (spf[n] == 0) spf[n] = static_cast<u32>(n);
}

// Phase 2 on one segment: walk the spf chain of every n and fill mu, phi,
// lambda_log and the prime-power witness. The full spf array is complete
// before this runs, so lookups outside the segment are safe.
void fill_functions_segment(ArithTables& t, u64 lo, u64 hi) {
    for (u64 n = lo; n <= hi; ++n) {
        u32 m = static_cast<u32>(n);
        u32 phi = 1;
        int mu = 1;
        int distinct = 0;
        u32 last_p = 0;
        while (m > 1) {
            const u32 p = t.spf_v[m];
            u32 e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            u32 pe1 = 1; // p^(e-1)
            for (u32 k = 1; k < e; ++k) pe1 *= p;
            phi *= pe1 * (p - 1);
            mu = (e >= 2) ? 0 : -mu;
            ++distinct;
            last_p = p;
        }
        t.phi_v[n] = phi;
        t.mu_v[n] = static_cast<std::int8_t>(mu);
        if (distinct == 1) {
            t.ppb_v[n] = last_p;
            t.lambda_v[n] = std::log(static_cast<double>(last_p));
        } else {
            t.ppb_v[n] = 0;
            t.lambda_v[n] = 0.0;
        }
    }
}

template <typename Fn>
void parallel_segments(u64 limit, u64 segment_size, unsigned threads, Fn&& fn) {
    const u64 nseg = (limit + segment_size - 1) / segment_size; // segments over [1, limit]
    if (threads <= 1 || nseg <= 1) {
        for (u64 s = 0; s < nseg; ++s) {
            const u64 lo = s * segment_size + 1;
            const u64 hi = std::min(limit, lo + segment_size - 1);
            fn(lo, hi);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<u64> next{0};
    for (unsigned i = 0; i < threads; ++i) {
        pool.emplace_back([&] {
            for (;;) {
                const u64 s = next.fetch_add(1);
                if (s >= nseg) return;
                const u64 lo = s * segment_size + 1;
                const u64 hi = std::min(limit, lo + segment_size - 1);
                fn(lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

ArithTables build_tables(u64 limit, const BuildOptions& opts) {
    if (limit < 1)
        throw ParameterError("build_tables: limit must be >= 1");
    if (limit > 0xFFFFFFFFull)
        throw ParameterError("build_tables: limit exceeds 32-bit table format");
    if (ArithTables::bytes_needed(limit) > opts.memory_ceiling_bytes)
        throw ParameterError("build_tables: limit=" + std::to_string(limit) + " needs " +
                             std::to_string(ArithTables::bytes_needed(limit)) +
                             " bytes, over the ceiling of " +
                             std::to_string(opts.memory_ceiling_bytes));
    if (opts.segment_size < 1024)
        throw ParameterError("build_tables: segment_size too small");

    ArithTables t;
    t.limit = limit;
    t.mu_v.assign(limit + 1, 0);
    t.lambda_v.assign(limit + 1, 0.0);
    t.ppb_v.assign(limit + 1, 0);
    t.phi_v.assign(limit + 1, 0);
    t.spf_v.assign(limit + 1, 0);

    unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    const u32 root = static_cast<u32>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<u32> primes = base_primes(root);

    parallel_segments(limit, opts.segment_size, threads,
                      [&](u64 lo, u64 hi) { sieve_spf_segment(t.spf_v, primes, lo, hi); });
    parallel_segments(limit, opts.segment_size, threads,
                      [&](u64 lo, u64 hi) { fill_functions_segment(t, lo, hi); });

    t.mu_v[1] = 1;
    t.phi_v[1] = 1;
    t.lambda_v[1] = 0.0;
    t.ppb_v[1] = 0;
    t.spf_v[1] = 0;
    return t;
}

CoprimeFilter::CoprimeFilter(u64 n) {
    u64 m = n;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes_[count_++] = p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes_[count_++] = m;
}

CoprimeFilter::CoprimeFilter(const ArithTables& tables, u64 n) {
    if (n <= tables.limit) {
        const Factorization f = tables.factorize(n);
        for (int i = 0; i < f.count; ++i) primes_[count_++] = f.f[i].p;
    } else {
        *this = CoprimeFilter(n);
    }
}

} // namespace gdlab
