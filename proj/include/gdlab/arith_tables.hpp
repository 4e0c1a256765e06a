#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gdlab/errors.hpp"

namespace gdlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct PrimePower {
    u32 p = 0;
    u32 e = 0;
};

// Factorization of a 32-bit integer: at most 9 distinct primes.
struct Factorization {
    std::array<PrimePower, 10> f{};
    int count = 0;
};

// Immutable sieved tables of mu, Lambda (log value plus exact prime-power
// witness), phi and smallest-prime-factor over [1, limit].
//
// Layout (one slot per n, index 0 unused):
//   mu               in {-1, 0, +1}
//   lambda_log       log p if n = p^e, else 0.0 (double)
//   prime_power_base p if n = p^e, else 0 (exact integer witness for Lambda)
//   phi              Euler totient
//   spf              smallest prime factor (spf[p] = p for primes; spf[1] = 0)
//
// After build_tables returns the structure is read-only and safe to share
// across threads.
struct ArithTables {
    u64 limit = 0;
    std::vector<std::int8_t> mu_v;
    std::vector<double> lambda_v;
    std::vector<u32> ppb_v;
    std::vector<u32> phi_v;
    std::vector<u32> spf_v;

    int mu(u64 n) const { return mu_v[n]; }
    double lambda_log(u64 n) const { return lambda_v[n]; }
    u64 prime_power_base(u64 n) const { return ppb_v[n]; }
    u64 phi(u64 n) const { return phi_v[n]; }
    u64 spf(u64 n) const { return spf_v[n]; }
    bool is_prime(u64 n) const { return n >= 2 && spf_v[n] == n; }
    bool is_squarefree(u64 n) const { return mu_v[n] != 0; }

    // Prime factorization read off the spf chain. Requires 1 <= n <= limit.
    Factorization factorize(u64 n) const;

    // tau_3(n) = #{(a,b,c) : abc = n} = prod (e_i+1)(e_i+2)/2.
    u64 tau3(u64 n) const;

    // Bytes held by the five arrays for a given limit.
    static u64 bytes_needed(u64 limit);
};

struct BuildOptions {
    // Entries per sieving segment; small enough to keep the working set in
    // cache during the marking pass.
    u64 segment_size = u64(1) << 20;
    // Refuse builds whose arrays would exceed this many bytes (fail fast
    // instead of thrashing).
    u64 memory_ceiling_bytes = u64(4) << 30;
    // 0 = hardware_concurrency.
    unsigned threads = 0;
};

// Builds all tables over [1, limit]. Segmented, parallel across segments;
// spf/phi marking is O(limit log log limit), the mu/Lambda/phi fill pass is a
// spf-chain walk per entry.
ArithTables build_tables(u64 limit, const BuildOptions& opts = {});

// Divisibility-by-fixed-N filter: d coprime to N iff no prime of N divides d.
// Cheaper than a gcd per candidate when N is fixed across a long scan.
class CoprimeFilter {
public:
    explicit CoprimeFilter(u64 n);
    CoprimeFilter(const ArithTables& tables, u64 n);

    bool coprime(u64 d) const {
        for (int i = 0; i < count_; ++i)
            if (d % primes_[i] == 0) return false;
        return true;
    }

private:
    std::array<u64, 16> primes_{};
    int count_ = 0;
};

} // namespace gdlab
