#pragma once

#include "gdlab/arith_tables.hpp"

namespace gdlab {

// Default Euler-product prime cutoff. Tail < 2e-7 on the log scale, far
// below the statistical noise of the decomposition sums.
inline constexpr u64 kDefaultPrimeCutoff = 10'000'000;

enum class TailKind { rigorous, heuristic };

// A truncated series or product value together with the truncation point
// and an estimate of the omitted tail.
struct SeriesEstimate {
    double value = 0.0;
    u64 truncation = 0;
    double tail_bound = 0.0;
    TailKind tail_kind = TailKind::rigorous;
};

// Singular series of the even target N:
//   2 prod_{p>2} (1 - 1/(p-1)^2) * prod_{p|N, p>2} (1 + 1/(p-2)),
// truncated at prime_cutoff; exactly 0 for odd N. The tail bound converts
// sum_{p>cutoff} 1/(p-1)^2 <= 2/cutoff into a bound on the product.
SeriesEstimate singular_series(u64 N, u64 prime_cutoff = kDefaultPrimeCutoff);

// The limiting density constant prod_{p∤N, p>2} (1 - 1/(p(p-1))), i.e. the
// density of n < N with N - n squarefree under the Lambda weight.
SeriesEstimate squarefree_density(u64 N, u64 prime_cutoff = kDefaultPrimeCutoff);

// Multiplicative weight prod_{p|d, p∤N} (p-1)^2 / (p(p-1) - 1) appearing in
// the log-weighted Moebius series below. d must be squarefree.
double mobius_series_weight(u64 N, u64 d);

// sum_{d<=R, (d,N)=1} mu(d)/phi(d) * log(R/d); converges to the singular
// series as R grows.
double gy_sum_log(u64 N, double R, const ArithTables& tables);

// sum_{d<=R, (d,N)=1} mu(d)/phi(d); decays toward 0 as R grows.
double gy_sum_plain(u64 N, double R, const ArithTables& tables);

// squarefree_density(N) * sum_{d<=R, (d,N)=1} mu(d) log(1/d) g(d) / phi(d),
// with g = mobius_series_weight; a second route to the singular series.
double weighted_mobius_log_sum(u64 N, double R, const ArithTables& tables,
                               u64 prime_cutoff = kDefaultPrimeCutoff);

// Double sum over d <= N^theta and b <= B with (bd, N) = 1 of
// mu(d) log(1/d) mu(b) / phi(lcm(b^2, d)); a third route to the singular
// series, this one through the squared-modulus totients.
double mobius_double_sum(u64 N, double theta, u64 B, const ArithTables& tables);

// phi(lcm(b^2, d)) for squarefree b, d, via the identity
// phi(lcm(b^2, d)) = b phi(b) phi(d) / phi(gcd(b, d)).
u64 phi_lcm_square(u64 b, u64 d, const ArithTables& tables);

// Partial sum of sum_{(d,N)=1} mu(d)/phi(d^2), whose limit is
// squarefree_density(N). The tail bound is heuristic (flagged).
SeriesEstimate density_series_partial(u64 N, u64 cutoff, const ArithTables& tables);

// Smallest odd prime not dividing N.
u64 least_nondividing_odd_prime(u64 N, const ArithTables& tables);

} // namespace gdlab
