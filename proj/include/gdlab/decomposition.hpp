#pragma once

#include "gdlab/arith_tables.hpp"
#include "gdlab/constants.hpp"

namespace gdlab {

// Run parameters governing every truncated sum.
//
// The asymptotic choices Q = N^(1/2) (log N)^-20 and B = (log N)^(A+4) are
// useless at desk scale (Q < 1 for every feasible N, B overflows the table);
// the defaults keep their spirit instead: Q = sqrt(N) as the midpoint split,
// B capped at sqrt(table limit) so every lcm(b^2, d) stays factorable.
struct DecompParams {
    u64 N = 0;          // the Goldbach target; even expected, odd permitted
    double Q = 0.0;     // four-way-split truncation
    double alpha = 1.0; // divisor-sum truncation (alpha = N^theta by default)
    double theta = 0.5; // level of distribution used to derive alpha
    double A = 1.0;     // log-power in the error budget
    u64 B = 1;          // auxiliary cutoff for the double Moebius sum

    static DecompParams defaults(u64 N, u64 table_limit);
    void validate() const;
};

struct SplitSums {
    double r0 = 0, r1 = 0, r2 = 0, r3 = 0;
};

// Truncated von Mangoldt pieces: sum over divisors d | n with d <= alpha
// (resp. d > alpha) of mu(d) log(1/d). They partition Lambda(n).
double lambda_truncated(u64 n, double alpha, const ArithTables& tables);
double lambda_tail(u64 n, double alpha, const ArithTables& tables);

// sum_{n<N} Lambda(n) Lambda(N-n), the Lambda-weighted representation count.
double rtilde(u64 N, const ArithTables& tables);

// Four-way split of
//   sum_{n<N} (sum_{d1|n} mu(d1) log d1)(sum_{d2|N-n, (d2,N)=1} mu(d2) log d2)
// by d1 <= Q vs > Q crossed with d2 <= Q vs > Q. Built from three
// multiples-accumulation arrays (O(N log N)), not per-n divisor enumeration.
SplitSums truncated_split_sums(u64 N, double Q, const ArithTables& tables);

// S1 = sum_{n<N} Lambda(n) mu^2(N-n) Lambda_alpha(N-n)
// S2 = the same with the divisor tail Lambda(N-n) - Lambda_alpha(N-n).
double s1_sum(const DecompParams& params, const ArithTables& tables);
double s2_sum(const DecompParams& params, const ArithTables& tables);

enum class KRange { all, coprime_only };

// S2 rewritten over complementary divisors k = (N-n)/d of the tail range:
//   sum_{k < (N-1)/alpha} mu(k) sum_{n<N, n=N (mod k), (N-n)/k > alpha}
//     Lambda(n) mu(N-n) log(k/(N-n));
// an exact identity with s2_sum: the mu(N-n) factor enforces squarefree
// N-n, and the inner restriction keeps exactly the divisors d > alpha.
double s2_kform(const DecompParams& params, const ArithTables& tables,
                KRange range = KRange::all);

// The two halves of the coprime-restricted k-form:
// S3 weights by mu(k) log k, S4 by mu(k) log(N-n); S3 - S4 equals the
// coprime-restricted s2_kform.
double s3_sum(const DecompParams& params, const ArithTables& tables);
double s4_sum(const DecompParams& params, const ArithTables& tables);

// sum_{n<N} Lambda(n) mu(N-n). The target's representation count is
// asymptotically governed by how much this cancels.
double twisted_sum(u64 N, const ArithTables& tables);

// sum_{n<N} Lambda(n) mu^2(N-n); converges to N * squarefree_density(N).
double squarefree_weighted_sum(u64 N, const ArithTables& tables);

// sum_{n<N} Lambda(n) mu^2(N-n) Lambda(N-n) = S1 + S2 for every alpha.
double squarefree_weighted_lambda_product(u64 N, const ArithTables& tables);

struct DecompositionReport {
    DecompParams params;
    bool odd_target = false;

    double rtilde = 0;
    double r0 = 0, r1 = 0, r2 = 0, r3 = 0;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double twisted_sum = 0;
    double squarefree_weighted = 0;

    // (S1 + S2) - sum Lambda(n) mu^2(N-n) Lambda(N-n): zero up to float
    // accumulation.
    double sq_identity_residual = 0;
    // rtilde - S(N) (N - twisted_sum): the main-identity error term.
    double main_identity_residual = 0;

    double singular_series_used = 0;
    double squarefree_density_used = 0;
    double density_lower_bound = 0; // S(N) (1 - A(N)) N
    bool meets_lower_bound = false;
};

DecompositionReport decomposition_report(const DecompParams& params, const ArithTables& tables,
                                         u64 prime_cutoff = kDefaultPrimeCutoff);

} // namespace gdlab
