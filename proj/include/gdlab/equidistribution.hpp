#pragma once

#include <utility>
#include <vector>

#include "gdlab/arith_tables.hpp"

namespace gdlab {

enum class DiscrepancyMode { fixed_residue, max_over_all };

// Weight whose equidistribution in progressions is being measured:
//   psi_plain      Lambda(n)
//   mu_twisted     Lambda(n) mu(N - n)
//   mu_twisted_log Lambda(n) mu(N - n) log(N - n)
enum class WeightKind { psi_plain, mu_twisted, mu_twisted_log };

// Comparator for the psi_plain kind. The conjectured statement subtracts
// y/phi(q) literally; comparing against psi(y)/phi(q) instead is a modeling
// choice worth having at desk scale. Twisted kinds always compare against
// the scaled full partial sum.
enum class PsiComparator { linear_y, scaled_psi };

struct DiscrepancyProfile {
    u64 N = 0;
    u64 q_max = 0;
    DiscrepancyMode mode = DiscrepancyMode::fixed_residue;
    WeightKind kind = WeightKind::psi_plain;
    PsiComparator comparator = PsiComparator::linear_y;
    // (q, max_y |progression sum - comparator|), ascending q.
    std::vector<std::pair<u64, double>> per_q;
    // fixed_residue mode: moduli with gcd(q, N) > 1, where the residue
    // N mod q is not coprime and the conjectures say nothing.
    std::vector<u64> skipped_q;
    double total = 0.0;
};

// sum_{n<=y, n=a (mod q)} Lambda(n).
double psi_progression(const ArithTables& tables, u64 y, u64 q, u64 a);

// Per-modulus discrepancy profile over q <= q_max. One pass over the weight
// support per (q, residue); the max over y is exact over integer y (the
// sums are step functions, so integer y suffice).
DiscrepancyProfile discrepancy_profile(const ArithTables& tables, u64 N, u64 q_max,
                                       DiscrepancyMode mode, WeightKind kind,
                                       PsiComparator comparator = PsiComparator::linear_y,
                                       unsigned threads = 0);

// Partial-summation identity for the step function
// t -> sum_{n<=t, n=a (q)} Lambda(n) mu(N-n): evaluates
//   LHS = sum_{n<=y} w(n) log(N-n)
//   RHS = (sum_{n<=y} w(n)) log(N-y) + int_2^y (sum_{n<=t} w(n))/(N-t) dt
// with the integral taken exactly piecewise, and returns |LHS - RHS|.
double abel_identity_residual(const ArithTables& tables, u64 N, u64 q, u64 a, u64 y);

// Equidistribution of Lambda over the squared moduli b^2, b <= q_max,
// (b, N) = 1: the scaled main term N sum mu(b)/phi(b^2) next to the summed
// absolute errors |psi(N; b^2, N mod b^2) - N/phi(b^2)|.
struct SquaredModuliCheck {
    double main_term = 0.0;
    double error_sum = 0.0;
    std::vector<std::pair<u64, double>> per_b; // (b, |error|)
};

SquaredModuliCheck squared_moduli_check(const ArithTables& tables, u64 N, u64 q_max);

} // namespace gdlab
