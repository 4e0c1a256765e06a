#pragma once

#include <cstdint>

namespace gdlab::oracle {

// Slow, transparent reference implementations: trial division and literal
// nested loops, sharing no code with the fast paths. Ground truth for the
// property tests. The heavy sums refuse N above the documented budget so a
// typo cannot trigger an accidental O(N^2 tau) run.

inline constexpr std::uint64_t kBudgetN = 10'000;

int naive_mu(std::uint64_t n);
std::uint64_t naive_phi(std::uint64_t n);
double naive_lambda(std::uint64_t n);
std::uint64_t naive_spf(std::uint64_t n);
std::uint64_t naive_tau3(std::uint64_t n);
std::uint64_t naive_gcd(std::uint64_t a, std::uint64_t b);

double naive_rtilde(std::uint64_t N);

struct NaiveSplitSums {
    double r0 = 0, r1 = 0, r2 = 0, r3 = 0;
};
NaiveSplitSums naive_split_sums(std::uint64_t N, double Q);

// The unsplit double sum the four pieces partition.
double naive_restricted_double_sum(std::uint64_t N);

struct NaiveSSums {
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
};
NaiveSSums naive_s_sums(std::uint64_t N, double alpha);

enum class NaiveKind { psi_plain, mu_twisted, mu_twisted_log };

// max over integer y of the discrepancy of the chosen weight in the
// progression n = a (mod q), evaluated per y.
double naive_discrepancy(std::uint64_t N, std::uint64_t q, std::uint64_t a, NaiveKind kind);

} // namespace gdlab::oracle
