#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gdlab/arith_tables.hpp"
#include "gdlab/constants.hpp"
#include "gdlab/oracle.hpp"

using namespace gdlab;

namespace {

const ArithTables& t1e6() {
    static ArithTables t = build_tables(1'000'000);
    return t;
}

} // namespace

TEST_SUITE_BEGIN("constants");

TEST_CASE("singular series vanishes exactly on odd targets") {
    for (u64 N : {3ull, 7ull, 9ull, 999'999ull}) {
        const SeriesEstimate s = singular_series(N, 1000);
        CHECK(s.value == 0.0);
        CHECK(s.tail_bound == 0.0);
    }
}

TEST_CASE("singular series of the smallest even targets") {
    const SeriesEstimate s2 = singular_series(2, kDefaultPrimeCutoff);
    // Twice the twin-prime product over odd primes.
    CHECK(s2.value == doctest::Approx(1.3203236316).epsilon(1e-7));
    CHECK(s2.tail_bound < 1e-6);
    CHECK(s2.tail_kind == TailKind::rigorous);

    const SeriesEstimate s10 = singular_series(10, kDefaultPrimeCutoff);
    CHECK(s10.value == doctest::Approx(s2.value * 4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("singular series dominates the N=2 value on even targets") {
    for (u64 N = 4; N <= 4000; N += 2)
        REQUIRE(singular_series(N, 10'000).value >= singular_series(2, 10'000).value);
}

TEST_CASE("singular series stays well below log N over a sampled range") {
    for (u64 N : {30ull, 9240ull, 510'510ull, 4'849'845ull * 2, 9'999'998ull}) {
        const double ratio = singular_series(N).value / std::log(static_cast<double>(N));
        CHECK(ratio > 0.0);
        CHECK(ratio < 4.0);
    }
}

TEST_CASE("squarefree density constant") {
    const SeriesEstimate a2 = squarefree_density(2, kDefaultPrimeCutoff);
    CHECK(a2.value == doctest::Approx(0.7479116272).epsilon(1e-7));
    const SeriesEstimate a6 = squarefree_density(6, kDefaultPrimeCutoff);
    CHECK(a6.value == doctest::Approx(a2.value * 6.0 / 5.0).epsilon(1e-12));
    for (u64 N : {2ull, 4ull, 6ull, 30ull, 962ull, 360'360ull}) {
        const double v = squarefree_density(N).value;
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("euler product tail bounds shrink with the cutoff") {
    double prev_tail_s = 1e9, prev_tail_a = 1e9;
    for (u64 cutoff : {100ull, 10'000ull, 1'000'000ull}) {
        const double ts = singular_series(2, cutoff).tail_bound;
        const double ta = squarefree_density(2, cutoff).tail_bound;
        CHECK(ts < prev_tail_s);
        CHECK(ta < prev_tail_a);
        prev_tail_s = ts;
        prev_tail_a = ta;
    }
}

TEST_CASE("series weight values") {
    CHECK(mobius_series_weight(10, 1) == 1.0);
    CHECK(mobius_series_weight(10, 5) == 1.0);
    CHECK(mobius_series_weight(10, 3) == doctest::Approx(4.0 / 5.0).epsilon(1e-15));
    CHECK(mobius_series_weight(10, 21) ==
          doctest::Approx((4.0 / 5.0) * (36.0 / 41.0)).epsilon(1e-15));
    CHECK_THROWS_AS(mobius_series_weight(10, 12), ParameterError);
}

TEST_CASE("series weight is multiplicative on coprime squarefree parts") {
    for (u64 d1 : {2ull, 3ull, 7ull, 15ull, 77ull})
        for (u64 d2 : {11ull, 13ull, 19ull, 23ull}) {
            if (std::gcd(d1, d2) != 1) continue;
            for (u64 N : {2ull, 10ull, 30ull}) {
                const double lhs = mobius_series_weight(N, d1 * d2);
                const double rhs = mobius_series_weight(N, d1) * mobius_series_weight(N, d2);
                REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-13));
            }
        }
}

TEST_CASE("gy sums at tiny truncation") {
    const ArithTables& t = t1e6();
    CHECK(gy_sum_log(2, 1.0, t) == 0.0);
    CHECK(gy_sum_plain(2, 1.0, t) == 1.0);

    const double expected = std::log(10.0) - 0.5 * std::log(10.0 / 3.0) -
                            0.25 * std::log(2.0) - std::log(10.0 / 7.0) / 6.0;
    CHECK(gy_sum_log(2, 10.0, t) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(gy_sum_plain(2, 10.0, t) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("gy sums converge toward the singular series") {
    const ArithTables& t = t1e6();
    const double target = singular_series(2).value;
    const double err_small = std::fabs(gy_sum_log(2, 100.0, t) - target);
    const double err_large = std::fabs(gy_sum_log(2, 100'000.0, t) - target);
    CHECK(err_large < err_small);
    CHECK(err_large < 0.05);
    CHECK(std::fabs(gy_sum_plain(2, 100'000.0, t)) < std::fabs(gy_sum_plain(2, 100.0, t)));
}

TEST_CASE("gy sums reject out-of-range truncations") {
    const ArithTables& t = t1e6();
    CHECK_THROWS_AS(gy_sum_log(2, 2e6, t), ParameterError);
    CHECK_THROWS_AS(gy_sum_log(2, 0.5, t), ParameterError);
}

TEST_CASE("weighted moebius log series") {
    const ArithTables& t = t1e6();
    CHECK(weighted_mobius_log_sum(2, 1.0, t) == 0.0);
    const double expected = squarefree_density(2).value * 0.4 * std::log(3.0);
    CHECK(weighted_mobius_log_sum(2, 3.0, t) == doctest::Approx(expected).epsilon(1e-13));

    const double target = singular_series(2).value;
    const double err_small = std::fabs(weighted_mobius_log_sum(2, 100.0, t) - target);
    const double err_large = std::fabs(weighted_mobius_log_sum(2, 100'000.0, t) - target);
    CHECK(err_large < err_small);
    CHECK(err_large < 0.15);
}

TEST_CASE("phi of lcm(b^2, d)") {
    const ArithTables& t = t1e6();
    CHECK(phi_lcm_square(1, 1, t) == 1);
    CHECK(phi_lcm_square(2, 6, t) == 4);  // phi(12)
    CHECK(phi_lcm_square(3, 2, t) == 6);  // phi(18)
    CHECK_THROWS_AS(phi_lcm_square(4, 3, t), ParameterError);
    CHECK_THROWS_AS(phi_lcm_square(3, 9, t), ParameterError);
}

TEST_CASE("phi of lcm(b^2, d) matches direct evaluation exhaustively") {
    const ArithTables& t = t1e6();
    for (u64 b = 1; b <= 200; ++b) {
        if (oracle::naive_mu(b) == 0) continue;
        for (u64 d = 1; d <= 200; ++d) {
            if (oracle::naive_mu(d) == 0) continue;
            const u64 g = oracle::naive_gcd(b * b, d);
            const u64 lcm = b * b / g * d;
            REQUIRE(phi_lcm_square(b, d, t) == oracle::naive_phi(lcm));
        }
    }
}

TEST_CASE("double moebius sum reduces to the single series at B = 1") {
    const ArithTables& t = t1e6();
    const u64 N = 1000;
    const double via_double = mobius_double_sum(N, 0.5, 1, t);
    double direct = 0.0;
    const double d_max = std::pow(static_cast<double>(N), 0.5);
    for (u64 d = 1; static_cast<double>(d) <= d_max; ++d) {
        if (t.mu(d) == 0 || std::gcd(d, N) != 1) continue;
        direct += t.mu(d) * -std::log(static_cast<double>(d)) / static_cast<double>(t.phi(d));
    }
    CHECK(via_double == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("double moebius sum equals a brute-force double loop") {
    const ArithTables& t = t1e6();
    const u64 N = 10;
    const u64 B = 2;
    double brute = 0.0;
    const double d_max = std::pow(10.0, 0.5);
    for (u64 d = 1; static_cast<double>(d) <= d_max; ++d) {
        const int mud = oracle::naive_mu(d);
        if (mud == 0) continue;
        for (u64 b = 1; b <= B; ++b) {
            const int mub = oracle::naive_mu(b);
            if (mub == 0) continue;
            if (oracle::naive_gcd(b * d, N) != 1) continue;
            const u64 g = oracle::naive_gcd(b * b, d);
            const u64 lcm = b * b / g * d;
            brute += mud * -std::log(static_cast<double>(d)) * mub /
                     static_cast<double>(oracle::naive_phi(lcm));
        }
    }
    CHECK(mobius_double_sum(N, 0.5, B, t) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("double moebius sum approaches the singular series") {
    const ArithTables& t = t1e6();
    const u64 N = 1'000'000;
    const double v = mobius_double_sum(N, 0.5, 100, t);
    CHECK(std::fabs(v - singular_series(N).value) < 0.1);
}

TEST_CASE("density series partial sums") {
    const ArithTables& t = t1e6();
    CHECK(density_series_partial(2, 1, t).value == 1.0);
    CHECK(density_series_partial(2, 5, t).value == doctest::Approx(47.0 / 60.0).epsilon(1e-15));
    const SeriesEstimate full = density_series_partial(2, 1'000'000, t);
    CHECK(full.tail_kind == TailKind::heuristic);
    CHECK(std::fabs(full.value - squarefree_density(2).value) < 1e-4);
}

TEST_CASE("least non-dividing odd prime") {
    const ArithTables& t = t1e6();
    CHECK(least_nondividing_odd_prime(2, t) == 3);
    CHECK(least_nondividing_odd_prime(15, t) == 7);
    CHECK(least_nondividing_odd_prime(210, t) == 11);
    CHECK(least_nondividing_odd_prime(4, t) == 3);
}

TEST_CASE("density gap beats the least non-dividing prime bound") {
    const ArithTables& t = t1e6();
    for (u64 N : {2ull, 4ull, 30ull, 210ull, 9240ull, 510'510ull, 999'998ull}) {
        const u64 p0 = least_nondividing_odd_prime(N, t);
        const double gap = 1.0 - squarefree_density(N).value;
        REQUIRE(gap >= 1.0 / static_cast<double>(p0 * (p0 - 1)));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(singular_series(1, 1000), ParameterError);
    CHECK_THROWS_AS(singular_series(10, 2), ParameterError);
    const ArithTables& t = t1e6();
    CHECK_THROWS_AS(mobius_double_sum(1'000'000'000'000ull, 0.9, 10, t), ParameterError);
    CHECK_THROWS_AS(density_series_partial(2, 2'000'000, t), ParameterError);
}

TEST_SUITE_END();
