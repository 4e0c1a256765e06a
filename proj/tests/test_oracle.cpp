#include <cmath>

#include "doctest.h"
#include "gdlab/decomposition.hpp"
#include "gdlab/oracle.hpp"

using namespace gdlab;
namespace orc = gdlab::oracle;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("pointwise definitions") {
    CHECK(orc::naive_mu(1) == 1);
    CHECK(orc::naive_phi(1) == 1);
    CHECK(orc::naive_lambda(1) == 0.0);
    CHECK(orc::naive_lambda(27) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(orc::naive_mu(105) == -1);
    CHECK(orc::naive_mu(98) == 0);
    CHECK(orc::naive_phi(36) == 12);
    CHECK(orc::naive_spf(91) == 7);
    CHECK(orc::naive_tau3(12) == 18);
    CHECK(orc::naive_gcd(840, 611) == 1);
    CHECK(orc::naive_gcd(840, 612) == 12);
}

TEST_CASE("small closed forms") {
    CHECK(orc::naive_rtilde(4) == doctest::Approx(std::log(2.0) * std::log(2.0)));
    const orc::NaiveSplitSums s = orc::naive_split_sums(60, 60.0);
    CHECK(s.r1 == 0.0);
    CHECK(s.r2 == 0.0);
    CHECK(s.r3 == 0.0);
    CHECK(s.r0 == doctest::Approx(orc::naive_restricted_double_sum(60)).epsilon(1e-12));
    CHECK(orc::naive_s_sums(20, 1.0).s1 == 0.0);
}

TEST_CASE("budget guard refuses runaway targets") {
    CHECK_THROWS_AS(orc::naive_rtilde(20'000), ParameterError);
    CHECK_THROWS_AS(orc::naive_split_sums(10'001, 3.0), ParameterError);
    CHECK_THROWS_AS(orc::naive_discrepancy(200'000, 3, 1, orc::NaiveKind::psi_plain),
                    ParameterError);
}

TEST_CASE("oracle and fast paths agree on a small exhaustive range") {
    static ArithTables t = build_tables(2000);
    for (u64 N = 4; N <= 320; ++N) {
        const double tol = 1e-8 * static_cast<double>(N);
        REQUIRE(std::fabs(rtilde(N, t) - orc::naive_rtilde(N)) < tol);

        const double Q = std::sqrt(static_cast<double>(N));
        const orc::NaiveSplitSums os = orc::naive_split_sums(N, Q);
        const SplitSums fs = truncated_split_sums(N, Q, t);
        REQUIRE(std::fabs(fs.r0 - os.r0) < tol);
        REQUIRE(std::fabs(fs.r1 - os.r1) < tol);
        REQUIRE(std::fabs(fs.r2 - os.r2) < tol);
        REQUIRE(std::fabs(fs.r3 - os.r3) < tol);

        DecompParams p = DecompParams::defaults(N, t.limit);
        const orc::NaiveSSums oss = orc::naive_s_sums(N, p.alpha);
        REQUIRE(std::fabs(s1_sum(p, t) - oss.s1) < tol);
        REQUIRE(std::fabs(s2_sum(p, t) - oss.s2) < tol);
        REQUIRE(std::fabs(s3_sum(p, t) - oss.s3) < tol);
        REQUIRE(std::fabs(s4_sum(p, t) - oss.s4) < tol);
    }
}

TEST_SUITE_END();
