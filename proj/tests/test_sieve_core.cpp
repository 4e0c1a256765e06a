#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "gdlab/arith_tables.hpp"
#include "gdlab/cache.hpp"
#include "gdlab/oracle.hpp"

using namespace gdlab;

namespace {

// One shared mid-size table for the whole suite.
const ArithTables& t1e6() {
    static ArithTables t = build_tables(1'000'000);
    return t;
}

} // namespace

TEST_SUITE_BEGIN("sieve_core");

TEST_CASE("definitions at n = 1") {
    ArithTables t = build_tables(1);
    CHECK(t.mu(1) == 1);
    CHECK(t.lambda_log(1) == 0.0);
    CHECK(t.phi(1) == 1);
    CHECK(t.prime_power_base(1) == 0);
}

TEST_CASE("small values") {
    const ArithTables& t = t1e6();
    CHECK(t.mu(12) == 0);
    CHECK(t.phi(12) == 4);
    CHECK(t.mu(30) == -1);
    CHECK(t.lambda_log(8) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(t.prime_power_base(8) == 2);
    CHECK(t.spf(2) == 2);
    CHECK(t.spf(9) == 3);
    CHECK(t.spf(997) == 997);
}

TEST_CASE("tables agree with trial division up to 1e5") {
    const ArithTables& t = t1e6();
    for (u64 n = 1; n <= 100'000; ++n) {
        REQUIRE(t.mu(n) == oracle::naive_mu(n));
        REQUIRE(t.phi(n) == oracle::naive_phi(n));
        REQUIRE(std::fabs(t.lambda_log(n) - oracle::naive_lambda(n)) <= 1e-12);
        if (n >= 2) REQUIRE(t.spf(n) == oracle::naive_spf(n));
    }
}

TEST_CASE("lambda witness is exact") {
    const ArithTables& t = t1e6();
    for (u64 n = 1; n <= 50'000; ++n) {
        const bool has_log = t.lambda_log(n) > 0.0;
        const bool has_base = t.prime_power_base(n) > 0;
        REQUIRE(has_log == has_base);
        if (has_base) {
            const double expected = std::log(static_cast<double>(t.prime_power_base(n)));
            REQUIRE(std::fabs(t.lambda_log(n) - expected) <= 1e-12 * expected);
        }
    }
}

TEST_CASE("mu divisor sums collapse to the unit") {
    const ArithTables& t = t1e6();
    for (u64 n = 1; n <= 3'000; ++n) {
        long long s = 0;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) s += t.mu(d);
        REQUIRE(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("phi is multiplicative on coprime pairs") {
    const ArithTables& t = t1e6();
    for (u64 m = 2; m <= 600; ++m)
        for (u64 n = m + 1; m * n <= 900'000; n += 97)
            if (std::gcd(m, n) == 1) REQUIRE(t.phi(m * n) == t.phi(m) * t.phi(n));
}

TEST_CASE("squarefree density and Mertens sanity at 1e6") {
    const ArithTables& t = t1e6();
    u64 squarefree = 0;
    long long mertens = 0;
    for (u64 n = 1; n <= 1'000'000; ++n) {
        if (t.mu(n) != 0) ++squarefree;
        mertens += t.mu(n);
    }
    const double density = static_cast<double>(squarefree) / 1e6;
    CHECK(density >= 0.58);
    CHECK(density <= 0.64);
    CHECK(std::llabs(mertens) < 10'000);
}

TEST_CASE("tau3") {
    const ArithTables& t = t1e6();
    CHECK(t.tau3(1) == 1);
    CHECK(t.tau3(7) == 3);
    CHECK(t.tau3(9973) == 3);
    CHECK(t.tau3(12) == 18);
    for (u64 n : {2ull, 6ull, 12ull, 36ull, 210ull, 360ull, 1024ull, 9999ull})
        CHECK(t.tau3(n) == oracle::naive_tau3(n));
}

TEST_CASE("build rejects bad limits") {
    CHECK_THROWS_AS(build_tables(0), ParameterError);
    BuildOptions tiny;
    tiny.memory_ceiling_bytes = 1024;
    CHECK_THROWS_AS(build_tables(1'000'000, tiny), ParameterError);
}

TEST_CASE("segment size and thread count do not change the result") {
    BuildOptions narrow;
    narrow.segment_size = 4096;
    narrow.threads = 4;
    ArithTables a = build_tables(30'000, narrow);
    const ArithTables& b = t1e6();
    for (u64 n = 1; n <= 30'000; ++n) {
        REQUIRE(a.mu(n) == b.mu(n));
        REQUIRE(a.phi(n) == b.phi(n));
        REQUIRE(a.lambda_log(n) == b.lambda_log(n));
        REQUIRE(a.spf(n) == b.spf(n));
    }
}

TEST_CASE("cache round trip is bit exact") {
    const std::string path = "gdlab_test_cache.bin";
    for (u64 limit : {1ull, 2ull, 10'000ull}) {
        ArithTables t = build_tables(limit);
        save_cache(t, path);
        ArithTables u = load_cache(path);
        CHECK(u.limit == t.limit);
        CHECK(u.mu_v == t.mu_v);
        CHECK(u.lambda_v == t.lambda_v);
        CHECK(u.ppb_v == t.ppb_v);
        CHECK(u.phi_v == t.phi_v);
        CHECK(u.spf_v == t.spf_v);
        std::filesystem::remove(path);
    }
}

TEST_CASE("cache rejects damage and foreign files") {
    const std::string path = "gdlab_test_cache2.bin";
    ArithTables t = build_tables(500);
    save_cache(t, path);

    SUBCASE("truncated file") {
        std::filesystem::resize_file(path, std::filesystem::file_size(path) - 9);
        CHECK_THROWS_AS(load_cache(path), CacheCorrupt);
    }
    SUBCASE("flipped payload byte fails the checksum") {
        auto size = std::filesystem::file_size(path);
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        REQUIRE(f != nullptr);
        std::fseek(f, static_cast<long>(size / 2), SEEK_SET);
        int c = std::fgetc(f);
        std::fseek(f, static_cast<long>(size / 2), SEEK_SET);
        std::fputc(c ^ 0x40, f);
        std::fclose(f);
        CHECK_THROWS_AS(load_cache(path), CacheCorrupt);
    }
    SUBCASE("wrong magic") {
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        REQUIRE(f != nullptr);
        std::fputc('X', f);
        std::fclose(f);
        CHECK_THROWS_AS(load_cache(path), CacheIncompatible);
    }
    SUBCASE("future version byte") {
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        REQUIRE(f != nullptr);
        std::fseek(f, 7, SEEK_SET);
        std::fputc(2, f);
        std::fclose(f);
        CHECK_THROWS_AS(load_cache(path), CacheIncompatible);
    }
    std::filesystem::remove(path);
}

TEST_SUITE_END();
