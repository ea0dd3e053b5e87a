#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "gmaint/rng.hpp"

using namespace gmaint;

TEST_CASE("identical (seed, stream_id) reproduces the exact sequence") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    RngStream c(42, 7), d(42, 7);
    for (int i = 0; i < 100; ++i) REQUIRE(c.normal() == d.normal());
}

TEST_CASE("distinct stream ids decorrelate") {
    RngStream a(42, 0), b(42, 1), c(43, 0);
    int equal_ab = 0, equal_ac = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        if (x == b.next_u64()) ++equal_ab;
        if (x == c.next_u64()) ++equal_ac;
    }
    REQUIRE(equal_ab == 0);
    REQUIRE(equal_ac == 0);
}

TEST_CASE("uniform01 range and moments") {
    RngStream rng(1, 2);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        s += u;
        s2 += u * u;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    REQUIRE(std::fabs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    REQUIRE(std::fabs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("uniform_pos never returns zero") {
    RngStream rng(9, 9);
    for (int i = 0; i < 100000; ++i) REQUIRE(rng.uniform_pos() > 0.0);
}

TEST_CASE("normal moments") {
    RngStream rng(5, 0);
    const int n = 400000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    REQUIRE(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    REQUIRE(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("stream_key folds tags without trivial collisions") {
    std::set<std::uint64_t> keys;
    for (std::uint64_t e = 0; e < 50; ++e)
        for (std::uint64_t r = 0; r < 50; ++r) keys.insert(stream_key(e, r));
    REQUIRE(keys.size() == 2500);
}
