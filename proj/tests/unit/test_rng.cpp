#include "doctest.h"

#include <cmath>
#include <set>

#include "cca/rng.hpp"

using namespace cca;

TEST_CASE("mix64 is deterministic and spreads nearby inputs") {
    CHECK(mix64(0) == mix64(0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix64(i));
    CHECK(seen.size() == 1000);
}

TEST_CASE("derive_seed depends on every key and on their order") {
    const auto a = derive_seed(1, {1, 2, 3});
    CHECK(a == derive_seed(1, {1, 2, 3}));
    CHECK(a != derive_seed(2, {1, 2, 3}));
    CHECK(a != derive_seed(1, {1, 2, 4}));
    CHECK(a != derive_seed(1, {2, 1, 3}));
    CHECK(a != derive_seed(1, {1, 2}));
}

TEST_CASE("RngStream draws are addressable by counter") {
    RngStream s(99);
    const auto first = s.next_u64();
    const auto second = s.next_u64();
    CHECK(s.position() == 2);
    CHECK(first == s.at(0));
    CHECK(second == s.at(1));
    RngStream t(99);
    CHECK(t.next_u64() == first);
}

TEST_CASE("next_uniform lies in [0,1) with the right first two moments") {
    RngStream s(12345);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.next_uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}
