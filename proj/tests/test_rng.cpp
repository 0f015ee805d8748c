#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "labhh/rng.hpp"

using namespace labhh;

TEST_CASE("rng streams are deterministic") {
    Rng a(12345), b(12345);
    for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("child streams are independent of parent consumption") {
    Rng parent1(7);
    Rng parent2(7);
    parent2.next_u64();
    parent2.next_u64();
    Rng c1 = parent1.child(3);
    Rng c2 = parent2.child(3);
    for (int k = 0; k < 10; ++k) CHECK(c1.next_u64() == c2.next_u64());
    CHECK(parent1.child(1).next_u64() != parent1.child(2).next_u64());
}

TEST_CASE("next_double covers [0,1) roughly uniformly") {
    Rng rng(99);
    double sum = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("next_below stays in range and hits every value") {
    Rng rng(4);
    std::vector<int> hits(7, 0);
    for (int k = 0; k < 7000; ++k) {
        const std::uint64_t v = rng.next_below(7);
        REQUIRE(v < 7);
        ++hits[v];
    }
    for (int c : hits) CHECK(c > 700);
}

TEST_CASE("gaussian draws have the right moments") {
    Rng rng(31);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double g = rng.next_gauss();
        sum += g;
        sq += g * g;
    }
    CHECK(sum / n == Catch::Approx(0.0).margin(0.01));
    CHECK(sq / n == Catch::Approx(1.0).margin(0.02));
}
