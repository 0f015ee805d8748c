#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "labhh/instance.hpp"
#include "oracles.hpp"

using namespace labhh;

TEST_CASE("distance basics") {
    CHECK(distance({0, 0}, {0, 0}) == 0.0);
    CHECK(distance({0, 0}, {1, 0}) == 1.0);
    CHECK(distance({0, 0}, {1, 1}) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(distance({0.2, 0.7}, {0.9, 0.1}) == distance({0.9, 0.1}, {0.2, 0.7}));
}

TEST_CASE("distance_matrix matches pairwise distances") {
    const Instance inst = generate(Family::Uniform, 8, 42);
    const DistanceMatrix dm = distance_matrix(inst);
    for (int i = 0; i < inst.n; ++i) {
        CHECK(dm.at(i, i) == 0.0);
        for (int j = 0; j < inst.n; ++j) {
            CHECK(dm.at(i, j) == dm.at(j, i));
            CHECK(dm.at(i, j) == distance(inst.points[i], inst.points[j]));
        }
    }
}

TEST_CASE("distance_matrix of unit square corners") {
    const Instance square = oracles::unit_square();
    const DistanceMatrix dm = distance_matrix(square);
    const double root2 = std::sqrt(2.0);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const bool unit = dm.at(i, j) == Catch::Approx(1.0).margin(1e-12);
            const bool diag = dm.at(i, j) == Catch::Approx(root2).margin(1e-12);
            CHECK((unit || diag));
        }
    }
}

TEST_CASE("generate rejects n < 2") {
    CHECK_THROWS_AS(generate(Family::Uniform, 1, 7), std::invalid_argument);
}

TEST_CASE("generation is deterministic and in range") {
    for (Family f : kAllFamilies) {
        const Instance a = generate(f, 50, 9001);
        const Instance b = generate(f, 50, 9001);
        REQUIRE(a.n == 50);
        REQUIRE(a.points.size() == 50);
        for (int i = 0; i < a.n; ++i) {
            CHECK(a.points[i].x == b.points[i].x);
            CHECK(a.points[i].y == b.points[i].y);
            CHECK((a.points[i].x >= 0.0 && a.points[i].x <= 1.0));
            CHECK((a.points[i].y >= 0.0 && a.points[i].y <= 1.0));
        }
        const Instance c = generate(f, 50, 9002);
        bool any_diff = false;
        for (int i = 0; i < a.n; ++i) {
            any_diff = any_diff || a.points[i].x != c.points[i].x;
        }
        CHECK(any_diff); // different seed, different instance
    }
}

TEST_CASE("uniform n=2 stays in the unit square") {
    const Instance inst = generate(Family::Uniform, 2, 3);
    REQUIRE(inst.points.size() == 2);
    for (const Point& p : inst.points) {
        CHECK((p.x >= 0.0 && p.x <= 1.0));
        CHECK((p.y >= 0.0 && p.y <= 1.0));
    }
}

TEST_CASE("uniform nearest-neighbor spacing matches the Poisson expectation") {
    // mean NN distance for n uniform points is about 0.5/sqrt(n)
    const int n = 1000;
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Instance inst = generate(Family::Uniform, n, seed);
        double sum_nn = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = 1e9;
            for (int j = 0; j < n; ++j) {
                if (j != i) best = std::min(best, distance(inst.points[i], inst.points[j]));
            }
            sum_nn += best;
        }
        total += sum_nn / n;
    }
    const double mean = total / 50.0;
    const double expected = 0.5 / std::sqrt(static_cast<double>(n));
    CHECK(mean == Catch::Approx(expected).epsilon(0.15));
}

TEST_CASE("clustered instances occupy at least two clusters") {
    for (int n : {10, 25, 50, 100}) {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            const Instance inst = generate(Family::Clustered, n, seed);
            const std::vector<Point> centers = cluster_centers(Family::Clustered, n, seed);
            REQUIRE(centers.size() >= 2);
            std::set<int> used;
            for (const Point& p : inst.points) {
                int best = 0;
                for (int c = 1; c < static_cast<int>(centers.size()); ++c) {
                    if (distance(p, centers[c]) < distance(p, centers[best])) best = c;
                }
                used.insert(best);
            }
            CHECK(used.size() >= 2);
        }
    }
}

TEST_CASE("corridor instances form a narrow strip") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = generate(Family::Corridor, 50, seed);
        double mean = 0.0;
        for (const Point& p : inst.points) mean += p.y;
        mean /= inst.n;
        double var = 0.0;
        for (const Point& p : inst.points) var += (p.y - mean) * (p.y - mean);
        var /= (inst.n - 1);
        CHECK(std::sqrt(var) < 0.1);
    }
}

TEST_CASE("grid-jitter picks distinct cells") {
    const int n = 64;
    const Instance inst = generate(Family::GridJitter, n, 5);
    const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::set<std::pair<int, int>> cells;
    for (const Point& p : inst.points) {
        const int cx = std::min(g - 1, static_cast<int>(p.x * g));
        const int cy = std::min(g - 1, static_cast<int>(p.y * g));
        cells.insert({cx, cy});
    }
    CHECK(cells.size() == static_cast<std::size_t>(n));
}
