// test_lattice.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "frog/lattice.hpp"

using namespace frog;

namespace {

// Brute-force diamond enumeration over the bounding box, the independent
// oracle for diamond_sites.
std::vector<Point> diamond_brute(int d, std::int64_t radius, const Point& center) {
    std::vector<Point> out;
    Point p(d);
    const std::function<void(int)> rec = [&](int axis) {
        if (axis == d) {
            if (l1_norm(p - center) <= radius) out.push_back(p);
            return;
        }
        for (std::int64_t c = center[axis] - radius; c <= center[axis] + radius; ++c) {
            p[axis] = c;
            rec(axis + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

TEST_CASE("l1 norm") {
    CHECK(l1_norm(Point{0, 0}) == 0);
    CHECK(l1_norm(Point{1, -2}) == 3);
    CHECK(l1_norm(Point{-3, 0, 4}) == 7);
}

TEST_CASE("l2 norm") {
    CHECK(l2_norm(Point{0, 0}) == doctest::Approx(0));
    CHECK(l2_norm(Point{3, 4}) == doctest::Approx(5));
    CHECK(l2_norm(Point{1, 1, 1}) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("norm comparison l2 <= l1 <= sqrt(d) l2") {
    std::uint64_t h = 42;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(bounded(h = splitmix64(h), 4));
        Point p(d);
        for (int i = 0; i < d; ++i)
            p[i] = static_cast<std::int64_t>(bounded(h = splitmix64(h), 41)) - 20;
        const double l1 = static_cast<double>(l1_norm(p));
        const double l2 = l2_norm(p);
        CHECK(l2 <= l1 + 1e-9);
        CHECK(l1 <= std::sqrt(static_cast<double>(d)) * l2 + 1e-9);
    }
}

TEST_CASE("neighbors order and count") {
    const auto n1 = neighbors(Point{0});
    REQUIRE(n1.size() == 2);
    CHECK(n1[0] == Point{1});
    CHECK(n1[1] == Point{-1});

    const auto n2 = neighbors(Point{0, 0});
    REQUIRE(n2.size() == 4);
    CHECK(n2[0] == Point{1, 0});
    CHECK(n2[1] == Point{-1, 0});
    CHECK(n2[2] == Point{0, 1});
    CHECK(n2[3] == Point{0, -1});

    for (int d = 1; d <= 4; ++d) {
        Point p(d);
        p[0] = 7;
        CHECK(neighbors(p).size() == static_cast<std::size_t>(2 * d));
    }
}

TEST_CASE("neighbors pairwise distinct at L1 distance one") {
    std::uint64_t h = 7;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(bounded(h = splitmix64(h), 4));
        Point p(d);
        for (int i = 0; i < d; ++i)
            p[i] = static_cast<std::int64_t>(bounded(h = splitmix64(h), 201)) - 100;
        const auto ns = neighbors(p);
        std::set<Point> unique(ns.begin(), ns.end());
        CHECK(unique.size() == ns.size());
        for (const auto& q : ns) CHECK(l1_norm(q - p) == 1);
    }
}

TEST_CASE("Point::move matches the neighbor ordering") {
    const Point p{3, -1, 2};
    const auto ns = neighbors(p);
    for (unsigned dir = 0; dir < 6; ++dir) {
        Point q = p;
        q.move(dir);
        CHECK(q == ns[dir]);
    }
}

TEST_CASE("diamond sites small cases") {
    CHECK(diamond_sites(DiamondRegion(1, Point{0, 0}), 2).size() == 5);

    const auto d1 = diamond_sites(DiamondRegion(2, Point{0}), 1);
    REQUIRE(d1.size() == 5);
    for (std::int64_t i = 0; i < 5; ++i) CHECK(d1[static_cast<std::size_t>(i)][0] == i - 2);

    // Oracle: brute-force enumeration over [-2,2]^2 gives 13 sites.
    const auto brute = diamond_brute(2, 2, Point{0, 0});
    CHECK(brute.size() == 13);
    CHECK(diamond_sites(DiamondRegion(2, Point{0, 0}), 2).size() == 13);
}

TEST_CASE("diamond sites match brute force, lexicographic, no repeats") {
    std::uint64_t h = 99;
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + static_cast<int>(bounded(h = splitmix64(h), 3));
        const std::int64_t r = static_cast<std::int64_t>(bounded(h = splitmix64(h), 5));
        Point center(d);
        for (int i = 0; i < d; ++i)
            center[i] = static_cast<std::int64_t>(bounded(h = splitmix64(h), 9)) - 4;
        const auto got = diamond_sites(DiamondRegion(r, center), d);
        const auto want = diamond_brute(d, r, center);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
        for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
    }
}

TEST_CASE("d=2 diamond count equals 2n^2 + 2n + 1 up to n = 50") {
    for (std::int64_t n = 0; n <= 50; ++n) {
        const std::int64_t want = 2 * n * n + 2 * n + 1;
        CHECK(diamond_count(2, n) == want);
        if (n <= 12)
            CHECK(static_cast<std::int64_t>(
                      diamond_sites(DiamondRegion(n, Point{0, 0}), 2).size()) == want);
    }
}

TEST_CASE("diamond count matches enumeration across dimensions") {
    for (int d = 1; d <= 4; ++d)
        for (std::int64_t r = 0; r <= 6; ++r)
            CHECK(diamond_count(d, r) ==
                  static_cast<std::int64_t>(diamond_brute(d, r, Point(d)).size()));
}

TEST_CASE("negative radius rejected") {
    CHECK_THROWS_AS(DiamondRegion(-1, Point{0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(0), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(9), std::invalid_argument);
}

TEST_CASE("csv row format") {
    CHECK(Point{3, -4}.csv() == "3,-4");
    CHECK(Point{0}.csv() == "0");
}
