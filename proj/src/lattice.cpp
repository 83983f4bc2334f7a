// lattice.cpp
#include "frog/lattice.hpp"

namespace frog {

std::vector<Point> neighbors(const Point& x) {
    std::vector<Point> out;
    out.reserve(2 * static_cast<std::size_t>(x.dim()));
    for (int axis = 0; axis < x.dim(); ++axis) {
        Point p = x;
        p[axis] += 1;
        out.push_back(p);
        p[axis] -= 2;
        out.push_back(p);
    }
    return out;
}

std::int64_t diamond_count(int d, std::int64_t radius) {
    if (radius < 0) return 0;
    // N_d(r) over r = 0..radius, built up one dimension at a time.
    std::vector<std::int64_t> prev(static_cast<std::size_t>(radius) + 1, 1);  // d = 0
    std::vector<std::int64_t> cur(prev.size());
    for (int k = 1; k <= d; ++k) {
        for (std::int64_t r = 0; r <= radius; ++r) {
            std::int64_t s = prev[static_cast<std::size_t>(r)];  // t = 0
            for (std::int64_t t = 1; t <= r; ++t)
                s += 2 * prev[static_cast<std::size_t>(r - t)];
            cur[static_cast<std::size_t>(r)] = s;
        }
        prev.swap(cur);
    }
    return prev[static_cast<std::size_t>(radius)];
}

namespace {

void recurse_sites(Point& p, int axis, int d, std::int64_t budget,
                   const Point& center,
                   const std::function<void(const Point&)>& fn) {
    if (axis == d - 1) {
        for (std::int64_t t = -budget; t <= budget; ++t) {
            p[axis] = center[axis] + t;
            fn(p);
        }
        return;
    }
    for (std::int64_t t = -budget; t <= budget; ++t) {
        p[axis] = center[axis] + t;
        recurse_sites(p, axis + 1, d, budget - std::llabs(t), center, fn);
    }
}

}  // namespace

void for_each_diamond_site(const DiamondRegion& region, int d,
                           const std::function<void(const Point&)>& fn) {
    Point p(d);
    recurse_sites(p, 0, d, region.radius, region.center, fn);
}

std::vector<Point> diamond_sites(const DiamondRegion& region, int d) {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(diamond_count(d, region.radius)));
    for_each_diamond_site(region, d, [&](const Point& p) { out.push_back(p); });
    return out;
}

}  // namespace frog
