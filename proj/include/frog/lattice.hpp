// lattice.hpp — dimension-generic integer-lattice geometry: points, norms,
// neighborhoods, and L1 diamonds with their iteration/indexing.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frog/rng.hpp"

namespace frog {

// Lattice dimension. Validated for 1 <= d <= 4; larger d up to kMaxDim is
// accepted but untested at scale.
inline constexpr int kMaxDim = 8;

struct Dimension {
    int d;
    explicit Dimension(int dim) : d(dim) {
        if (d < 1 || d > kMaxDim)
            throw std::invalid_argument("Dimension: d must be in [1, " +
                                        std::to_string(kMaxDim) + "]");
    }
};

// A site of Z^d. Fixed-capacity value type so it can serve as a hash key in
// hot loops without allocation. Coordinates are signed 64-bit: desk-scale
// horizons (n <= 10^6) never approach overflow.
class Point {
public:
    Point() : d_(0) { c_.fill(0); }
    explicit Point(int d) : d_(static_cast<std::uint8_t>(d)) { c_.fill(0); }
    Point(std::initializer_list<std::int64_t> coords)
        : d_(static_cast<std::uint8_t>(coords.size())) {
        c_.fill(0);
        int i = 0;
        for (auto v : coords) c_[i++] = v;
    }

    int dim() const { return d_; }
    std::int64_t operator[](int i) const { return c_[i]; }
    std::int64_t& operator[](int i) { return c_[i]; }

    bool operator==(const Point& o) const {
        if (d_ != o.d_) return false;
        for (int i = 0; i < d_; ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const Point& o) const { return !(*this == o); }

    // Lexicographic, first coordinate most significant.
    bool operator<(const Point& o) const {
        for (int i = 0; i < d_; ++i) {
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        }
        return false;
    }

    Point operator+(const Point& o) const {
        Point r(*this);
        for (int i = 0; i < d_; ++i) r.c_[i] += o.c_[i];
        return r;
    }
    Point operator-(const Point& o) const {
        Point r(*this);
        for (int i = 0; i < d_; ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    Point operator*(std::int64_t k) const {
        Point r(*this);
        for (int i = 0; i < d_; ++i) r.c_[i] *= k;
        return r;
    }

    // In-place unit move along the direction with index dir in [0, 2d):
    // axis = dir / 2, sign = + for even dir, - for odd.
    void move(unsigned dir) {
        c_[dir >> 1] += (dir & 1u) ? -1 : +1;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0x8f1bbcdcbfa53e0bULL;
        for (int i = 0; i < d_; ++i)
            h = splitmix64(h ^ static_cast<std::uint64_t>(c_[i]));
        return h;
    }

    std::string csv() const {
        std::string s;
        for (int i = 0; i < d_; ++i) {
            if (i) s += ',';
            s += std::to_string(c_[i]);
        }
        return s;
    }

private:
    std::array<std::int64_t, kMaxDim> c_;
    std::uint8_t d_;
};

struct PointHash {
    std::size_t operator()(const Point& p) const {
        return static_cast<std::size_t>(p.hash());
    }
};

inline Point unit_vector(int d, int axis, std::int64_t sign = 1) {
    Point p(d);
    p[axis] = sign;
    return p;
}

inline std::int64_t l1_norm(const Point& x) {
    std::int64_t s = 0;
    for (int i = 0; i < x.dim(); ++i) s += std::llabs(x[i]);
    return s;
}

inline double l2_norm(const Point& x) {
    double s = 0;
    for (int i = 0; i < x.dim(); ++i) {
        const double v = static_cast<double>(x[i]);
        s += v * v;
    }
    return std::sqrt(s);
}

// The 2d sites at L1 distance 1 from x, in the fixed order
// +e1, -e1, +e2, -e2, ..., matching Point::move's direction indexing.
std::vector<Point> neighbors(const Point& x);

// L1 ball {x : ||x - center||_1 <= radius} in Z^d.
struct DiamondRegion {
    std::int64_t radius;
    Point center;
    DiamondRegion(std::int64_t r, Point c) : radius(r), center(std::move(c)) {
        if (radius < 0) throw std::invalid_argument("DiamondRegion: radius < 0");
    }
    bool contains(const Point& x) const { return l1_norm(x - center) <= radius; }
};

// Number of lattice sites in a d-dimensional diamond of radius r.
// N_0 = 1, N_d(r) = sum_{t=-r}^{r} N_{d-1}(r - |t|).
std::int64_t diamond_count(int d, std::int64_t radius);

// Visit each member exactly once, in lexicographic coordinate order.
void for_each_diamond_site(const DiamondRegion& region, int d,
                           const std::function<void(const Point&)>& fn);

// Materialized lexicographic site list (small regions / tests).
std::vector<Point> diamond_sites(const DiamondRegion& region, int d);

}  // namespace frog
