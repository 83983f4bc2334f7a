// walk.hpp — deterministic, coupled, lazily realized simple random walks.
//
// The k-th step of the walk owned by particle (origin, index) is a pure
// function of (seed, origin, index, k): a counter-based draw, not a stream.
// Any prefix of any walk can therefore be realized lazily and out of order,
// which is exactly what the coupling of the processes started from different
// sites requires — the particle seated at a site follows the same trajectory
// no matter which process wakes it, only its wake-up time differs.
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "frog/lattice.hpp"
#include "frog/rng.hpp"

namespace frog {

struct Seed {
    std::uint64_t value = 0;
};

// Identity of one particle's walk: the site it sleeps on plus its index
// within that site (sites may hold several particles).
struct WalkId {
    Point origin;
    std::uint32_t index = 0;

    bool operator==(const WalkId& o) const {
        return index == o.index && origin == o.origin;
    }
};

struct WalkIdHash {
    std::size_t operator()(const WalkId& w) const {
        return static_cast<std::size_t>(
            splitmix64(w.origin.hash() ^ (0x9e3779b97f4a7c15ULL * (w.index + 1))));
    }
};

// Per-walk hash base: fold seed, origin coordinates and particle index once;
// individual steps then cost one splitmix64 each.
inline std::uint64_t walk_hash(Seed seed, const Point& origin,
                               std::uint32_t index = 0) {
    std::uint64_t h = splitmix64(seed.value ^ 0xb5297a4d3f2c1e96ULL);
    for (int i = 0; i < origin.dim(); ++i)
        h = splitmix64(h ^ static_cast<std::uint64_t>(origin[i]) ^
                       (0xc2b2ae3d27d4eb4fULL * static_cast<std::uint64_t>(i + 1)));
    return splitmix64(h ^ (0x165667b19e3779f9ULL * (index + 1)));
}

// Direction index in [0, 2d) of the k-th step (k >= 1) given the walk's hash
// base. Direction encoding matches Point::move.
inline unsigned step_dir(std::uint64_t hash_base, std::uint64_t k, int d) {
    return bounded(splitmix64(hash_base ^ (k * 0x9e3779b97f4a7c15ULL)),
                   static_cast<std::uint32_t>(2 * d));
}

// The family {S^x} for one seed, with memoized position prefixes for query
// workloads (analytics, tests). The hot simulation path reads step_dir
// directly and never touches the memo. Not internally synchronized: a store
// is confined to the worker that owns its replica.
class WalkStore {
public:
    WalkStore(Seed seed, Dimension dim) : seed_(seed), d_(dim.d) {}

    Seed seed() const { return seed_; }
    int dim() const { return d_; }

    // Unit step vector of step k >= 1 of the given walk.
    Point step_at(const WalkId& id, std::uint64_t k) const;
    Point step_at(const Point& origin, std::uint64_t k) const {
        return step_at(WalkId{origin, 0}, k);
    }

    // S^x_k; k = 0 returns the origin. Realizes and memoizes the prefix.
    const Point& position(const WalkId& id, std::uint64_t k);
    const Point& position(const Point& origin, std::uint64_t k) {
        return position(WalkId{origin, 0}, k);
    }

    // Positions S^x_0..S^x_k as a span-friendly vector reference.
    const std::vector<Point>& trajectory(const WalkId& id, std::uint64_t upto);

    // min {n <= horizon : S^x_n = z}, or nullopt if the prefix misses z.
    std::optional<std::int64_t> hitting_time(const Point& x, const Point& z,
                                             std::int64_t horizon);

    // max_{0 <= i <= n} ||S^x_i - x||_2 on this realization.
    double sup_displacement(const Point& origin, std::int64_t n);

    // Drop a memoized trajectory. Steps are pure in (seed, id, k), so any
    // later re-realization is bit-identical.
    void release(const WalkId& id) { cache_.erase(id); }

    std::size_t cached_walks() const { return cache_.size(); }

private:
    Seed seed_;
    int d_;
    std::unordered_map<WalkId, std::vector<Point>, WalkIdHash> cache_;
};

}  // namespace frog
