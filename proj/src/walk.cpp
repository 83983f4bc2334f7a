// walk.cpp
#include "frog/walk.hpp"

#include <stdexcept>

namespace frog {

Point WalkStore::step_at(const WalkId& id, std::uint64_t k) const {
    if (k == 0) throw std::invalid_argument("step_at: k >= 1");
    const unsigned dir = step_dir(walk_hash(seed_, id.origin, id.index), k, d_);
    Point s(d_);
    s.move(dir);
    return s;
}

const std::vector<Point>& WalkStore::trajectory(const WalkId& id,
                                                std::uint64_t upto) {
    auto& traj = cache_[id];
    if (traj.empty()) traj.push_back(id.origin);
    if (traj.size() <= upto) {
        const std::uint64_t h = walk_hash(seed_, id.origin, id.index);
        Point pos = traj.back();
        for (std::uint64_t k = traj.size(); k <= upto; ++k) {
            pos.move(step_dir(h, k, d_));
            traj.push_back(pos);
        }
    }
    return traj;
}

const Point& WalkStore::position(const WalkId& id, std::uint64_t k) {
    return trajectory(id, k)[k];
}

std::optional<std::int64_t> WalkStore::hitting_time(const Point& x,
                                                    const Point& z,
                                                    std::int64_t horizon) {
    if (horizon < 0) throw std::invalid_argument("hitting_time: horizon >= 0");
    const auto& traj = trajectory(WalkId{x, 0},
                                  static_cast<std::uint64_t>(horizon));
    for (std::int64_t n = 0; n <= horizon; ++n)
        if (traj[static_cast<std::size_t>(n)] == z) return n;
    return std::nullopt;
}

double WalkStore::sup_displacement(const Point& origin, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("sup_displacement: n >= 0");
    const auto& traj = trajectory(WalkId{origin, 0},
                                  static_cast<std::uint64_t>(n));
    double sup = 0;
    for (std::int64_t i = 0; i <= n; ++i) {
        const double r = l2_norm(traj[static_cast<std::size_t>(i)] - origin);
        if (r > sup) sup = r;
    }
    return sup;
}

}  // namespace frog
