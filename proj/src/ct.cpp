// ct.cpp
#include "frog/ct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace frog {

CtEngine ct_run(Dimension d, const InitialConfig& config, Seed seed,
                double t_end, CtMode mode) {
    if (!(t_end > 0)) throw std::invalid_argument("ct_run: t_end > 0");
    CtEngine eng(d, config, seed, mode,
                 static_cast<std::int64_t>(t_end * 2) + 16);
    eng.run_until(t_end);
    return eng;
}

CtEngine::CtEngine(Dimension d, InitialConfig config, Seed seed, CtMode mode,
                   std::int64_t table_radius)
    : d_(d.d),
      config_(config),
      seed_(seed),
      mode_(mode),
      table_(d.d, table_radius),
      rng_(child_seed(seed.value, 0xc7e55e4aULL)) {
    const Point origin(d_);
    bool capped = false;
    const std::uint64_t count = config_.count_at(seed_, origin, d_, &capped);
    if (capped) ++cap_events_;
    if (count > 50'000'000)
        throw std::runtime_error("CtEngine: per-site count too large for per-particle tracking");
    SiteCell& c = table_.cell(origin);
    c.sleeping = 0;
    c.awaken_time = 0;
    table_.note_touched(origin);
    initial_total_ = count;
    record_.push_back({origin, 0.0});
    for (std::uint64_t j = 0; j < count; ++j) {
        slots_.push_back({origin, 0});
        if (mode_ == CtMode::PerParticle)
            queue_.push({exp1(), static_cast<std::uint32_t>(j)});
    }
}

SiteCell& CtEngine::touch(const Point& p) {
    SiteCell& c = table_.cell(p);
    if (c.sleeping == SiteCell::kUninit) {
        bool capped = false;
        const std::uint64_t count = config_.count_at(seed_, p, d_, &capped);
        if (capped) ++cap_events_;
        if (count > 50'000'000)
            throw std::runtime_error("CtEngine: per-site count too large for per-particle tracking");
        c.sleeping = count;
        initial_total_ += count;
        sleeping_total_ += count;
        table_.note_touched(p);
    }
    return c;
}

void CtEngine::wake_site(const Point& p, SiteCell& c, double t) {
    const std::uint64_t k = c.sleeping;
    c.sleeping = 0;
    c.awaken_time = 0;  // marker only; real time lives in the ct record
    sleeping_total_ -= k;
    record_.push_back({p, t});
    for (std::uint64_t j = 0; j < k; ++j) {
        slots_.push_back({p, 0});
        // A sleeper activated at t jumps first at t + Exponential(1). In
        // Thinned mode this needs no bookkeeping: memorylessness makes the
        // uniform pick at global events exactly equivalent.
        if (mode_ == CtMode::PerParticle)
            queue_.push({t + exp1(), static_cast<std::uint32_t>(slots_.size() - 1)});
    }
}

void CtEngine::jump(std::uint32_t slot, double t) {
    Slot& s = slots_[slot];
    s.pos.move(bounded(rng_(), static_cast<std::uint32_t>(2 * d_)));
    ++s.jumps;
    ++total_jumps_;
    SiteCell& c = touch(s.pos);
    if (c.sleeping > 0) wake_site(s.pos, c, t);
}

void CtEngine::run_until(double t_end) {
    if (t_end < time_) throw std::invalid_argument("run_until: t_end >= current time");
    if (mode_ == CtMode::PerParticle) {
        while (!queue_.empty() && queue_.top().t <= t_end) {
            const Event e = queue_.top();
            queue_.pop();
            if (e.t < last_event_) monotone_ = false;
            last_event_ = e.t;
            time_ = e.t;
            jump(e.slot, e.t);
            queue_.push({e.t + exp1(), e.slot});
        }
        time_ = t_end;
    } else {
        while (true) {
            const double rate = static_cast<double>(slots_.size());
            const double t_next = time_ + exp1() / rate;
            if (t_next > t_end) break;
            if (t_next < time_) monotone_ = false;
            time_ = t_next;
            const std::uint32_t slot =
                bounded(rng_(), static_cast<std::uint32_t>(slots_.size()));
            jump(slot, time_);
        }
        time_ = t_end;
    }
}

std::optional<double> CtEngine::awaken_time(const Point& p) const {
    for (const auto& a : record_)
        if (a.site == p) return a.time;
    return std::nullopt;
}

std::int64_t CtEngine::max_l1_radius() const {
    std::int64_t r = 0;
    for (const auto& a : record_) r = std::max(r, l1_norm(a.site));
    return r;
}

bool CtEngine::conservation_ok() const {
    if (sleeping_total_ + slots_.size() != initial_total_) return false;
    std::uint64_t sleeping = 0, expected = 0;
    for (const Point& site : table_.touched()) {
        const SiteCell* c = table_.find(site);
        if (c == nullptr) return false;
        sleeping += c->sleeping;
        expected += config_.count_at(seed_, site, d_);
    }
    return sleeping == sleeping_total_ && expected == initial_total_;
}

bool CtEngine::xi_connected() const {
    std::unordered_set<Point, PointHash> awake;
    for (const auto& a : record_) awake.insert(a.site);
    const Point origin(d_);
    std::vector<Point> frontier{origin};
    std::unordered_set<Point, PointHash> seen{origin};
    while (!frontier.empty()) {
        const Point p = frontier.back();
        frontier.pop_back();
        for (int axis = 0; axis < d_; ++axis) {
            for (int sgn : {+1, -1}) {
                Point q = p;
                q[axis] += sgn;
                if (awake.count(q) && !seen.count(q)) {
                    seen.insert(q);
                    frontier.push_back(q);
                }
            }
        }
    }
    return seen.size() == awake.size();
}

}  // namespace frog
