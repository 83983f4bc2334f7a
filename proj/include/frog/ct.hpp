// ct.hpp — continuous-time frog model: active particles jump at rate 1,
// awakening logic identical to the discrete engine with real-valued times.
//
// Two exact sampling paths:
//   PerParticle — an event queue of per-particle Exponential(1) clocks (the
//                 literal construction; events dequeue in nondecreasing t).
//   Thinned     — one global clock at rate N = #active plus a uniform pick of
//                 the jumping particle; an exact thinning of the per-particle
//                 clocks with O(1) work per event, used for long horizons.
#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "frog/engine.hpp"
#include "frog/lattice.hpp"
#include "frog/walk.hpp"

namespace frog {

enum class CtMode { PerParticle, Thinned };

struct CtAwakening {
    Point site;
    double time;
};

class CtEngine;

// Event-driven execution to time t_end; the returned engine carries the
// final state and the real-valued awakening record.
CtEngine ct_run(Dimension d, const InitialConfig& config, Seed seed,
                double t_end, CtMode mode = CtMode::PerParticle);

class CtEngine {
public:
    CtEngine(Dimension d, InitialConfig config, Seed seed,
             CtMode mode = CtMode::PerParticle, std::int64_t table_radius = 2048);

    void run_until(double t_end);

    double time() const { return time_; }
    const std::vector<CtAwakening>& record() const { return record_; }
    std::optional<double> awaken_time(const Point& p) const;

    std::size_t particle_count() const { return slots_.size(); }
    std::uint64_t jumps_of(std::size_t slot) const { return slots_[slot].jumps; }
    std::uint64_t total_jumps() const { return total_jumps_; }

    std::int64_t max_l1_radius() const;
    std::size_t xi_size() const { return record_.size(); }

    bool conservation_ok() const;
    bool xi_connected() const;

    // True iff every dequeued event time was >= its predecessor (PerParticle),
    // resp. the global clock never ran backwards (Thinned).
    bool event_times_monotone() const { return monotone_; }

private:
    struct Slot {
        Point pos;
        std::uint64_t jumps = 0;
    };
    struct Event {
        double t;
        std::uint32_t slot;
        bool operator>(const Event& o) const { return t > o.t; }
    };

    int d_;
    InitialConfig config_;
    Seed seed_;
    CtMode mode_;
    double time_ = 0;
    bool monotone_ = true;
    double last_event_ = 0;

    SiteTable table_;
    std::vector<Slot> slots_;
    std::vector<CtAwakening> record_;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
    std::mt19937_64 rng_;

    std::uint64_t total_jumps_ = 0;
    std::uint64_t initial_total_ = 0;
    std::uint64_t sleeping_total_ = 0;
    std::uint64_t cap_events_ = 0;

    double exp1() { return -std::log(u01(rng_())); }
    SiteCell& touch(const Point& p);
    void wake_site(const Point& p, SiteCell& c, double t);
    void jump(std::uint32_t slot, double t);
};

}  // namespace frog
