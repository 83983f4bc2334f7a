// engine.hpp — frog-model dynamics on Z^d: discrete-time stepping of active
// particles, awakening of sleepers, passage-time extraction.
//
// Two engine modes:
//   Coupled    — every particle is tracked with its origin and follows its
//                own counter-based walk from the shared seed, so pathwise
//                subadditivity, monotone configuration coupling and the
//                flat-edge domination are all exact statements about one
//                realization.
//   Aggregated — only per-site active counts are kept and each site's count
//                disperses multinomially over the 2d neighbors. Same process
//                in distribution, O(occupied sites) per step instead of
//                O(active particles), but the pathwise coupling is gone.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <random>
#include <vector>

#include "frog/lattice.hpp"
#include "frog/walk.hpp"

namespace frog {

// Initial sleeper law. Every site receives at least one particle.
struct InitialConfig {
    enum class Law { OnePerSite, MPerSite, HeavyTail };

    Law law = Law::OnePerSite;
    std::uint32_t m = 1;   // MPerSite
    double delta = 1.0;    // HeavyTail tail exponent

    static InitialConfig one_per_site() { return {}; }
    static InitialConfig m_per_site(std::uint32_t m);
    static InitialConfig heavy_tail(double delta);  // rejects delta <= 0

    // Exponent cap for HeavyTail: eta = (2d)^N realized with N capped so the
    // count fits comfortably in 64 bits; cap events are counted by the engine.
    static int heavy_tail_cap(int d);

    // Particle count seated at `site`, pure in (seed, site). HeavyTail draws
    // eta = (2d)^N with P[N >= n] = n^{-delta} via N = floor(u^{-1/delta}).
    std::uint64_t count_at(Seed seed, const Point& site, int d,
                           bool* capped = nullptr) const;

    std::string label() const;
};

enum class EngineMode { Coupled, Aggregated };

struct Awakening {
    Point site;
    std::int64_t time;
};

// Site bookkeeping. Sites are materialized on first touch; the sleeper count
// of an untouched site does not exist yet (HeavyTail draws happen lazily).
struct SiteCell {
    static constexpr std::uint64_t kUninit = ~std::uint64_t{0};
    std::uint64_t sleeping = kUninit;
    std::uint64_t active = 0;       // aggregated mode only
    std::int64_t awaken_time = -1;  // -1 = still asleep
};

// Hybrid site storage: dense box [-R, R]^d when it fits the cell budget,
// hash map otherwise (and as overflow for out-of-box touches).
class SiteTable {
public:
    SiteTable(int d, std::int64_t radius, std::size_t dense_budget = 6'000'000);

    SiteCell& cell(const Point& p);
    const SiteCell* find(const Point& p) const;

    // Sites touched so far, in touch order.
    const std::vector<Point>& touched() const { return touched_; }
    void note_touched(const Point& p) { touched_.push_back(p); }

    bool dense() const { return dense_; }

private:
    int d_;
    std::int64_t radius_;
    bool dense_ = false;
    std::vector<SiteCell> cells_;
    std::array<std::int64_t, kMaxDim> stride_{};
    std::unordered_map<Point, SiteCell, PointHash> sparse_;
    std::vector<Point> touched_;

    std::int64_t dense_index(const Point& p) const;
};

// Full simulation state plus the stepping operators. One engine instance is
// strictly single-threaded and deterministic given its seed; parallelism is
// across replicas with distinct seeds.
class FrogEngine {
public:
    FrogEngine(Dimension d, InitialConfig config, Seed seed, EngineMode mode,
               std::int64_t horizon, Point start = {});

    int dim() const { return d_; }
    EngineMode mode() const { return mode_; }
    std::int64_t time() const { return time_; }
    std::int64_t horizon() const { return horizon_; }
    Seed seed() const { return seed_; }

    // One synchronous step: every active particle moves to a neighbor, then
    // every sleeper site that received at least one arrival wakes all its
    // sleepers at the new time. Newly awakened particles first move on the
    // following step, reading the Z^x_y definition literally.
    void step();

    // Step until time == n. Requires time <= n <= horizon.
    void run(std::int64_t n);

    // AwakeningRecord: T(start, site) for every awakened site, in awakening
    // order; record[0] is (start, 0).
    const std::vector<Awakening>& record() const { return record_; }

    std::optional<std::int64_t> awaken_time(const Point& p) const;

    std::size_t xi_size() const { return record_.size(); }
    std::vector<Point> xi() const;
    std::int64_t max_l1_radius() const;

    // Exact conservation recount: per-origin in Coupled mode (sleeping +
    // active particles from each materialized site equal its initial count),
    // global in Aggregated mode.
    bool conservation_ok() const;

    // xi is connected under L1 adjacency (flood fill from the start site).
    bool xi_connected() const;

    std::uint64_t total_active() const { return active_total_; }
    std::uint64_t total_sleeping() const { return sleeping_total_; }
    std::uint64_t total_initial() const { return initial_total_; }
    std::uint64_t cap_events() const { return cap_events_; }

    // CSV export of the awakening record: header x1,...,xd,T then one row per
    // awakened site, sorted by (T, site).
    std::string record_csv() const;

    // JSON snapshot {time, sites:[{coords, sleeping, awaken_time}]}, sites
    // sorted lexicographically.
    std::string snapshot_json() const;

private:
    int d_;
    InitialConfig config_;
    Seed seed_;
    EngineMode mode_;
    std::int64_t horizon_;
    Point start_;
    std::int64_t time_ = 0;

    SiteTable table_;
    std::vector<Awakening> record_;

    // Coupled mode.
    struct ActiveParticle {
        std::uint64_t hash;      // walk_hash(seed, origin, index)
        Point pos;
        std::int64_t age;        // steps taken since awakening
        std::uint32_t origin_idx;  // index into record_ of the origin site
    };
    std::vector<ActiveParticle> particles_;
    std::vector<Point> wake_queue_;

    // Aggregated mode.
    std::vector<Point> occupied_;
    std::vector<std::pair<Point, std::uint64_t>> moves_;
    std::mt19937_64 rng_;

    std::uint64_t initial_total_ = 0;
    std::uint64_t sleeping_total_ = 0;
    std::uint64_t active_total_ = 0;
    std::uint64_t cap_events_ = 0;

    // Coupled mode refuses to materialize absurd per-site particle counts
    // (HeavyTail belongs in Aggregated mode).
    static constexpr std::uint64_t kCoupledCountCap = 10'000'000;

    SiteCell& touch(const Point& p);
    void wake_site(const Point& p, SiteCell& c);
    void step_coupled();
    void step_aggregated();
    void split_multinomial(std::uint64_t k, std::uint64_t* out);
};

// T(0, target) on the realization given by (seed, config, mode); nullopt when
// the horizon is exceeded (censoring is surfaced, never swallowed).
// Requires horizon >= ||target - start||_1.
std::optional<std::int64_t> passage_time(Dimension d, const InitialConfig& config,
                                         Seed seed, EngineMode mode,
                                         const Point& target,
                                         std::int64_t horizon);

// T(x, target) under the shared coupling: runs the process with only site x
// awakened, on the same walk family as any other process with this seed.
// Coupled mode by construction.
std::optional<std::int64_t> passage_time_from(const WalkStore& store,
                                              const Point& x,
                                              const Point& target,
                                              const InitialConfig& config,
                                              std::int64_t horizon);

}  // namespace frog
