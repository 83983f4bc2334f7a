// engine.cpp
#include "frog/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace frog {

// ---------------------- InitialConfig ----------------------

InitialConfig InitialConfig::m_per_site(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("MPerSite: m >= 1");
    InitialConfig c;
    c.law = Law::MPerSite;
    c.m = m;
    return c;
}

InitialConfig InitialConfig::heavy_tail(double delta) {
    if (!(delta > 0)) throw std::invalid_argument("HeavyTail: delta > 0 required");
    InitialConfig c;
    c.law = Law::HeavyTail;
    c.delta = delta;
    return c;
}

int InitialConfig::heavy_tail_cap(int d) {
    // Largest N with (2d)^N <= 2^62, itself capped at 20.
    const double limit = 62.0 * std::log(2.0) / std::log(2.0 * d);
    return std::min(20, static_cast<int>(limit));
}

std::uint64_t InitialConfig::count_at(Seed seed, const Point& site, int d,
                                      bool* capped) const {
    if (capped) *capped = false;
    switch (law) {
        case Law::OnePerSite:
            return 1;
        case Law::MPerSite:
            return m;
        case Law::HeavyTail: {
            // Per-site pure draw, independent of walk hashing.
            const std::uint64_t h =
                splitmix64(site.hash() ^ splitmix64(seed.value ^ 0x5bf0f5bd9ae8cc4dULL));
            const double u = u01(h);
            double n_real = std::floor(std::pow(u, -1.0 / delta));
            int n = n_real >= 1e9 ? 1'000'000'000 : static_cast<int>(n_real);
            if (n < 1) n = 1;
            const int cap = heavy_tail_cap(d);
            if (n > cap) {
                n = cap;
                if (capped) *capped = true;
            }
            std::uint64_t eta = 1;
            for (int i = 0; i < n; ++i) eta *= static_cast<std::uint64_t>(2 * d);
            return eta;
        }
    }
    return 1;
}

std::string InitialConfig::label() const {
    switch (law) {
        case Law::OnePerSite: return "one-per-site";
        case Law::MPerSite: return "m-per-site(" + std::to_string(m) + ")";
        case Law::HeavyTail: return "heavy-tail(" + std::to_string(delta) + ")";
    }
    return "?";
}

// ---------------------- SiteTable ----------------------

SiteTable::SiteTable(int d, std::int64_t radius, std::size_t dense_budget)
    : d_(d), radius_(radius) {
    double cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<double>(2 * radius + 1);
    if (radius >= 0 && cells <= static_cast<double>(dense_budget)) {
        dense_ = true;
        std::int64_t stride = 1;
        for (int i = d - 1; i >= 0; --i) {
            stride_[static_cast<std::size_t>(i)] = stride;
            stride *= 2 * radius + 1;
        }
        cells_.assign(static_cast<std::size_t>(cells), SiteCell{});
    }
}

std::int64_t SiteTable::dense_index(const Point& p) const {
    std::int64_t idx = 0;
    for (int i = 0; i < d_; ++i) {
        const std::int64_t c = p[i];
        if (c < -radius_ || c > radius_) return -1;
        idx += (c + radius_) * stride_[static_cast<std::size_t>(i)];
    }
    return idx;
}

SiteCell& SiteTable::cell(const Point& p) {
    if (dense_) {
        const std::int64_t idx = dense_index(p);
        if (idx >= 0) return cells_[static_cast<std::size_t>(idx)];
    }
    return sparse_[p];
}

const SiteCell* SiteTable::find(const Point& p) const {
    if (dense_) {
        const std::int64_t idx = dense_index(p);
        if (idx >= 0) {
            const SiteCell& c = cells_[static_cast<std::size_t>(idx)];
            return c.sleeping == SiteCell::kUninit ? nullptr : &c;
        }
    }
    auto it = sparse_.find(p);
    return it == sparse_.end() ? nullptr : &it->second;
}

// ---------------------- FrogEngine ----------------------

FrogEngine::FrogEngine(Dimension d, InitialConfig config, Seed seed,
                       EngineMode mode, std::int64_t horizon, Point start)
    : d_(d.d),
      config_(config),
      seed_(seed),
      mode_(mode),
      horizon_(horizon),
      start_(start.dim() == 0 ? Point(d.d) : start),
      table_(d.d, horizon + l1_norm(start.dim() == 0 ? Point(d.d) : start)),
      rng_(child_seed(seed.value, 0xa66dee9aULL)) {
    if (horizon_ < 0) throw std::invalid_argument("FrogEngine: horizon >= 0");
    if (start_.dim() != d_) throw std::invalid_argument("FrogEngine: start dim mismatch");

    bool capped = false;
    const std::uint64_t count = config_.count_at(seed_, start_, d_, &capped);
    if (capped) ++cap_events_;
    SiteCell& c = table_.cell(start_);
    c.sleeping = 0;
    c.awaken_time = 0;
    table_.note_touched(start_);
    initial_total_ = count;
    active_total_ = count;
    record_.push_back({start_, 0});

    if (mode_ == EngineMode::Coupled) {
        if (count > kCoupledCountCap)
            throw std::runtime_error(
                "Coupled mode cannot materialize " + std::to_string(count) +
                " particles on one site; use Aggregated mode");
        particles_.reserve(1024);
        for (std::uint64_t j = 0; j < count; ++j)
            particles_.push_back({walk_hash(seed_, start_, static_cast<std::uint32_t>(j)),
                                  start_, 0, 0});
    } else {
        c.active = count;
        occupied_.push_back(start_);
    }
}

SiteCell& FrogEngine::touch(const Point& p) {
    SiteCell& c = table_.cell(p);
    if (c.sleeping == SiteCell::kUninit) {
        bool capped = false;
        const std::uint64_t count = config_.count_at(seed_, p, d_, &capped);
        if (capped) ++cap_events_;
        c.sleeping = count;
        initial_total_ += count;
        sleeping_total_ += count;
        table_.note_touched(p);
    }
    return c;
}

void FrogEngine::wake_site(const Point& p, SiteCell& c) {
    const std::uint64_t k = c.sleeping;
    c.sleeping = 0;
    c.awaken_time = time_;
    sleeping_total_ -= k;
    active_total_ += k;
    record_.push_back({p, time_});
    if (mode_ == EngineMode::Coupled) {
        if (k > kCoupledCountCap)
            throw std::runtime_error("Coupled mode: per-site count too large");
        const std::uint32_t origin_idx = static_cast<std::uint32_t>(record_.size() - 1);
        for (std::uint64_t j = 0; j < k; ++j)
            particles_.push_back({walk_hash(seed_, p, static_cast<std::uint32_t>(j)),
                                  p, 0, origin_idx});
    } else {
        c.active += k;
    }
}

void FrogEngine::step_coupled() {
    ++time_;
    wake_queue_.clear();
    const std::size_t moving = particles_.size();  // newly woken don't move
    for (std::size_t i = 0; i < moving; ++i) {
        ActiveParticle& p = particles_[i];
        ++p.age;
        p.pos.move(step_dir(p.hash, static_cast<std::uint64_t>(p.age), d_));
        SiteCell& c = touch(p.pos);
        if (c.sleeping > 0) wake_queue_.push_back(p.pos);
    }
    for (const Point& site : wake_queue_) {
        SiteCell& c = table_.cell(site);
        if (c.sleeping > 0) wake_site(site, c);  // second arrival finds 0
    }
}

void FrogEngine::split_multinomial(std::uint64_t k, std::uint64_t* out) {
    const unsigned dirs = static_cast<unsigned>(2 * d_);
    for (unsigned j = 0; j < dirs; ++j) out[j] = 0;
    if (k <= 32) {
        for (std::uint64_t i = 0; i < k; ++i)
            ++out[bounded(rng_(), dirs)];
        return;
    }
    std::uint64_t rest = k;
    for (unsigned j = 0; j + 1 < dirs; ++j) {
        if (rest == 0) return;
        std::binomial_distribution<std::uint64_t> bin(rest, 1.0 / (dirs - j));
        const std::uint64_t take = bin(rng_);
        out[j] = take;
        rest -= take;
    }
    out[dirs - 1] = rest;
}

void FrogEngine::step_aggregated() {
    ++time_;
    moves_.clear();
    for (const Point& site : occupied_) {
        SiteCell& c = table_.cell(site);
        if (c.active > 0) {
            moves_.emplace_back(site, c.active);
            c.active = 0;
        }
    }
    occupied_.clear();
    std::uint64_t split[2 * kMaxDim];
    for (const auto& [site, count] : moves_) {
        split_multinomial(count, split);
        for (unsigned dir = 0; dir < static_cast<unsigned>(2 * d_); ++dir) {
            if (split[dir] == 0) continue;
            Point np = site;
            np.move(dir);
            SiteCell& c = touch(np);
            if (c.active == 0) occupied_.push_back(np);
            c.active += split[dir];
            if (c.sleeping > 0) wake_site(np, c);
        }
    }
}

void FrogEngine::step() {
    if (time_ >= horizon_)
        throw std::invalid_argument("step: horizon reached; construct with a larger horizon");
    if (mode_ == EngineMode::Coupled)
        step_coupled();
    else
        step_aggregated();
}

void FrogEngine::run(std::int64_t n) {
    if (n < time_) throw std::invalid_argument("run: n >= current time required");
    if (n > horizon_) throw std::invalid_argument("run: n exceeds engine horizon");
    while (time_ < n) step();
}

std::optional<std::int64_t> FrogEngine::awaken_time(const Point& p) const {
    const SiteCell* c = table_.find(p);
    if (c == nullptr || c->awaken_time < 0) return std::nullopt;
    return c->awaken_time;
}

std::vector<Point> FrogEngine::xi() const {
    std::vector<Point> out;
    out.reserve(record_.size());
    for (const auto& a : record_) out.push_back(a.site);
    return out;
}

std::int64_t FrogEngine::max_l1_radius() const {
    std::int64_t r = 0;
    for (const auto& a : record_) r = std::max(r, l1_norm(a.site - start_));
    return r;
}

bool FrogEngine::conservation_ok() const {
    if (sleeping_total_ + active_total_ != initial_total_) return false;
    if (mode_ == EngineMode::Coupled) {
        // Per-origin recount: actives from each origin + residual sleepers
        // must equal the site's realized initial count.
        std::unordered_map<Point, std::uint64_t, PointHash> per_origin;
        for (const auto& p : particles_)
            ++per_origin[record_[p.origin_idx].site];
        std::uint64_t sleeping = 0;
        for (const Point& site : table_.touched()) {
            const SiteCell* c = table_.find(site);
            if (c == nullptr) return false;
            sleeping += c->sleeping;
            const std::uint64_t active_here =
                c->awaken_time >= 0 ? per_origin[site] : 0;
            const std::uint64_t expect = config_.count_at(seed_, site, d_);
            if (c->sleeping + active_here != expect) return false;
        }
        return sleeping == sleeping_total_ &&
               particles_.size() == active_total_;
    }
    std::uint64_t sleeping = 0, active = 0;
    for (const Point& site : table_.touched()) {
        const SiteCell* c = table_.find(site);
        if (c == nullptr) return false;
        sleeping += c->sleeping;
        active += c->active;
    }
    return sleeping == sleeping_total_ && active == active_total_;
}

bool FrogEngine::xi_connected() const {
    std::unordered_set<Point, PointHash> awake;
    awake.reserve(record_.size() * 2);
    for (const auto& a : record_) awake.insert(a.site);
    std::vector<Point> frontier{start_};
    std::unordered_set<Point, PointHash> seen{start_};
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

std::string FrogEngine::record_csv() const {
    std::vector<Awakening> rows = record_;
    std::sort(rows.begin(), rows.end(), [](const Awakening& a, const Awakening& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.site < b.site;
    });
    std::string out;
    for (int i = 0; i < d_; ++i) out += "x" + std::to_string(i + 1) + ",";
    out += "T\n";
    for (const auto& a : rows)
        out += a.site.csv() + "," + std::to_string(a.time) + "\n";
    return out;
}

std::string FrogEngine::snapshot_json() const {
    std::vector<Point> sites = table_.touched();
    std::sort(sites.begin(), sites.end());
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : sites) {
        const SiteCell* c = table_.find(p);
        nlohmann::json site;
        nlohmann::json coords = nlohmann::json::array();
        for (int i = 0; i < d_; ++i) coords.push_back(p[i]);
        site["coords"] = coords;
        site["sleeping"] = c->sleeping;
        if (c->awaken_time >= 0)
            site["awaken_time"] = c->awaken_time;
        else
            site["awaken_time"] = nullptr;
        arr.push_back(site);
    }
    nlohmann::json doc;
    doc["time"] = time_;
    doc["sites"] = arr;
    return doc.dump();
}

// ---------------------- passage times ----------------------

std::optional<std::int64_t> passage_time(Dimension d, const InitialConfig& config,
                                         Seed seed, EngineMode mode,
                                         const Point& target,
                                         std::int64_t horizon) {
    if (horizon < l1_norm(target))
        throw std::invalid_argument("passage_time: horizon < ||target||_1");
    FrogEngine eng(d, config, seed, mode, horizon);
    if (auto t = eng.awaken_time(target)) return t;
    while (eng.time() < horizon) {
        eng.step();
        if (auto t = eng.awaken_time(target)) return t;
    }
    return std::nullopt;
}

std::optional<std::int64_t> passage_time_from(const WalkStore& store,
                                              const Point& x,
                                              const Point& target,
                                              const InitialConfig& config,
                                              std::int64_t horizon) {
    if (horizon < l1_norm(target - x))
        throw std::invalid_argument("passage_time_from: horizon < ||target - x||_1");
    FrogEngine eng(Dimension(store.dim()), config, store.seed(),
                   EngineMode::Coupled, horizon, x);
    if (auto t = eng.awaken_time(target)) return t;
    while (eng.time() < horizon) {
        eng.step();
        if (auto t = eng.awaken_time(target)) return t;
    }
    return std::nullopt;
}

}  // namespace frog
