// shape.cpp
#include "frog/shape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "frog/ct.hpp"
#include "frog/parallel.hpp"
#include "json.hpp"

namespace frog::shape {

// ---------------------- directions and snapshots ----------------------

std::vector<std::vector<double>> support_directions(int d) {
    std::vector<std::vector<double>> dirs;
    if (d == 2) {
        for (int k = 0; k < 64; ++k) {
            const double th = 2.0 * std::numbers::pi * k / 64.0;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    for (int axis = 0; axis < d; ++axis) {
        for (int sgn : {+1, -1}) {
            std::vector<double> u(static_cast<std::size_t>(d), 0.0);
            u[static_cast<std::size_t>(axis)] = sgn;
            dirs.push_back(std::move(u));
        }
    }
    if (d >= 3) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(d));
        for (int mask = 0; mask < (1 << d); ++mask) {
            std::vector<double> u(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                u[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? inv : -inv;
            dirs.push_back(std::move(u));
        }
    }
    return dirs;
}

std::vector<Vec2> hull2d(std::vector<Vec2> pts) {
    if (pts.size() <= 2) return pts;
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const Vec2& p : pts) {  // lower
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

namespace {

// Hull of the doubled integer cell corners (2x +- 1): exact arithmetic.
std::vector<std::pair<std::int64_t, std::int64_t>> corner_hull(
    const std::vector<Point>& xi) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    pts.reserve(4 * xi.size());
    for (const Point& p : xi)
        for (int dx : {-1, +1})
            for (int dy : {-1, +1})
                pts.emplace_back(2 * p[0] + dx, 2 * p[1] + dy);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    const auto cross = [](const std::pair<std::int64_t, std::int64_t>& o,
                          const std::pair<std::int64_t, std::int64_t>& a,
                          const std::pair<std::int64_t, std::int64_t>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

ShapeSnapshot make_snapshot(int d, std::int64_t n, std::vector<Point> xi) {
    ShapeSnapshot snap;
    snap.d = d;
    snap.n = n;
    snap.xi = std::move(xi);
    const double scale = snap.scale();
    const auto dirs = support_directions(d);
    if (d == 2) {
        const auto hull_i = corner_hull(snap.xi);
        snap.hull.reserve(hull_i.size());
        for (const auto& [hx, hy] : hull_i)
            snap.hull.push_back({static_cast<double>(hx) / (2.0 * scale),
                                 static_cast<double>(hy) / (2.0 * scale)});
        for (const auto& u : dirs) {
            double h = -1e300;
            for (const Vec2& v : snap.hull)
                h = std::max(h, v.x * u[0] + v.y * u[1]);
            snap.support.push_back(h);
        }
    } else {
        for (const auto& u : dirs) {
            double pad = 0;
            for (int i = 0; i < d; ++i) pad += std::fabs(u[static_cast<std::size_t>(i)]);
            double h = -1e300;
            for (const Point& p : snap.xi) {
                double dot = 0;
                for (int i = 0; i < d; ++i)
                    dot += static_cast<double>(p[i]) * u[static_cast<std::size_t>(i)];
                h = std::max(h, dot);
            }
            snap.support.push_back((h + 0.5 * pad) / scale);
        }
    }
    return snap;
}

ShapeSnapshot snapshot(const FrogEngine& engine) {
    return make_snapshot(engine.dim(), engine.time(), engine.xi());
}

ShapeSnapshot snapshot_at(const FrogEngine& engine, std::int64_t m) {
    if (m > engine.time())
        throw std::invalid_argument("snapshot_at: m exceeds engine time");
    std::vector<Point> xi;
    for (const auto& a : engine.record())
        if (a.time <= m) xi.push_back(a.site);
    return make_snapshot(engine.dim(), m, std::move(xi));
}

bool hull_within_scaled_diamond(const ShapeSnapshot& snap) {
    if (snap.d != 2) throw std::invalid_argument("hull_within_scaled_diamond: d = 2 only");
    // Corners are (2x +- 1) / (2n); require |v1| + |v2| <= 1 + 2/n, i.e.
    // |2x1 +- 1| + |2x2 +- 1| <= 2n + 4 in exact integers.
    const std::int64_t n = std::max<std::int64_t>(snap.n, 1);
    for (const Point& p : snap.xi) {
        const std::int64_t c =
            2 * std::llabs(p[0]) + 1 + 2 * std::llabs(p[1]) + 1;
        if (c > 2 * n + 4) return false;
    }
    return true;
}

bool sandwich_check(const ShapeSnapshot& a, const ShapeSnapshot& b, double eps) {
    if (!(eps >= 0 && eps < 1)) throw std::invalid_argument("sandwich_check: eps in [0,1)");
    if (a.support.size() != b.support.size())
        throw std::invalid_argument("sandwich_check: direction sets differ");
    for (std::size_t k = 0; k < a.support.size(); ++k) {
        const double ha = a.support[k], hb = b.support[k];
        if (ha > (1.0 + eps) * hb) return false;
        if (ha < (1.0 - eps) * hb) return false;
    }
    return true;
}

bool symmetry_check(const ShapeSnapshot& snap, double tol) {
    if (snap.d != 2) throw std::invalid_argument("symmetry_check: d = 2 only");
    const auto& h = snap.support;
    const std::size_t m = h.size();  // 64, closed under the dihedral group
    double href = 0;
    for (double v : h) href = std::max(href, std::fabs(v));
    if (href == 0) return true;
    // Every sample must sit within tol (relative to the max support) of its
    // dihedral-orbit average, i.e. of the symmetrized support function.
    for (std::size_t k = 0; k < m; ++k) {
        double orbit_sum = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            orbit_sum += h[(k + j * (m / 4)) % m];           // rotations
            orbit_sum += h[(m - k + j * (m / 4)) % m];       // reflections
        }
        const double orbit_mean = orbit_sum / 8.0;
        if (std::fabs(h[k] - orbit_mean) / href > tol) return false;
    }
    return true;
}

double smallball_fit(const ShapeSnapshot& snap) {
    std::unordered_set<Point, PointHash> awake;
    awake.reserve(snap.xi.size() * 2);
    for (const Point& p : snap.xi) awake.insert(p);
    const auto covered = [&](std::int64_t r) {
        bool ok = true;
        for_each_diamond_site(DiamondRegion(r, Point(snap.d)), snap.d,
                              [&](const Point& p) {
                                  if (ok && !awake.count(p)) ok = false;
                              });
        return ok;
    };
    std::int64_t lo = 0, hi = snap.n;
    if (!covered(0)) return 0.0;
    while (lo < hi) {
        const std::int64_t mid = (lo + hi + 1) / 2;
        if (covered(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return static_cast<double>(lo) / snap.scale();
}

// ---------------------- time constant ----------------------

MuEstimate estimate_mu(int d, const Point& direction,
                       std::span<const std::int64_t> n_grid, int replicas,
                       double horizon_factor, Seed seed,
                       const InitialConfig& config, EngineMode mode) {
    if (l1_norm(direction) == 0)
        throw std::invalid_argument("estimate_mu: direction must be nonzero");
    if (n_grid.size() < 2 || replicas < 2)
        throw std::invalid_argument("estimate_mu: need a grid and >= 2 replicas");
    std::vector<std::int64_t> grid(n_grid.begin(), n_grid.end());
    std::sort(grid.begin(), grid.end());
    const std::int64_t dir_norm = l1_norm(direction);
    const std::int64_t horizon_max = static_cast<std::int64_t>(
        std::ceil(horizon_factor * static_cast<double>(grid.back() * dir_norm)));

    // One run per replica covers the whole grid: T(n*dir) is read off the
    // same realization, which also pairs the bootstrap across grid points.
    const std::size_t g = grid.size();
    std::vector<std::vector<double>> t_of(g);  // [grid][replica], -1 censored
    for (auto& v : t_of) v.assign(static_cast<std::size_t>(replicas), -1.0);
    parallel_for(replicas, [&](int r) {
        FrogEngine eng(Dimension(d), config,
                       Seed{child_seed(seed.value, static_cast<std::uint64_t>(r))},
                       mode, horizon_max);
        std::size_t next = 0;
        std::vector<Point> targets;
        for (std::int64_t n : grid) targets.push_back(direction * n);
        while (eng.time() < horizon_max && next < g) {
            eng.step();
            while (next < g && eng.awaken_time(targets[next])) ++next;
        }
        // Record every resolved target against its own horizon
        // (factor * n * |dir|); unresolved ones stay censored.
        for (std::size_t i = 0; i < g; ++i) {
            const auto t = eng.awaken_time(targets[i]);
            if (!t) continue;
            const double limit =
                horizon_factor * static_cast<double>(grid[i] * dir_norm);
            if (static_cast<double>(*t) <= limit)
                t_of[i][static_cast<std::size_t>(r)] = static_cast<double>(*t);
        }
    });

    MuEstimate est;
    est.direction = direction;
    est.n_grid = grid;
    est.replicas = replicas;

    std::size_t censored = 0, total = 0;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < g; ++i) {
        double sum = 0;
        int cnt = 0;
        for (double t : t_of[i]) {
            ++total;
            if (t < 0) {
                ++censored;
            } else {
                sum += t;
                ++cnt;
            }
        }
        if (cnt > 0) {
            xs.push_back(static_cast<double>(grid[i]));
            ys.push_back(sum / cnt);
            est.mean_T.push_back(sum / cnt);
        } else {
            est.mean_T.push_back(-1);
        }
    }
    est.censored_fraction = total ? static_cast<double>(censored) / total : 0;
    est.reliable = est.censored_fraction <= 0.10;
    if (xs.size() < 2) {
        est.reliable = false;
        return est;
    }
    est.slope = stats::fit_line(xs, ys).slope;

    // Percentile bootstrap over replicas, paired across grid points.
    std::mt19937_64 rng(child_seed(seed.value, 0xb007ULL));
    std::uniform_int_distribution<int> pick(0, replicas - 1);
    std::vector<double> slopes;
    for (int b = 0; b < 400; ++b) {
        std::vector<double> bx, by;
        std::vector<int> idx(static_cast<std::size_t>(replicas));
        for (auto& i : idx) i = pick(rng);
        for (std::size_t i = 0; i < g; ++i) {
            double sum = 0;
            int cnt = 0;
            for (int r : idx) {
                const double t = t_of[i][static_cast<std::size_t>(r)];
                if (t >= 0) {
                    sum += t;
                    ++cnt;
                }
            }
            if (cnt > 0) {
                bx.push_back(static_cast<double>(grid[i]));
                by.push_back(sum / cnt);
            }
        }
        if (bx.size() >= 2) slopes.push_back(stats::fit_line(bx, by).slope);
    }
    if (!slopes.empty()) {
        std::sort(slopes.begin(), slopes.end());
        est.ci.lo = slopes[static_cast<std::size_t>(0.025 * (slopes.size() - 1))];
        est.ci.hi = slopes[static_cast<std::size_t>(0.975 * (slopes.size() - 1))];
    }
    return est;
}

MuNormChecks mu_norm_checks(const MuEstimate& ex, const MuEstimate& ey,
                            const MuEstimate& exy, const MuEstimate& e2x,
                            const MuEstimate& eneg) {
    MuNormChecks out;
    stats::Interval half{e2x.ci.lo / 2.0, e2x.ci.hi / 2.0};
    out.homogeneity = half.overlaps(ex.ci);
    const double slack = (ex.ci.width() + ey.ci.width());
    out.triangle = exy.slope <= ex.slope + ey.slope + slack;
    out.symmetry = ex.ci.overlaps(eneg.ci);
    out.values["mu_x"] = ex.slope;
    out.values["mu_y"] = ey.slope;
    out.values["mu_x_plus_y"] = exy.slope;
    out.values["mu_2x_half"] = e2x.slope / 2.0;
    out.values["mu_neg_x"] = eneg.slope;
    return out;
}

// ---------------------- regime reports ----------------------

void RegimeReport::add_check(const std::string& name, double value,
                             double threshold, bool ok) {
    checks.push_back({name, value, threshold, ok});
    pass = pass && ok;
}

std::string RegimeReport::to_json() const {
    nlohmann::json doc;
    doc["regime"] = regime;
    doc["pass"] = pass;
    doc["metrics"] = metrics;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["value"] = c.value;
        jc["threshold"] = c.threshold;
        jc["pass"] = c.pass;
        arr.push_back(jc);
    }
    doc["checks"] = arr;
    return doc.dump(2);
}

double theta(int d, int m) {
    if (d < 1) throw std::invalid_argument("theta: d >= 1");
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("theta: m must be even and >= 2");
    return 1.0 - std::pow(1.0 - 1.0 / (2.0 * d), m / 2.0);
}

OrientedPercolationState::OrientedPercolationState(double theta_param,
                                                   std::int64_t n, Seed seed)
    : n_(n), theta_(theta_param) {
    if (theta_ < 0 || theta_ > 1)
        throw std::invalid_argument("oriented_percolation: theta in [0,1]");
    if (n_ < 0) throw std::invalid_argument("oriented_percolation: n >= 0");
    build([&](std::int64_t x1, std::int64_t x2, int which) {
        const std::uint64_t hx =
            static_cast<std::uint64_t>(x1) * 0x9e3779b97f4a7c15ULL ^
            (static_cast<std::uint64_t>(x2) + 0x7f4a7c15ULL);
        const std::uint64_t h =
            splitmix64(splitmix64(seed.value ^ 0x0b5e55edULL) ^ splitmix64(hx) ^
                       (which ? 0xdeadbeefULL : 0x0ULL));
        return u01(h) <= theta_;
    });
}

OrientedPercolationState::OrientedPercolationState(
    std::int64_t n,
    const std::function<bool(std::int64_t, std::int64_t, int)>& open)
    : n_(n) {
    if (n_ < 0) throw std::invalid_argument("oriented_percolation: n >= 0");
    build(open);
}

void OrientedPercolationState::build(
    const std::function<bool(std::int64_t, std::int64_t, int)>& open) {
    in_cluster_.assign(static_cast<std::size_t>((n_ + 1) * (n_ + 2) / 2), false);
    in_cluster_[index(0, 0)] = true;
    cluster_size_ = 1;
    max_level_ = 0;
    for (std::int64_t lev = 0; lev < n_; ++lev) {
        for (std::int64_t x1 = 0; x1 <= lev; ++x1) {
            const std::int64_t x2 = lev - x1;
            if (!in_cluster_[index(x1, x2)]) continue;
            if (open(x1, x2, 0) && !in_cluster_[index(x1 + 1, x2)]) {
                in_cluster_[index(x1 + 1, x2)] = true;
                ++cluster_size_;
                max_level_ = std::max(max_level_, lev + 1);
            }
            if (open(x1, x2, 1) && !in_cluster_[index(x1, x2 + 1)]) {
                in_cluster_[index(x1, x2 + 1)] = true;
                ++cluster_size_;
                max_level_ = std::max(max_level_, lev + 1);
            }
        }
    }
}

bool OrientedPercolationState::in_cluster(std::int64_t x1, std::int64_t x2) const {
    if (x1 < 0 || x2 < 0 || x1 + x2 > n_) return false;
    return in_cluster_[index(x1, x2)];
}

std::vector<std::int64_t> OrientedPercolationState::cluster_on_level(
    std::int64_t level) const {
    std::vector<std::int64_t> out;
    for (std::int64_t x1 = 0; x1 <= level; ++x1)
        if (in_cluster(x1, level - x1)) out.push_back(x1);
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>>
OrientedPercolationState::cluster_sites() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(cluster_size_);
    for (std::int64_t lev = 0; lev <= n_; ++lev)
        for (std::int64_t x1 = 0; x1 <= lev; ++x1)
            if (in_cluster_[index(x1, lev - x1)]) out.emplace_back(x1, lev - x1);
    return out;
}

// ---------------------- flat edge ----------------------

FlatEdgeReplica flat_edge_replica(int m, std::int64_t n, Seed seed) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("flat_edge_replica: m must be even and >= 2");
    const int d = 2;
    // Labels: particle indices [0, m/2) are "right", [m/2, m) are "up". The
    // bond opens when at least one correspondingly labeled particle's first
    // step is +e1 resp. +e2 (direction codes 0 and 2).
    const auto open = [&](std::int64_t x1, std::int64_t x2, int which) {
        const Point site{x1, x2};
        const std::uint32_t lo = which == 0 ? 0u : static_cast<std::uint32_t>(m / 2);
        const std::uint32_t hi = which == 0 ? static_cast<std::uint32_t>(m / 2)
                                            : static_cast<std::uint32_t>(m);
        const unsigned want = which == 0 ? 0u : 2u;
        for (std::uint32_t j = lo; j < hi; ++j)
            if (step_dir(walk_hash(seed, site, j), 1, d) == want) return true;
        return false;
    };
    OrientedPercolationState perc(n, open);

    FrogEngine eng(Dimension(d), InitialConfig::m_per_site(static_cast<std::uint32_t>(m)),
                   seed, EngineMode::Coupled, n);
    eng.run(n);

    FlatEdgeReplica rep;
    rep.cluster_size = perc.cluster_size();
    rep.max_level = perc.max_level();
    rep.reached_top = perc.max_level() == n;
    for (const auto& [x1, x2] : perc.cluster_sites()) {
        const auto t = eng.awaken_time(Point{x1, x2});
        if (!t || *t != x1 + x2) ++rep.violations;
    }
    // Largest beta such that every level-n site with min coordinate >= beta*n
    // is tight (awakened exactly at n). Sites in the cluster are tight by the
    // domination just verified.
    std::vector<bool> tight(static_cast<std::size_t>(n + 1), false);
    for (std::int64_t x1 : perc.cluster_on_level(n))
        tight[static_cast<std::size_t>(x1)] = true;
    std::int64_t worst = -1;  // max min-coordinate among non-tight sites
    for (std::int64_t x1 = 0; x1 <= n; ++x1)
        if (!tight[static_cast<std::size_t>(x1)])
            worst = std::max(worst, std::min(x1, n - x1));
    rep.beta_hat = worst < 0 ? 0.0
                             : std::min(0.5, static_cast<double>(worst + 1) /
                                                 static_cast<double>(n));
    return rep;
}

RegimeReport flat_edge_experiment(int m, std::int64_t n, int replicas, Seed seed) {
    if (replicas < 1) throw std::invalid_argument("flat_edge_experiment: replicas >= 1");
    std::vector<FlatEdgeReplica> reps(static_cast<std::size_t>(replicas));
    parallel_for(replicas, [&](int r) {
        reps[static_cast<std::size_t>(r)] = flat_edge_replica(
            m, n, Seed{child_seed(seed.value, static_cast<std::uint64_t>(r))});
    });

    const double th = theta(2, m);
    std::uint64_t violations = 0;
    double reached = 0, mean_cluster = 0, mean_beta = 0;
    int beta_count = 0;
    for (const auto& rep : reps) {
        violations += rep.violations;
        reached += rep.reached_top ? 1.0 : 0.0;
        mean_cluster += static_cast<double>(rep.cluster_size);
        if (rep.reached_top) {
            mean_beta += rep.beta_hat;
            ++beta_count;
        }
    }
    reached /= replicas;
    mean_cluster /= replicas;

    RegimeReport report;
    report.regime = "FlatEdge";
    report.metrics["m"] = m;
    report.metrics["n"] = static_cast<double>(n);
    report.metrics["theta"] = th;
    report.metrics["replicas"] = replicas;
    report.metrics["mean_cluster_size"] = mean_cluster;
    report.metrics["reached_fraction"] = reached;
    report.metrics["mean_beta_hat"] =
        beta_count ? mean_beta / beta_count : 0.5;
    report.add_check("domination_violations", static_cast<double>(violations),
                     0.0, violations == 0);
    if (th < 0.5)
        report.add_check("all_clusters_finite", reached, 0.0, reached == 0.0);
    else if (th >= 0.85)
        report.add_check("reached_fraction_min", reached, 0.5, reached >= 0.5);
    return report;
}

// ---------------------- full diamond ----------------------

FullDiamondReplica full_diamond_replica(double delta, int d, std::int64_t n,
                                        Seed seed) {
    if (!(delta > 0 && delta < d))
        throw std::invalid_argument("full_diamond: need 0 < delta < d");
    const std::int64_t t_run = static_cast<std::int64_t>(std::ceil(1.2 * n));
    const std::int64_t r_cov = (9 * n) / 10;
    const auto coverage = [&](FrogEngine& eng) {
        std::int64_t hit = 0, total = 0;
        for_each_diamond_site(DiamondRegion(r_cov, Point(d)), d,
                              [&](const Point& p) {
                                  ++total;
                                  if (eng.awaken_time(p)) ++hit;
                              });
        return static_cast<double>(hit) / static_cast<double>(total);
    };
    FullDiamondReplica rep;
    {
        FrogEngine heavy(Dimension(d), InitialConfig::heavy_tail(delta), seed,
                         EngineMode::Aggregated, t_run);
        heavy.run(t_run);
        rep.coverage_heavy = coverage(heavy);
        rep.cap_events = heavy.cap_events();
    }
    {
        FrogEngine base(Dimension(d), InitialConfig::one_per_site(), seed,
                        EngineMode::Aggregated, t_run);
        base.run(t_run);
        rep.coverage_baseline = coverage(base);
    }
    return rep;
}

RegimeReport full_diamond_experiment(double delta, int d, std::int64_t n,
                                     int replicas, Seed seed) {
    if (replicas < 1) throw std::invalid_argument("full_diamond_experiment: replicas >= 1");
    std::vector<FullDiamondReplica> reps(static_cast<std::size_t>(replicas));
    parallel_for(replicas, [&](int r) {
        reps[static_cast<std::size_t>(r)] = full_diamond_replica(
            delta, d, n, Seed{child_seed(seed.value, static_cast<std::uint64_t>(r))});
    });
    double mean_heavy = 0, mean_base = 0, wins = 0, caps = 0;
    for (const auto& rep : reps) {
        mean_heavy += rep.coverage_heavy;
        mean_base += rep.coverage_baseline;
        wins += rep.coverage_heavy > rep.coverage_baseline ? 1.0 : 0.0;
        caps += static_cast<double>(rep.cap_events);
    }
    mean_heavy /= replicas;
    mean_base /= replicas;
    wins /= replicas;

    RegimeReport report;
    report.regime = "FullDiamond";
    report.metrics["delta"] = delta;
    report.metrics["d"] = d;
    report.metrics["n"] = static_cast<double>(n);
    report.metrics["replicas"] = replicas;
    report.metrics["mean_coverage_heavy"] = mean_heavy;
    report.metrics["mean_coverage_baseline"] = mean_base;
    report.metrics["cap_events_total"] = caps;
    // Regression thresholds from measured baselines.
    report.add_check("paired_win_fraction", wins, 0.95, wins >= 0.95);
    report.add_check("mean_coverage_heavy", mean_heavy, 0.9, mean_heavy >= 0.9);
    return report;
}

// ---------------------- d = 1 interval ----------------------

RegimeReport interval_1d(std::int64_t n, int replicas, Seed seed) {
    if (replicas < 1) throw std::invalid_argument("interval_1d: replicas >= 1");
    struct Row {
        double ratio = 0;       // R/L at n
        double r_half = 0;      // R/(n/2) at n/2
        double r_full = 0;      // R/n at n
        bool is_interval = true;
    };
    std::vector<Row> rows(static_cast<std::size_t>(replicas));
    parallel_for(replicas, [&](int r) {
        FrogEngine eng(Dimension(1), InitialConfig::one_per_site(),
                       Seed{child_seed(seed.value, static_cast<std::uint64_t>(r))},
                       EngineMode::Aggregated, n);
        eng.run(n / 2);
        const auto extent = [&](const FrogEngine& e) {
            std::int64_t right = 0, left = 0;
            for (const auto& a : e.record()) {
                right = std::max(right, a.site[0]);
                left = std::max(left, -a.site[0]);
            }
            return std::pair{left, right};
        };
        const auto [l_half, r_half] = extent(eng);
        Row row;
        row.r_half = static_cast<double>(r_half) / (static_cast<double>(n) / 2.0);
        eng.run(n);
        const auto [l_full, r_full] = extent(eng);
        row.r_full = static_cast<double>(r_full) / static_cast<double>(n);
        row.ratio = l_full > 0 ? static_cast<double>(r_full) / static_cast<double>(l_full)
                               : 0.0;
        // xi must be exactly the integer interval [-L, R].
        row.is_interval =
            eng.xi_size() == static_cast<std::size_t>(l_full + r_full + 1);
        rows[static_cast<std::size_t>(r)] = row;
    });

    double mean_ratio = 0, mean_half = 0, mean_full = 0;
    int interval_violations = 0;
    for (const auto& row : rows) {
        mean_ratio += row.ratio;
        mean_half += row.r_half;
        mean_full += row.r_full;
        if (!row.is_interval) ++interval_violations;
    }
    mean_ratio /= replicas;
    mean_half /= replicas;
    mean_full /= replicas;

    RegimeReport report;
    report.regime = "Interval1D";
    report.metrics["n"] = static_cast<double>(n);
    report.metrics["replicas"] = replicas;
    report.metrics["mean_R_over_L"] = mean_ratio;
    report.metrics["mean_R_over_n_half"] = mean_half;
    report.metrics["mean_R_over_n_full"] = mean_full;
    report.add_check("interval_violations", interval_violations, 0.0,
                     interval_violations == 0);
    report.add_check("R_over_L_within_5pct", std::fabs(mean_ratio - 1.0), 0.05,
                     std::fabs(mean_ratio - 1.0) <= 0.05);
    const double rel = std::fabs(mean_full - mean_half) /
                       std::max(1e-12, mean_full);
    report.add_check("R_over_n_stability_10pct", rel, 0.10, rel <= 0.10);
    return report;
}

// ---------------------- passage-time tail ----------------------

TailDiag passage_tail_diag(int d, const Point& x0,
                           std::span<const std::int64_t> n_grid, int replicas,
                           Seed seed) {
    if (replicas < 1) throw std::invalid_argument("passage_tail_diag: replicas >= 1");
    if (n_grid.empty()) throw std::invalid_argument("passage_tail_diag: empty grid");
    std::vector<std::int64_t> grid(n_grid.begin(), n_grid.end());
    std::sort(grid.begin(), grid.end());
    const std::int64_t horizon = grid.back();
    if (horizon < l1_norm(x0))
        throw std::invalid_argument("passage_tail_diag: horizon < ||x0||_1");

    std::vector<double> t_vals(static_cast<std::size_t>(replicas));
    std::vector<char> censored(static_cast<std::size_t>(replicas), 0);
    parallel_for(replicas, [&](int r) {
        const auto t = passage_time(
            Dimension(d), InitialConfig::one_per_site(),
            Seed{child_seed(seed.value, static_cast<std::uint64_t>(r))},
            EngineMode::Aggregated, x0, horizon);
        if (t) {
            t_vals[static_cast<std::size_t>(r)] = static_cast<double>(*t);
        } else {
            // Censored samples enter the tail as lower bounds only.
            t_vals[static_cast<std::size_t>(r)] = static_cast<double>(horizon);
            censored[static_cast<std::size_t>(r)] = 1;
        }
    });

    TailDiag diag;
    diag.n_grid = grid;
    std::size_t cens = 0;
    for (char c : censored) cens += c;
    diag.censored_fraction = static_cast<double>(cens) / replicas;

    const auto tails_of = [&](std::span<const double> ts) {
        std::vector<double> tails;
        for (std::int64_t n : grid) {
            std::size_t count = 0;
            for (double t : ts)
                if (t >= static_cast<double>(n)) ++count;
            tails.push_back(static_cast<double>(count) / static_cast<double>(ts.size()));
        }
        return tails;
    };
    diag.tail = tails_of(t_vals);

    const auto gamma_of = [&](std::span<const double> tails) -> std::optional<double> {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < tails.size(); ++i) {
            if (tails[i] > 0 && tails[i] < 1 && grid[i] >= 2) {
                lx.push_back(std::log(static_cast<double>(grid[i])));
                ly.push_back(std::log(-std::log(tails[i])));
            }
        }
        if (lx.size() < 2) return std::nullopt;
        return stats::fit_line(lx, ly).slope;
    };
    if (auto gamma = gamma_of(diag.tail)) diag.gamma_hat = *gamma;

    std::mt19937_64 rng(child_seed(seed.value, 0x7a11ULL));
    std::uniform_int_distribution<std::size_t> pick(0, t_vals.size() - 1);
    std::vector<double> gammas;
    std::vector<double> sample(t_vals.size());
    for (int b = 0; b < 400; ++b) {
        for (auto& s : sample) s = t_vals[pick(rng)];
        if (auto gamma = gamma_of(tails_of(sample))) gammas.push_back(*gamma);
    }
    if (!gammas.empty()) {
        std::sort(gammas.begin(), gammas.end());
        diag.gamma_ci.lo = gammas[static_cast<std::size_t>(0.025 * (gammas.size() - 1))];
        diag.gamma_ci.hi = gammas[static_cast<std::size_t>(0.975 * (gammas.size() - 1))];
    }
    return diag;
}

// ---------------------- continuous time ----------------------

CtGrowthCurve ct_growth_curve(int d, std::span<const double> t_grid,
                              int replicas, Seed seed) {
    if (replicas < 1) throw std::invalid_argument("ct_growth_curve: replicas >= 1");
    std::vector<double> grid(t_grid.begin(), t_grid.end());
    std::sort(grid.begin(), grid.end());
    const std::size_t g = grid.size();
    std::vector<std::vector<double>> radii(static_cast<std::size_t>(replicas),
                                           std::vector<double>(g, 0.0));
    std::vector<char> monotone(static_cast<std::size_t>(replicas), 1);
    parallel_for(replicas, [&](int r) {
        CtEngine eng(Dimension(d), InitialConfig::one_per_site(),
                     Seed{child_seed(seed.value, static_cast<std::uint64_t>(r))},
                     CtMode::Thinned,
                     static_cast<std::int64_t>(grid.back() * 2) + 16);
        double prev = 0;
        for (std::size_t i = 0; i < g; ++i) {
            eng.run_until(grid[i]);
            const double radius = static_cast<double>(eng.max_l1_radius());
            radii[static_cast<std::size_t>(r)][i] = radius;
            if (radius < prev) monotone[static_cast<std::size_t>(r)] = 0;
            prev = radius;
        }
    });

    CtGrowthCurve curve;
    curve.t_grid = grid;
    for (std::size_t i = 0; i < g; ++i) {
        double s = 0;
        for (int r = 0; r < replicas; ++r)
            s += radii[static_cast<std::size_t>(r)][i];
        curve.mean_radius.push_back(s / replicas);
    }
    for (char m : monotone)
        if (!m) curve.radii_monotone = false;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < g; ++i) {
        if (grid[i] > 0 && curve.mean_radius[i] > 0) {
            lx.push_back(std::log(grid[i]));
            ly.push_back(std::log(curve.mean_radius[i]));
        }
    }
    if (lx.size() >= 2) curve.loglog = stats::fit_line(lx, ly);
    return curve;
}

RegimeReport ct_growth_diag(int d, std::span<const double> t_grid, int replicas,
                            Seed seed) {
    const auto curve = ct_growth_curve(d, t_grid, replicas, seed);
    RegimeReport report;
    report.regime = "ContinuousTime";
    report.metrics["d"] = d;
    report.metrics["replicas"] = replicas;
    report.metrics["loglog_slope"] = curve.loglog.slope;
    report.metrics["loglog_r2"] = curve.loglog.r2;
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i)
        report.metrics["mean_radius_t" + std::to_string(static_cast<long long>(
                           curve.t_grid[i]))] = curve.mean_radius[i];
    report.add_check("radii_monotone", curve.radii_monotone ? 1.0 : 0.0, 1.0,
                     curve.radii_monotone);
    report.add_check("loglog_slope_low", curve.loglog.slope, 0.8,
                     curve.loglog.slope >= 0.8);
    report.add_check("loglog_slope_high", curve.loglog.slope, 1.2,
                     curve.loglog.slope <= 1.2);
    return report;
}

}  // namespace frog::shape
