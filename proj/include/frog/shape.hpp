// shape.hpp — empirical asymptotics: time-constant estimation, shape
// extraction with the sandwich/symmetry checks, d=1 interval growth, the
// oriented-percolation flat-edge coupling, the heavy-tail full-diamond
// experiment, passage-time tail diagnostics and continuous-time growth.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frog/engine.hpp"
#include "frog/lattice.hpp"
#include "frog/stats.hpp"

namespace frog::shape {

struct Vec2 {
    double x = 0, y = 0;
};

// Unit directions (L2-normalized) used for support-function sampling:
// 64 evenly spaced angles for d = 2; the 2d axis directions plus all +-1
// diagonals for d >= 3. The d = 2 set is closed under the dihedral symmetries
// of the lattice, which makes the symmetry check an exact index permutation.
std::vector<std::vector<double>> support_directions(int d);

// (n, xi_n) plus the rescaled derived data: for d = 2 the convex hull of the
// cell corners of xi_bar/n (monotone chain, counterclockwise), for every d
// the support-function samples over support_directions(d).
struct ShapeSnapshot {
    int d = 0;
    std::int64_t n = 0;
    std::vector<Point> xi;
    std::vector<Vec2> hull;         // d = 2 only
    std::vector<double> support;

    double scale() const { return n > 0 ? static_cast<double>(n) : 1.0; }
};

ShapeSnapshot make_snapshot(int d, std::int64_t n, std::vector<Point> xi);
ShapeSnapshot snapshot(const FrogEngine& engine);
// Snapshot of xi_m for m <= engine.time(), read off the awakening record.
ShapeSnapshot snapshot_at(const FrogEngine& engine, std::int64_t m);

// Andrew's monotone chain; returns the hull counterclockwise, no repeated
// endpoint. Collinear points are dropped.
std::vector<Vec2> hull2d(std::vector<Vec2> pts);

// Exact outer bound: every rescaled hull vertex satisfies
// ||v||_1 <= (n+1)/n <= 1 + 2/n (half-integer corners, so the comparison is
// exact in integer arithmetic on 2n * v).
bool hull_within_scaled_diamond(const ShapeSnapshot& snap);

// Support-function sandwich against the hull of the second snapshot:
// (1-eps) h_b <= h_a <= (1+eps) h_b on the shared direction set.
bool sandwich_check(const ShapeSnapshot& a, const ShapeSnapshot& b, double eps);

// Support samples invariant (within tol, relative) under the dihedral group
// of the square. d = 2 only.
bool symmetry_check(const ShapeSnapshot& snap, double tol);

// Largest delta = r/n such that every site of the L1 ball of radius r is
// awakened (binary search over r).
double smallball_fit(const ShapeSnapshot& snap);

// ---------------------- time constant ----------------------

struct MuEstimate {
    Point direction;
    std::vector<std::int64_t> n_grid;
    double slope = 0;             // time units per lattice step of n*direction
    stats::Interval ci;           // bootstrap CI of the slope
    int replicas = 0;
    double censored_fraction = 0; // censored samples never enter the slope
    bool reliable = true;         // false when censored_fraction > 10%
    std::vector<double> mean_T;   // per grid point, uncensored means
};

MuEstimate estimate_mu(int d, const Point& direction,
                       std::span<const std::int64_t> n_grid, int replicas,
                       double horizon_factor, Seed seed,
                       const InitialConfig& config = InitialConfig::one_per_site(),
                       EngineMode mode = EngineMode::Aggregated);

struct MuNormChecks {
    bool homogeneity = false;  // mu(2x)/2 vs mu(x): CI overlap
    bool triangle = false;     // mu(x+y) <= mu(x) + mu(y) + 2 CI widths
    bool symmetry = false;     // mu(x) vs mu(-x): CI overlap
    std::map<std::string, double> values;
};

MuNormChecks mu_norm_checks(const MuEstimate& ex, const MuEstimate& ey,
                            const MuEstimate& exy, const MuEstimate& e2x,
                            const MuEstimate& eneg);

// ---------------------- regime experiments ----------------------

// Self-describing pass/fail report: each check keeps its threshold next to
// the measured value.
struct RegimeReport {
    std::string regime;
    std::map<std::string, double> metrics;
    struct Check {
        std::string name;
        double value;
        double threshold;
        bool pass;
    };
    std::vector<Check> checks;
    bool pass = true;

    void add_check(const std::string& name, double value, double threshold,
                   bool ok);
    std::string to_json() const;
};

// Oriented-percolation coupling parameter theta = 1 - (1 - 1/(2d))^{m/2}.
// m must be even and >= 2.
double theta(int d, int m);

// Directed bond percolation on the first-quadrant triangle of level <= n:
// two bonds per site (right, up), cluster of 0 by level-ordered BFS.
class OrientedPercolationState {
public:
    // i.i.d. bonds open with probability theta.
    OrientedPercolationState(double theta, std::int64_t n, Seed seed);
    // Bonds supplied by a predicate (site, which) -> open; which: 0 = right,
    // 1 = up. Used by the flat-edge coupling.
    OrientedPercolationState(
        std::int64_t n,
        const std::function<bool(std::int64_t x1, std::int64_t x2, int which)>& open);

    std::int64_t levels() const { return n_; }
    double theta_used() const { return theta_; }
    bool in_cluster(std::int64_t x1, std::int64_t x2) const;
    std::uint64_t cluster_size() const { return cluster_size_; }
    std::int64_t max_level() const { return max_level_; }
    // Cluster sites on one level, as x1 coordinates.
    std::vector<std::int64_t> cluster_on_level(std::int64_t level) const;
    // All cluster sites (x1, x2).
    std::vector<std::pair<std::int64_t, std::int64_t>> cluster_sites() const;

private:
    std::int64_t n_;
    double theta_ = -1;
    std::vector<bool> in_cluster_;
    std::uint64_t cluster_size_ = 0;
    std::int64_t max_level_ = 0;

    std::size_t index(std::int64_t x1, std::int64_t x2) const {
        const std::int64_t lev = x1 + x2;
        return static_cast<std::size_t>(lev * (lev + 1) / 2 + x1);
    }
    void build(const std::function<bool(std::int64_t, std::int64_t, int)>& open);
};

// Flat-edge domination at d = 2: particles labeled right/up (m/2 each), the
// induced oriented percolation from the labeled first moves, and the exact
// domination check that every cluster site x is awakened at exactly
// x1 + x2 in the coupled engine. Any violation is a hard failure.
struct FlatEdgeReplica {
    std::uint64_t cluster_size = 0;
    std::int64_t max_level = 0;
    bool reached_top = false;      // cluster reaches level n
    std::uint64_t violations = 0;  // cluster sites with T != ||x||_1
    double beta_hat = 0.5;         // smallest beta with Theta^beta covered (0.5 = none)
};

FlatEdgeReplica flat_edge_replica(int m, std::int64_t n, Seed seed);
RegimeReport flat_edge_experiment(int m, std::int64_t n, int replicas, Seed seed);

// Full-diamond experiment: HeavyTail(delta) coverage of D_{0.9 n} at time
// 1.2 n against a OnePerSite baseline, paired by replica seed.
struct FullDiamondReplica {
    double coverage_heavy = 0;
    double coverage_baseline = 0;
    std::uint64_t cap_events = 0;
};

FullDiamondReplica full_diamond_replica(double delta, int d, std::int64_t n,
                                        Seed seed);
RegimeReport full_diamond_experiment(double delta, int d, std::int64_t n,
                                     int replicas, Seed seed);

// d = 1 interval growth: xi_n is an exact interval [-L, R]; R/L -> 1 and
// R/n stabilizes.
RegimeReport interval_1d(std::int64_t n, int replicas, Seed seed);

// ---------------------- tails and continuous time ----------------------

struct TailDiag {
    std::vector<std::int64_t> n_grid;
    std::vector<double> tail;       // P[T(0,x0) >= n], censored count as >= horizon
    double gamma_hat = 0;           // slope of log(-log tail) vs log n
    stats::Interval gamma_ci;       // bootstrap
    double censored_fraction = 0;
};

TailDiag passage_tail_diag(int d, const Point& x0,
                           std::span<const std::int64_t> n_grid, int replicas,
                           Seed seed);

struct CtGrowthCurve {
    std::vector<double> t_grid;
    std::vector<double> mean_radius;
    stats::LineFit loglog;          // log mean radius vs log t
    bool radii_monotone = true;     // per realization, exact
};

CtGrowthCurve ct_growth_curve(int d, std::span<const double> t_grid,
                              int replicas, Seed seed);

// Regime report over the growth curve: log-log slope within [0.8, 1.2] flags
// linear growth; per-realization radius monotonicity is exact.
RegimeReport ct_growth_diag(int d, std::span<const double> t_grid, int replicas,
                            Seed seed);

}  // namespace frog::shape
