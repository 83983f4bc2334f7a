// acceptance.cpp — the acceptance suite: fifteen criteria, one pass/fail line
// each, nonzero exit if any fails. Run a subset with:  acceptance 3 11 12
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "frog/ct.hpp"
#include "frog/engine.hpp"
#include "frog/parallel.hpp"
#include "frog/shape.hpp"
#include "frog/srw.hpp"
#include "frog/stats.hpp"

using namespace frog;

namespace {

struct Criterion {
    int id;
    const char* name;
    bool (*run)(std::string& detail);
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Exact invariants, zero tolerance, every realization:
//    T(0,x) >= ||x||_1; xi_n within D_n; xi_bar connected; conservation.
//    ~10^3 replicas across d = 1, 2, 3; n <= 200.
// ---------------------------------------------------------------------------
bool c1_exact_invariants(std::string& detail) {
    const std::vector<std::pair<int, std::int64_t>> plans = {
        {1, 200}, {2, 120}, {3, 50}};
    const int reps_per_d = 334;
    std::atomic<int> violations{0};
    std::atomic<long long> total_sites{0};
    for (const auto& [dim, n] : plans) {
        parallel_for(reps_per_d, [&, d = dim, n = n](int r) {
            const EngineMode mode =
                r % 2 ? EngineMode::Aggregated : EngineMode::Coupled;
            FrogEngine eng(Dimension(d), InitialConfig::one_per_site(),
                           Seed{child_seed(0xC1, static_cast<std::uint64_t>(1000 * d + r))},
                           mode, n);
            eng.run(n);
            // T(x) >= ||x||_1 and T(x) <= n for every awakening: this is the
            // statement xi_t within D_t for every t <= n on this realization.
            std::unordered_map<Point, std::int64_t, PointHash> awake;
            for (const auto& a : eng.record()) {
                if (a.time < l1_norm(a.site) || a.time > n) ++violations;
                awake.emplace(a.site, a.time);
            }
            // Every awakened site must have a neighbor awakened no later:
            // its waker stood next to it one step earlier. This gives
            // connectivity of xi_t for every t <= n, not just t = n.
            for (const auto& [site, t] : awake) {
                if (t == 0) continue;
                bool anchored = false;
                for (int axis = 0; axis < d && !anchored; ++axis) {
                    for (int sgn : {+1, -1}) {
                        Point q = site;
                        q[axis] += sgn;
                        const auto it = awake.find(q);
                        if (it != awake.end() && it->second <= t) {
                            anchored = true;
                            break;
                        }
                    }
                }
                if (!anchored) ++violations;
            }
            if (!eng.conservation_ok()) ++violations;
            if (!eng.xi_connected()) ++violations;
            total_sites += static_cast<long long>(eng.xi_size());
        });
    }
    detail = fmt("%d replicas x 3 dims, %lld awakenings checked, %d violations",
                 reps_per_d, total_sites.load(), violations.load());
    return violations == 0;
}

// ---------------------------------------------------------------------------
// 2. Coupled subadditivity: T(x,z) <= T(x,y) + T(y,z) pathwise, all triples
//    in [-3,3]^d, d = 1, 2, 100 seeds, zero violations.
// ---------------------------------------------------------------------------
bool c2_subadditivity(std::string& detail) {
    std::atomic<long long> checked{0};
    std::atomic<int> violations{0};
    for (int dim : {1, 2}) {
        std::vector<Point> sites;
        {
            Point p(dim);
            const std::function<void(int)> rec = [&](int axis) {
                if (axis == dim) {
                    sites.push_back(p);
                    return;
                }
                for (std::int64_t c = -3; c <= 3; ++c) {
                    p[axis] = c;
                    rec(axis + 1);
                }
            };
            rec(0);
        }
        const std::size_t s = sites.size();  // 7 or 49
        const std::int64_t horizon = 150;
        parallel_for(100, [&, d = dim](int seed_idx) {
            const Seed seed{child_seed(0xC2, static_cast<std::uint64_t>(100 * d + seed_idx))};
            std::vector<std::vector<std::int64_t>> T(
                s, std::vector<std::int64_t>(s, -1));
            for (std::size_t i = 0; i < s; ++i) {
                FrogEngine eng(Dimension(d), InitialConfig::one_per_site(), seed,
                               EngineMode::Coupled, horizon, sites[i]);
                std::size_t resolved = 0;
                while (true) {
                    resolved = 0;
                    for (std::size_t j = 0; j < s; ++j) {
                        if (T[i][j] >= 0) {
                            ++resolved;
                            continue;
                        }
                        if (const auto t = eng.awaken_time(sites[j])) {
                            T[i][j] = *t;
                            ++resolved;
                        }
                    }
                    if (resolved == s || eng.time() >= horizon) break;
                    eng.step();
                }
            }
            long long local_checked = 0;
            int local_viol = 0;
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) {
                    if (T[i][j] < 0 || T[i][j] > horizon / 2) continue;
                    for (std::size_t k = 0; k < s; ++k) {
                        if (T[j][k] < 0 || T[j][k] > horizon / 2) continue;
                        ++local_checked;
                        // Both terms within horizon/2 force T(x,z) to be
                        // resolved and bounded by the sum.
                        if (T[i][k] < 0 || T[i][k] > T[i][j] + T[j][k])
                            ++local_viol;
                    }
                }
            checked += local_checked;
            violations += local_viol;
        });
    }
    detail = fmt("%lld triples checked, %d violations", checked.load(),
                 violations.load());
    return violations == 0;
}

// ---------------------------------------------------------------------------
// 3. Monotone coupling: T under MPerSite(2) <= T under OnePerSite pointwise
//    with the shared walk family; d = 2, n = 100, 100 seeds.
// ---------------------------------------------------------------------------
bool c3_monotone_coupling(std::string& detail) {
    std::atomic<int> violations{0};
    std::atomic<long long> compared{0};
    parallel_for(100, [&](int s) {
        const Seed seed{child_seed(0xC3, static_cast<std::uint64_t>(s))};
        const std::int64_t n = 100;
        FrogEngine one(Dimension(2), InitialConfig::one_per_site(), seed,
                       EngineMode::Coupled, n);
        FrogEngine two(Dimension(2), InitialConfig::m_per_site(2), seed,
                       EngineMode::Coupled, n);
        one.run(n);
        two.run(n);
        long long local = 0;
        int viol = 0;
        for (const auto& a : one.record()) {
            const auto t2 = two.awaken_time(a.site);
            ++local;
            if (!t2 || *t2 > a.time) ++viol;
        }
        compared += local;
        violations += viol;
    });
    detail = fmt("%lld awakenings compared, %d violations", compared.load(),
                 violations.load());
    return violations == 0;
}

// ---------------------------------------------------------------------------
// 4. Mode equivalence: |xi_5| distribution, Coupled vs Aggregated, d = 2,
//    10^5 replicas each, chi-square p > 0.01.
// ---------------------------------------------------------------------------
bool c4_mode_equivalence(std::string& detail) {
    const int reps = 100'000;
    std::vector<std::size_t> size_c(static_cast<std::size_t>(reps));
    std::vector<std::size_t> size_a(static_cast<std::size_t>(reps));
    parallel_for(reps, [&](int r) {
        FrogEngine c(Dimension(2), InitialConfig::one_per_site(),
                     Seed{child_seed(0xC4A, static_cast<std::uint64_t>(r))},
                     EngineMode::Coupled, 5);
        c.run(5);
        size_c[static_cast<std::size_t>(r)] = c.xi_size();
        FrogEngine a(Dimension(2), InitialConfig::one_per_site(),
                     Seed{child_seed(0xC4B, static_cast<std::uint64_t>(r))},
                     EngineMode::Aggregated, 5);
        a.run(5);
        size_a[static_cast<std::size_t>(r)] = a.xi_size();
    });
    std::map<std::size_t, double> hist_c, hist_a;
    for (auto v : size_c) ++hist_c[v];
    for (auto v : size_a) ++hist_a[v];
    std::set<std::size_t> keys;
    for (const auto& [k, v] : hist_c) keys.insert(k);
    for (const auto& [k, v] : hist_a) keys.insert(k);
    std::vector<double> ca, cb;
    for (auto k : keys) {
        ca.push_back(hist_c.count(k) ? hist_c.at(k) : 0.0);
        cb.push_back(hist_a.count(k) ? hist_a.at(k) : 0.0);
    }
    const double p = stats::chi2_two_sample_pvalue(ca, cb);
    detail = fmt("chi-square p = %.4f over %zu size bins", p, keys.size());
    return p > 0.01;
}

// ---------------------------------------------------------------------------
// 5. First-step law: P[T(0,e1) = 1] = 1/(2d) within 3 sigma, 10^5 replicas,
//    d = 1, 2, 3.
// ---------------------------------------------------------------------------
bool c5_first_step(std::string& detail) {
    std::string parts;
    bool ok = true;
    for (int dim : {1, 2, 3}) {
        const int reps = 100'000;
        std::atomic<int> hits{0};
        parallel_for(reps, [&, d = dim](int r) {
            FrogEngine eng(Dimension(d), InitialConfig::one_per_site(),
                           Seed{child_seed(0xC5, static_cast<std::uint64_t>(1000000 * d + r))},
                           EngineMode::Coupled, 1);
            eng.step();
            if (eng.awaken_time(unit_vector(d, 0)) == 1) ++hits;
        });
        const double p_hat = static_cast<double>(hits) / reps;
        const double p = 1.0 / (2 * dim);
        const double sigma = std::sqrt(p * (1 - p) / reps);
        const double dev = std::fabs(p_hat - p) / sigma;
        parts += fmt("d=%d: %.4f (%.2f sigma)  ", dim, p_hat, dev);
        ok = ok && dev <= 3.0;
    }
    detail = parts;
    return ok;
}

// ---------------------------------------------------------------------------
// 6. SRW oracle agreement: exact_pn vs walk-kernel frequencies (chi-square
//    p > 0.01, d = 1, 2, n = 10, 10^5 replicas); CLT error-decay exponents
//    within +-0.5 of -(d+2)/2.
// ---------------------------------------------------------------------------
bool c6_srw_oracle(std::string& detail) {
    std::string parts;
    bool ok = true;
    for (int dim : {1, 2}) {
        const std::int64_t n = 10;
        const int reps = 100'000;
        const auto dp = srw::exact_pn(dim, n, n);
        std::vector<Point> support;
        std::vector<double> expected;
        dp.for_each_support([&](const Point& p, double v) {
            support.push_back(p);
            expected.push_back(v * reps);
        });
        std::unordered_map<Point, std::size_t, PointHash> bin_of;
        for (std::size_t i = 0; i < support.size(); ++i) bin_of[support[i]] = i;
        std::vector<std::size_t> endpoint(static_cast<std::size_t>(reps));
        parallel_for(reps, [&, d = dim](int r) {
            const std::uint64_t h = walk_hash(
                Seed{child_seed(0xC6, static_cast<std::uint64_t>(1000000 * d + r))},
                Point(d));
            Point pos(d);
            for (std::int64_t k = 1; k <= n; ++k)
                pos.move(step_dir(h, static_cast<std::uint64_t>(k), d));
            endpoint[static_cast<std::size_t>(r)] = bin_of.at(pos);
        });
        std::vector<double> observed(support.size(), 0.0);
        for (auto e : endpoint) ++observed[e];
        const double p = stats::chi2_gof_pvalue(observed, expected);
        parts += fmt("d=%d chi2 p=%.4f  ", dim, p);
        ok = ok && p > 0.01;
    }
    for (int dim : {1, 2}) {
        const std::vector<std::int64_t> grid = {10, 20, 40, 80, 160};
        const auto fit = srw::clt_error_fit(dim, grid);
        const double want = -(dim + 2) / 2.0;
        parts += fmt("d=%d decay %.3f (want %.1f)  ", dim, fit.slope, want);
        ok = ok && std::fabs(fit.slope - want) <= 0.5;
    }
    detail = parts;
    return ok;
}

// ---------------------------------------------------------------------------
// 7. Hitting bound: q(n,x) >= G_n(x)/G_n(0) - 3 sigma at n = ||x||^2,
//    d = 2 and d = 3 analogues, 10^5 replicas.
// ---------------------------------------------------------------------------
bool c7_hitting_bound(std::string& detail) {
    const std::vector<std::pair<int, Point>> cases = {
        {2, Point{1, 0}},    {2, Point{2, 1}},    {2, Point{3, 0}},
        {3, Point{1, 0, 0}}, {3, Point{2, 1, 0}}, {3, Point{3, 0, 0}}};
    std::string parts;
    bool ok = true;
    for (const auto& [dim, x] : cases) {
        const double r2 = l2_norm(x) * l2_norm(x);
        const std::int64_t n =
            std::max<std::int64_t>(1, static_cast<std::int64_t>(r2 + 0.5));
        srw::SrwDp dp(dim, n, true);
        dp.run_to(n);
        const double bound = dp.green(x) / dp.green(Point(dim));
        const auto q = srw::hitting_prob_mc(
            dim, n, x, 100'000,
            Seed{child_seed(0xC7, static_cast<std::uint64_t>(100 * dim + n))});
        const bool pass = q.p_hat >= bound - 3.0 * q.sigma;
        parts += fmt("d=%d (%s): %.4f>=%.4f  ", dim, x.csv().c_str(), q.p_hat, bound);
        ok = ok && pass;
    }
    detail = parts;
    return ok;
}

// ---------------------------------------------------------------------------
// 8. Range scaling: d = 3 E|R_n|/n at n = 10^4 within 5% of the Green-derived
//    escape probability; d = 2 ratio E|R_n|/(n/log n) moves < 10% between
//    n = 10^4 and n = 4 * 10^4.
// ---------------------------------------------------------------------------
bool c8_range_scaling(std::string& detail) {
    const double escape = srw::escape_probability(3, 100);
    const auto r3 = srw::range_mc(3, 10'000, 400, Seed{0xC8A});
    const double ratio3 = r3.mean / 10'000.0;
    const double rel3 = std::fabs(ratio3 - escape) / escape;

    const auto r2a = srw::range_mc(2, 10'000, 400, Seed{0xC8B});
    const auto r2b = srw::range_mc(2, 40'000, 200, Seed{0xC8C});
    const double q_a = r2a.mean / (10'000.0 / std::log(10'000.0));
    const double q_b = r2b.mean / (40'000.0 / std::log(40'000.0));
    const double rel2 = std::fabs(q_a - q_b) / q_b;

    detail = fmt("d=3: |R|/n=%.4f vs escape=%.4f (rel %.3f); "
                 "d=2: ratios %.4f vs %.4f (rel %.3f)",
                 ratio3, escape, rel3, q_a, q_b, rel2);
    return rel3 < 0.05 && rel2 < 0.10;
}

// ---------------------------------------------------------------------------
// 9. Large-deviation bound: exact binomial tail <= exp(-N H(a,p)) on a 10x10
//    (p, a) grid, N in {10, 100, 1000}, zero violations.
// ---------------------------------------------------------------------------
bool c9_large_deviation(std::string& detail) {
    int cases = 0, violations = 0;
    for (int pi = 1; pi <= 10; ++pi)
        for (int ai = 1; ai <= 10; ++ai) {
            const double p = pi / 11.0, a = ai / 11.0;
            if (!(p < a)) continue;
            for (std::int64_t n : {10, 100, 1000}) {
                ++cases;
                const auto tp = srw::binomial_tail_check(n, p, a);
                if (tp.exact > tp.bound) ++violations;
            }
        }
    detail = fmt("%d grid cases, %d violations", cases, violations);
    return violations == 0;
}

// ---------------------------------------------------------------------------
// 10. Mu consistency: d = 1 slope estimates on grids {100..500} and
//     {500..1000} within 10% relative, CI overlap, slope >= 1 within CI.
// ---------------------------------------------------------------------------
bool c10_mu_consistency(std::string& detail) {
    const std::vector<std::int64_t> grid_lo = {100, 200, 300, 400, 500};
    const std::vector<std::int64_t> grid_hi = {500, 600, 700, 800, 900, 1000};
    const auto lo = shape::estimate_mu(1, Point{1}, grid_lo, 48, 6.0, Seed{0xC10A});
    const auto hi = shape::estimate_mu(1, Point{1}, grid_hi, 32, 6.0, Seed{0xC10B});
    const double rel = std::fabs(lo.slope - hi.slope) / hi.slope;
    const bool overlap = lo.ci.overlaps(hi.ci);
    const bool above_one = lo.ci.hi >= 1.0 && hi.ci.hi >= 1.0;
    detail = fmt("slopes %.3f [%.3f,%.3f] vs %.3f [%.3f,%.3f], rel %.3f",
                 lo.slope, lo.ci.lo, lo.ci.hi, hi.slope, hi.ci.lo, hi.ci.hi, rel);
    return rel <= 0.10 && overlap && above_one && lo.reliable && hi.reliable;
}

// ---------------------------------------------------------------------------
// 11. Shape sandwich: d = 2, OnePerSite, sandwich(n=200 vs 2n=400, eps=0.15)
//     on >= 95 of 100 replicas; symmetry at 5% on >= 90; hull within
//     (1 + 2/n) D exactly.
// ---------------------------------------------------------------------------
bool c11_shape_sandwich(std::string& detail) {
    const int reps = 100;
    std::atomic<int> sandwich_pass{0}, symmetry_pass{0}, hull_violations{0};
    parallel_for(reps, [&](int r) {
        FrogEngine eng(Dimension(2), InitialConfig::one_per_site(),
                       Seed{child_seed(0xC11, static_cast<std::uint64_t>(r))},
                       EngineMode::Coupled, 400);
        eng.run(400);
        const auto snap_n = shape::snapshot_at(eng, 200);
        const auto snap_2n = shape::snapshot_at(eng, 400);
        if (shape::sandwich_check(snap_n, snap_2n, 0.15)) ++sandwich_pass;
        if (shape::symmetry_check(snap_2n, 0.05)) ++symmetry_pass;
        if (!shape::hull_within_scaled_diamond(snap_n) ||
            !shape::hull_within_scaled_diamond(snap_2n))
            ++hull_violations;
    });
    detail = fmt("sandwich %d/100 (need 95), symmetry %d/100 (need 90), "
                 "hull violations %d",
                 sandwich_pass.load(), symmetry_pass.load(),
                 hull_violations.load());
    return sandwich_pass >= 95 && symmetry_pass >= 90 && hull_violations == 0;
}

// ---------------------------------------------------------------------------
// 12. Flat edge: exact coupling (cluster site => T = ||x||_1), zero
//     violations, 100 replicas, m = 16, n = 100; theta formula values;
//     subcritical m = 2 clusters all finite at level 100.
// ---------------------------------------------------------------------------
bool c12_flat_edge(std::string& detail) {
    const double t2 = shape::theta(2, 2);
    const double t16 = shape::theta(2, 16);
    if (std::fabs(t2 - 0.25) > 1e-12 || std::fabs(t16 - 0.899887) > 1e-6) {
        detail = fmt("theta formula wrong: %.6f, %.6f", t2, t16);
        return false;
    }
    std::atomic<std::uint64_t> violations{0};
    std::atomic<int> reached{0};
    parallel_for(100, [&](int r) {
        const auto rep = shape::flat_edge_replica(
            16, 100, Seed{child_seed(0xC12A, static_cast<std::uint64_t>(r))});
        violations += rep.violations;
        if (rep.reached_top) ++reached;
    });
    std::atomic<int> sub_reached{0};
    parallel_for(100, [&](int r) {
        const auto rep = shape::flat_edge_replica(
            2, 100, Seed{child_seed(0xC12B, static_cast<std::uint64_t>(r))});
        if (rep.reached_top) ++sub_reached;
    });
    detail = fmt("theta(2,2)=%.2f theta(2,16)=%.6f; m=16: %llu violations, "
                 "%d/100 reached (need >= 50); m=2: %d/100 reached (need 0)",
                 t2, t16, static_cast<unsigned long long>(violations.load()),
                 reached.load(), sub_reached.load());
    return violations == 0 && reached >= 50 && sub_reached == 0;
}

// ---------------------------------------------------------------------------
// 13. Full diamond: d = 2, delta = 1, n = 100: heavy-tail coverage of D_90 at
//     t = 120 beats the OnePerSite baseline in >= 95 of 100 paired replicas,
//     mean coverage >= 0.9 (regression thresholds).
// ---------------------------------------------------------------------------
bool c13_full_diamond(std::string& detail) {
    const int reps = 100;
    std::vector<shape::FullDiamondReplica> rows(static_cast<std::size_t>(reps));
    parallel_for(reps, [&](int r) {
        rows[static_cast<std::size_t>(r)] = shape::full_diamond_replica(
            1.0, 2, 100, Seed{child_seed(0xC13, static_cast<std::uint64_t>(r))});
    });
    int wins = 0;
    double mean_heavy = 0, mean_base = 0;
    for (const auto& row : rows) {
        if (row.coverage_heavy > row.coverage_baseline) ++wins;
        mean_heavy += row.coverage_heavy;
        mean_base += row.coverage_baseline;
    }
    mean_heavy /= reps;
    mean_base /= reps;
    detail = fmt("paired wins %d/100 (need 95), mean heavy %.4f (need 0.9), "
                 "baseline %.4f",
                 wins, mean_heavy, mean_base);
    return wins >= 95 && mean_heavy >= 0.9;
}

// ---------------------------------------------------------------------------
// 14. Passage-time tail: fitted gamma > 0 with positive bootstrap lower
//     bound; d = 2, x0 = (3,0), 10^4 replicas.
// ---------------------------------------------------------------------------
bool c14_passage_tail(std::string& detail) {
    const std::vector<std::int64_t> grid = {4, 6, 9, 14, 20, 30, 45, 60};
    const auto diag = shape::passage_tail_diag(2, Point{3, 0}, grid, 10'000,
                                               Seed{0xC14});
    detail = fmt("gamma = %.3f, bootstrap CI [%.3f, %.3f], censored %.4f",
                 diag.gamma_hat, diag.gamma_ci.lo, diag.gamma_ci.hi,
                 diag.censored_fraction);
    return diag.gamma_hat > 0 && diag.gamma_ci.lo > 0;
}

// ---------------------------------------------------------------------------
// 15. Continuous time: Poisson jump counts within 3 sigma; log-log radius
//     slope in [0.8, 1.2] (d = 2, t <= 400, 100 replicas); the exact
//     invariants that survive real-valued times: conservation, connectivity,
//     T(0) = 0 with nondecreasing record times, and the jump-count diamond
//     bound (max L1 radius of xi <= total jumps executed).
// ---------------------------------------------------------------------------
bool c15_continuous_time(std::string& detail) {
    const double t_poisson = 10.0;
    const int reps = 10'000;
    std::vector<double> jumps(static_cast<std::size_t>(reps));
    std::atomic<int> invariant_violations{0};
    parallel_for(reps, [&](int r) {
        CtEngine eng(Dimension(2), InitialConfig::one_per_site(),
                     Seed{child_seed(0xC15A, static_cast<std::uint64_t>(r))},
                     CtMode::PerParticle, 128);
        eng.run_until(t_poisson);
        jumps[static_cast<std::size_t>(r)] = static_cast<double>(eng.jumps_of(0));
        if (!eng.event_times_monotone()) ++invariant_violations;
        if (!eng.conservation_ok()) ++invariant_violations;
        if (!eng.xi_connected()) ++invariant_violations;
        if (eng.max_l1_radius() > static_cast<std::int64_t>(eng.total_jumps()))
            ++invariant_violations;
        const auto& rec = eng.record();
        if (rec.empty() || rec.front().time != 0.0) ++invariant_violations;
        for (std::size_t i = 1; i < rec.size(); ++i)
            if (rec[i].time < rec[i - 1].time || rec[i].time < 0)
                ++invariant_violations;
    });
    const double mean_jumps = stats::mean(jumps);
    const double dev =
        std::fabs(mean_jumps - t_poisson) / std::sqrt(t_poisson / reps);
    const bool poisson_ok = dev <= 3.0;

    const std::vector<double> t_grid = {50, 100, 200, 400};
    const auto curve = shape::ct_growth_curve(2, t_grid, 100, Seed{0xC15B});
    const bool slope_ok = curve.loglog.slope >= 0.8 && curve.loglog.slope <= 1.2;

    detail = fmt("jump mean %.3f vs %.1f (%.2f sigma); slope %.3f in [0.8,1.2]; "
                 "monotone radii %d; invariant violations %d",
                 mean_jumps, t_poisson, dev, curve.loglog.slope,
                 curve.radii_monotone ? 1 : 0, invariant_violations.load());
    return poisson_ok && slope_ok && curve.radii_monotone &&
           invariant_violations == 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "exact invariants (T >= ||x||_1, xi in D_n, connected, conserved)", c1_exact_invariants},
        {2, "coupled subadditivity, zero violations", c2_subadditivity},
        {3, "monotone configuration coupling", c3_monotone_coupling},
        {4, "mode equivalence (|xi_5| distribution)", c4_mode_equivalence},
        {5, "first-step law 1/(2d)", c5_first_step},
        {6, "SRW oracle agreement + CLT decay", c6_srw_oracle},
        {7, "hitting bound q >= G_n(x)/G_n(0) - 3 sigma", c7_hitting_bound},
        {8, "range scaling (escape probability, n/log n)", c8_range_scaling},
        {9, "binomial tail vs Chernoff bound", c9_large_deviation},
        {10, "mu consistency across grids", c10_mu_consistency},
        {11, "shape sandwich + symmetry + diamond bound", c11_shape_sandwich},
        {12, "flat edge coupling + theta formula", c12_flat_edge},
        {13, "full diamond coverage", c13_full_diamond},
        {14, "passage-time tail exponent", c14_passage_tail},
        {15, "continuous time (Poisson, growth, invariants)", c15_continuous_time},
    };

    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("[%2d/15] %s  %-52s (%6.1fs)  %s\n", c.id,
                    ok ? "PASS" : "FAIL", c.name, secs, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
