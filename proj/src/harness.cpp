// harness.cpp
#include "frog/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "frog/ct.hpp"
#include "frog/digest.hpp"
#include "frog/parallel.hpp"
#include "frog/shape.hpp"
#include "frog/srw.hpp"
#include "frog/svg.hpp"
#include "json.hpp"

namespace frog::cli {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::set<std::string> kExperiments = {
    "simulate", "mu", "shape", "flat-edge", "full-diamond", "srw-validate", "ct"};

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() +
                                        "' in " + where);
    }
}

}  // namespace

// ---------------------- config ----------------------

void ExperimentConfig::validate() const {
    if (!kExperiments.count(experiment))
        throw std::invalid_argument("config: unknown experiment '" + experiment + "'");
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("config: d out of range");
    if (replicas < 1) throw std::invalid_argument("config: replicas >= 1 required");
    if (n < 0) throw std::invalid_argument("config: n >= 0 required");
    if (horizon_factor < 1) throw std::invalid_argument("config: horizon_factor >= 1");
    if (experiment == "mu") {
        if (direction.empty() || static_cast<int>(direction.size()) != d)
            throw std::invalid_argument("config: mu needs a d-length direction");
        if (n_grid.size() < 2)
            throw std::invalid_argument("config: mu needs an n_grid with >= 2 points");
    }
    if (experiment == "ct" && t_grid.empty() && t_end <= 0)
        throw std::invalid_argument("config: ct needs t_grid or t_end");
    if (experiment == "flat-edge") {
        if (d != 2) throw std::invalid_argument("config: flat-edge runs at d = 2");
        if (m < 2 || m % 2) throw std::invalid_argument("config: flat-edge m even, >= 2");
    }
    if (experiment == "full-diamond" && !(delta > 0 && delta < d))
        throw std::invalid_argument("config: full-diamond needs 0 < delta < d");
    if (experiment == "shape" && d != 2)
        throw std::invalid_argument("config: shape experiment runs at d = 2");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
    require_keys(doc,
                 {"schema_version", "experiment", "d", "mode", "init", "seed",
                  "replicas", "n", "t_end", "horizon_factor", "n_grid", "t_grid",
                  "direction", "x0", "m", "delta", "emit_svg"},
                 "top level");
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != kSchemaVersion)
        throw std::invalid_argument("config: schema_version must be " +
                                    std::to_string(kSchemaVersion));
    if (!doc.contains("experiment"))
        throw std::invalid_argument("config: experiment is required");

    ExperimentConfig cfg;
    cfg.experiment = doc["experiment"].get<std::string>();
    if (doc.contains("d")) cfg.d = doc["d"].get<int>();
    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        if (mode == "coupled")
            cfg.mode = EngineMode::Coupled;
        else if (mode == "aggregated")
            cfg.mode = EngineMode::Aggregated;
        else
            throw std::invalid_argument("config: mode must be coupled|aggregated");
    }
    if (doc.contains("init")) {
        const json& init = doc["init"];
        require_keys(init, {"law", "m", "delta"}, "init");
        const std::string law = init.at("law").get<std::string>();
        if (law == "one-per-site") {
            cfg.init = InitialConfig::one_per_site();
        } else if (law == "m-per-site") {
            cfg.init = InitialConfig::m_per_site(init.at("m").get<std::uint32_t>());
        } else if (law == "heavy-tail") {
            cfg.init = InitialConfig::heavy_tail(init.at("delta").get<double>());
        } else {
            throw std::invalid_argument("config: init.law must be one-per-site|m-per-site|heavy-tail");
        }
    }
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("replicas")) cfg.replicas = doc["replicas"].get<int>();
    if (doc.contains("n")) cfg.n = doc["n"].get<std::int64_t>();
    if (doc.contains("t_end")) cfg.t_end = doc["t_end"].get<double>();
    if (doc.contains("horizon_factor")) cfg.horizon_factor = doc["horizon_factor"].get<double>();
    if (doc.contains("n_grid")) cfg.n_grid = doc["n_grid"].get<std::vector<std::int64_t>>();
    if (doc.contains("t_grid")) cfg.t_grid = doc["t_grid"].get<std::vector<double>>();
    if (doc.contains("direction")) cfg.direction = doc["direction"].get<std::vector<std::int64_t>>();
    if (doc.contains("x0")) cfg.x0 = doc["x0"].get<std::vector<std::int64_t>>();
    if (doc.contains("m")) cfg.m = doc["m"].get<int>();
    if (doc.contains("delta")) cfg.delta = doc["delta"].get<double>();
    if (doc.contains("emit_svg")) cfg.emit_svg = doc["emit_svg"].get<bool>();
    cfg.validate();
    return cfg;
}

std::string ExperimentConfig::to_json_text() const {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["experiment"] = experiment;
    doc["d"] = d;
    doc["mode"] = mode == EngineMode::Coupled ? "coupled" : "aggregated";
    json init_j;
    switch (init.law) {
        case InitialConfig::Law::OnePerSite:
            init_j["law"] = "one-per-site";
            break;
        case InitialConfig::Law::MPerSite:
            init_j["law"] = "m-per-site";
            init_j["m"] = init.m;
            break;
        case InitialConfig::Law::HeavyTail:
            init_j["law"] = "heavy-tail";
            init_j["delta"] = init.delta;
            break;
    }
    doc["init"] = init_j;
    doc["seed"] = seed;
    doc["replicas"] = replicas;
    doc["n"] = n;
    doc["t_end"] = t_end;
    doc["horizon_factor"] = horizon_factor;
    doc["n_grid"] = n_grid;
    doc["t_grid"] = t_grid;
    doc["direction"] = direction;
    doc["x0"] = x0;
    doc["m"] = m;
    doc["delta"] = delta;
    doc["emit_svg"] = emit_svg;
    return doc.dump(2);
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    return experiment == o.experiment && d == o.d && mode == o.mode &&
           init.law == o.init.law && init.m == o.init.m &&
           init.delta == o.init.delta && seed == o.seed &&
           replicas == o.replicas && n == o.n && t_end == o.t_end &&
           horizon_factor == o.horizon_factor && n_grid == o.n_grid &&
           t_grid == o.t_grid && direction == o.direction && x0 == o.x0 &&
           m == o.m && delta == o.delta && emit_svg == o.emit_svg;
}

std::uint64_t replica_seed(const ExperimentConfig& cfg, int replica) {
    return child_seed(cfg.seed, static_cast<std::uint64_t>(replica));
}

// ---------------------- per-experiment rows ----------------------

namespace {

Point point_from(const std::vector<std::int64_t>& v, int d, const char* what) {
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument(std::string("config: ") + what +
                                    " must have length d");
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = v[static_cast<std::size_t>(i)];
    return p;
}

std::string simulate_header(const ExperimentConfig&) {
    return "replica,seed,xi_size,max_l1,conserved,connected";
}

std::string simulate_row(const ExperimentConfig& cfg, int r) {
    FrogEngine eng(Dimension(cfg.d), cfg.init, Seed{replica_seed(cfg, r)},
                   cfg.mode, cfg.n);
    eng.run(cfg.n);
    std::string row = std::to_string(r) + "," + std::to_string(replica_seed(cfg, r));
    row += "," + std::to_string(eng.xi_size());
    row += "," + std::to_string(eng.max_l1_radius());
    row += eng.conservation_ok() ? ",1" : ",0";
    row += eng.xi_connected() ? ",1" : ",0";
    return row;
}

std::vector<std::int64_t> mu_grid(const ExperimentConfig& cfg) {
    std::vector<std::int64_t> grid = cfg.n_grid;
    std::sort(grid.begin(), grid.end());
    return grid;
}

std::string mu_header(const ExperimentConfig& cfg) {
    std::string h = "replica,seed";
    for (std::int64_t n : mu_grid(cfg)) h += ",T_" + std::to_string(n);
    return h;
}

// T(0, n*direction) for every grid n on one realization; -1 when the
// per-target horizon (horizon_factor * n * |dir|) is exceeded.
std::vector<double> mu_samples(const ExperimentConfig& cfg, int r) {
    const auto grid = mu_grid(cfg);
    const Point dir = point_from(cfg.direction, cfg.d, "direction");
    const std::int64_t dn = l1_norm(dir);
    const std::int64_t horizon_max = static_cast<std::int64_t>(
        std::ceil(cfg.horizon_factor * static_cast<double>(grid.back() * dn)));
    FrogEngine eng(Dimension(cfg.d), cfg.init, Seed{replica_seed(cfg, r)},
                   cfg.mode, horizon_max);
    std::vector<double> out(grid.size(), -1.0);
    std::size_t next = 0;
    while (eng.time() < horizon_max && next < grid.size()) {
        eng.step();
        while (next < grid.size() && eng.awaken_time(dir * grid[next])) ++next;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto t = eng.awaken_time(dir * grid[i]);
        if (!t) continue;
        const double limit =
            cfg.horizon_factor * static_cast<double>(grid[i] * dn);
        if (static_cast<double>(*t) <= limit) out[i] = static_cast<double>(*t);
    }
    return out;
}

std::string mu_row(const ExperimentConfig& cfg, int r) {
    std::string row = std::to_string(r) + "," + std::to_string(replica_seed(cfg, r));
    for (double t : mu_samples(cfg, r)) row += "," + fmt_double(t);
    return row;
}

std::string shape_header(const ExperimentConfig&) {
    return "replica,seed,xi_n,xi_2n,sandwich_015,symmetry_005,hull_in_diamond,"
           "smallball_n,smallball_2n";
}

struct ShapeRowData {
    std::string row;
    shape::ShapeSnapshot snap_2n;  // kept only for replica 0 (SVG)
};

ShapeRowData shape_row_data(const ExperimentConfig& cfg, int r, bool keep_snap) {
    const std::int64_t n = cfg.n;
    FrogEngine eng(Dimension(cfg.d), cfg.init, Seed{replica_seed(cfg, r)},
                   cfg.mode, 2 * n);
    eng.run(2 * n);
    const auto snap_n = shape::snapshot_at(eng, n);
    auto snap_2n = shape::snapshot_at(eng, 2 * n);
    const bool sandwich = shape::sandwich_check(snap_n, snap_2n, 0.15);
    const bool symmetry = shape::symmetry_check(snap_2n, 0.05);
    const bool in_diamond = shape::hull_within_scaled_diamond(snap_n) &&
                            shape::hull_within_scaled_diamond(snap_2n);
    const double ball_n = shape::smallball_fit(snap_n);
    const double ball_2n = shape::smallball_fit(snap_2n);
    ShapeRowData out;
    out.row = std::to_string(r) + "," + std::to_string(replica_seed(cfg, r)) +
              "," + std::to_string(snap_n.xi.size()) + "," +
              std::to_string(snap_2n.xi.size()) + "," +
              (sandwich ? "1" : "0") + "," + (symmetry ? "1" : "0") + "," +
              (in_diamond ? "1" : "0") + "," + fmt_double(ball_n) + "," +
              fmt_double(ball_2n);
    if (keep_snap) out.snap_2n = std::move(snap_2n);
    return out;
}

std::string flat_edge_header(const ExperimentConfig&) {
    return "replica,seed,cluster_size,max_level,reached,violations,beta_hat";
}

std::string flat_edge_row(const ExperimentConfig& cfg, int r) {
    const auto rep = shape::flat_edge_replica(cfg.m, cfg.n, Seed{replica_seed(cfg, r)});
    return std::to_string(r) + "," + std::to_string(replica_seed(cfg, r)) + "," +
           std::to_string(rep.cluster_size) + "," + std::to_string(rep.max_level) +
           "," + (rep.reached_top ? "1" : "0") + "," +
           std::to_string(rep.violations) + "," + fmt_double(rep.beta_hat);
}

std::string full_diamond_header(const ExperimentConfig&) {
    return "replica,seed,coverage_heavy,coverage_baseline,heavy_wins,cap_events";
}

std::string full_diamond_row(const ExperimentConfig& cfg, int r) {
    const auto rep = shape::full_diamond_replica(cfg.delta, cfg.d, cfg.n,
                                                 Seed{replica_seed(cfg, r)});
    return std::to_string(r) + "," + std::to_string(replica_seed(cfg, r)) + "," +
           fmt_double(rep.coverage_heavy) + "," + fmt_double(rep.coverage_baseline) +
           "," + (rep.coverage_heavy > rep.coverage_baseline ? "1" : "0") + "," +
           std::to_string(rep.cap_events);
}

std::vector<double> ct_grid(const ExperimentConfig& cfg) {
    std::vector<double> grid = cfg.t_grid;
    if (grid.empty()) grid.push_back(cfg.t_end);
    std::sort(grid.begin(), grid.end());
    return grid;
}

std::string ct_header(const ExperimentConfig& cfg) {
    std::string h = "replica,seed";
    for (double t : ct_grid(cfg)) h += ",radius_" + fmt_double(t);
    h += ",xi_size,total_jumps";
    return h;
}

std::string ct_row(const ExperimentConfig& cfg, int r) {
    const auto grid = ct_grid(cfg);
    CtEngine eng(Dimension(cfg.d), cfg.init, Seed{replica_seed(cfg, r)},
                 CtMode::Thinned,
                 static_cast<std::int64_t>(grid.back() * 2) + 16);
    std::string row = std::to_string(r) + "," + std::to_string(replica_seed(cfg, r));
    for (double t : grid) {
        eng.run_until(t);
        row += "," + std::to_string(eng.max_l1_radius());
    }
    row += "," + std::to_string(eng.xi_size()) + "," + std::to_string(eng.total_jumps());
    return row;
}

// ---------------------- srw-validate battery ----------------------

std::string srw_header(const ExperimentConfig&) { return "check,value,threshold,pass"; }

struct SrwBattery {
    std::vector<std::string> rows;
    json fits;
    void add(const std::string& name, double value, double threshold, bool pass) {
        rows.push_back(name + "," + fmt_double(value) + "," + fmt_double(threshold) +
                       "," + (pass ? "1" : "0"));
    }
};

SrwBattery srw_battery(const ExperimentConfig& cfg) {
    SrwBattery battery;
    const std::uint64_t reps =
        std::max<std::uint64_t>(10'000, static_cast<std::uint64_t>(cfg.replicas));

    // Empirical S_10 frequencies against the exact table, d = 1 and 2.
    for (int d = 1; d <= 2; ++d) {
        const std::int64_t n = 10;
        const auto dp = srw::exact_pn(d, n, n);
        std::vector<Point> support;
        std::vector<double> expected;
        dp.for_each_support([&](const Point& p, double v) {
            support.push_back(p);
            expected.push_back(v * static_cast<double>(reps));
        });
        std::unordered_map<Point, std::size_t, PointHash> bin_of;
        for (std::size_t i = 0; i < support.size(); ++i) bin_of[support[i]] = i;
        std::vector<double> observed(support.size(), 0.0);
        const Point origin(d);
        for (std::uint64_t rep = 0; rep < reps; ++rep) {
            const std::uint64_t h =
                walk_hash(Seed{child_seed(cfg.seed, 0xe0 + rep)}, origin);
            Point pos = origin;
            for (std::int64_t k = 1; k <= n; ++k)
                pos.move(step_dir(h, static_cast<std::uint64_t>(k), d));
            ++observed[bin_of.at(pos)];
        }
        const double p = stats::chi2_gof_pvalue(observed, expected);
        battery.add("pn_chi2_d" + std::to_string(d), p, 0.01, p > 0.01);
    }

    // CLT error decay exponents.
    for (int d = 1; d <= 2; ++d) {
        const std::vector<std::int64_t> grid = {10, 20, 40, 80, 160};
        const auto fit = srw::clt_error_fit(d, grid);
        const double want = -(d + 2) / 2.0;
        battery.add("clt_decay_d" + std::to_string(d), fit.slope, want,
                    std::fabs(fit.slope - want) <= 0.5);
        battery.fits["clt_d" + std::to_string(d)] = {
            {"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
    }

    // Sup-displacement tail decay, d = 2, n = 400.
    {
        const std::vector<double> ts = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
        const auto curve = srw::sup_tail_mc(2, 400, ts, reps, Seed{cfg.seed});
        battery.add("sup_tail_slope_d2", curve.logfit.slope, -0.8,
                    curve.logfit.slope <= -0.8);
        battery.fits["sup_tail_d2"] = {{"slope", curve.logfit.slope},
                                       {"intercept", curve.logfit.intercept},
                                       {"r2", curve.logfit.r2}};
    }

    // Bernoulli large deviations: exact tail <= exp(-N H) on a grid.
    {
        int violations = 0, cases = 0;
        for (int pi = 1; pi <= 10; ++pi) {
            for (int ai = 1; ai <= 10; ++ai) {
                const double p = pi / 11.0, a = ai / 11.0;
                if (!(p < a)) continue;
                for (std::int64_t n : {10, 100, 1000}) {
                    ++cases;
                    const auto pair = srw::binomial_tail_check(n, p, a);
                    if (pair.exact > pair.bound) ++violations;
                }
            }
        }
        battery.add("binomial_tail_violations", violations, 0, violations == 0);
        battery.fits["binomial_grid_cases"] = cases;
    }

    // Rate function spot value.
    {
        const double h = srw::rate_H(0.5, 0.25);
        battery.add("rate_H_0.5_0.25", h, 0.14384, std::fabs(h - 0.14384) < 1e-4);
    }
    return battery;
}

}  // namespace

// ---------------------- orchestration ----------------------

std::string replica_row(const ExperimentConfig& cfg, int replica) {
    cfg.validate();
    if (replica < 0 || replica >= cfg.replicas)
        throw std::invalid_argument("replica_row: index out of range");
    if (cfg.experiment == "simulate") return simulate_row(cfg, replica);
    if (cfg.experiment == "mu") return mu_row(cfg, replica);
    if (cfg.experiment == "shape") return shape_row_data(cfg, replica, false).row;
    if (cfg.experiment == "flat-edge") return flat_edge_row(cfg, replica);
    if (cfg.experiment == "full-diamond") return full_diamond_row(cfg, replica);
    if (cfg.experiment == "ct") return ct_row(cfg, replica);
    throw std::invalid_argument("replica_row: experiment has no per-replica rows");
}

RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::filesystem::path& out_dir, int threads) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    std::vector<std::pair<std::string, std::string>> outputs;  // name -> bytes
    const auto emit = [&](const std::string& name, const std::string& bytes) {
        outputs.emplace_back(name, bytes);
    };

    try {
        std::string header;
        std::vector<std::string> rows(static_cast<std::size_t>(cfg.replicas));
        json report;

        if (cfg.experiment == "srw-validate") {
            header = srw_header(cfg);
            auto battery = srw_battery(cfg);
            rows = battery.rows;
            emit("fits.json", battery.fits.dump(2) + "\n");
        } else if (cfg.experiment == "simulate") {
            header = simulate_header(cfg);
            parallel_for(cfg.replicas,
                         [&](int r) { rows[static_cast<std::size_t>(r)] = simulate_row(cfg, r); },
                         threads);
        } else if (cfg.experiment == "mu") {
            header = mu_header(cfg);
            const auto grid = mu_grid(cfg);
            std::vector<std::vector<double>> samples(
                static_cast<std::size_t>(cfg.replicas));
            parallel_for(cfg.replicas,
                         [&](int r) {
                             samples[static_cast<std::size_t>(r)] = mu_samples(cfg, r);
                             std::string row = std::to_string(r) + "," +
                                               std::to_string(replica_seed(cfg, r));
                             for (double t : samples[static_cast<std::size_t>(r)])
                                 row += "," + fmt_double(t);
                             rows[static_cast<std::size_t>(r)] = row;
                         },
                         threads);
            // Slope summary over uncensored means.
            std::vector<double> xs, ys;
            std::size_t censored = 0, total = 0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double sum = 0;
                int cnt = 0;
                for (int r = 0; r < cfg.replicas; ++r) {
                    const double t = samples[static_cast<std::size_t>(r)][i];
                    ++total;
                    if (t < 0)
                        ++censored;
                    else {
                        sum += t;
                        ++cnt;
                    }
                }
                if (cnt) {
                    xs.push_back(static_cast<double>(grid[i]));
                    ys.push_back(sum / cnt);
                }
            }
            report["experiment"] = "mu";
            report["censored_fraction"] =
                total ? static_cast<double>(censored) / static_cast<double>(total) : 0.0;
            if (xs.size() >= 2) {
                const auto fit = stats::fit_line(xs, ys);
                report["slope"] = fit.slope;
                report["intercept"] = fit.intercept;
                report["r2"] = fit.r2;
            }
            emit("report.json", report.dump(2) + "\n");
        } else if (cfg.experiment == "shape") {
            header = shape_header(cfg);
            std::string svg;
            parallel_for(cfg.replicas,
                         [&](int r) {
                             auto data = shape_row_data(cfg, r, r == 0 && cfg.emit_svg);
                             rows[static_cast<std::size_t>(r)] = data.row;
                             if (r == 0 && cfg.emit_svg)
                                 svg = shape::render_shape_svg(data.snap_2n);
                         },
                         threads);
            if (cfg.emit_svg) emit("shape.svg", svg);
        } else if (cfg.experiment == "flat-edge") {
            header = flat_edge_header(cfg);
            parallel_for(cfg.replicas,
                         [&](int r) { rows[static_cast<std::size_t>(r)] = flat_edge_row(cfg, r); },
                         threads);
            const auto rep = shape::flat_edge_experiment(cfg.m, cfg.n, cfg.replicas,
                                                         Seed{cfg.seed});
            emit("report.json", rep.to_json() + "\n");
        } else if (cfg.experiment == "full-diamond") {
            header = full_diamond_header(cfg);
            parallel_for(cfg.replicas,
                         [&](int r) { rows[static_cast<std::size_t>(r)] = full_diamond_row(cfg, r); },
                         threads);
            const auto rep = shape::full_diamond_experiment(cfg.delta, cfg.d, cfg.n,
                                                            cfg.replicas, Seed{cfg.seed});
            emit("report.json", rep.to_json() + "\n");
        } else if (cfg.experiment == "ct") {
            header = ct_header(cfg);
            parallel_for(cfg.replicas,
                         [&](int r) { rows[static_cast<std::size_t>(r)] = ct_row(cfg, r); },
                         threads);
            const auto grid = ct_grid(cfg);
            const auto rep = shape::ct_growth_diag(cfg.d, grid, cfg.replicas,
                                                   Seed{cfg.seed});
            emit("report.json", rep.to_json() + "\n");
        }

        std::string csv = header + "\n";
        for (const auto& row : rows) csv += row + "\n";
        outputs.insert(outputs.begin(), {"results.csv", csv});

        // All result bytes exist; persist them, then seal with the manifest.
        RunResult result;
        result.out_dir = out_dir;
        json manifest;
        manifest["schema_version"] = kSchemaVersion;
        manifest["artifact_version"] = kArtifactVersion;
        manifest["config"] = json::parse(cfg.to_json_text());
        json seeds = json::array();
        if (cfg.experiment != "srw-validate")
            for (int r = 0; r < cfg.replicas; ++r) seeds.push_back(replica_seed(cfg, r));
        manifest["replica_seeds"] = seeds;
        json files = json::array();
        for (const auto& [name, bytes] : outputs) {
            std::ofstream out(out_dir / name, std::ios::binary);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out) throw std::runtime_error("failed writing " + name);
            out.close();
            files.push_back({{"file", name},
                             {"bytes", bytes.size()},
                             {"sha256", sha256_hex(bytes)}});
            result.files.push_back(name);
        }
        manifest["outputs"] = files;
        manifest["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
        const std::string mbytes = manifest.dump(2) + "\n";
        mf.write(mbytes.data(), static_cast<std::streamsize>(mbytes.size()));
        if (!mf) throw std::runtime_error("failed writing manifest.json");
        result.files.push_back("manifest.json");
        return result;
    } catch (...) {
        // Remove partial outputs; a directory without manifest.json is not a
        // valid run, but don't leave half-written files around either.
        for (const auto& [name, bytes] : outputs) {
            std::error_code ec;
            std::filesystem::remove(out_dir / name, ec);
        }
        std::error_code ec;
        std::filesystem::remove(out_dir / "manifest.json", ec);
        throw;
    }
}

}  // namespace frog::cli
