// harness.hpp — reproducible experiment orchestration: versioned JSON
// configs, replica scheduling, canonical CSV/JSON outputs and the manifest
// that seals a run.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "frog/engine.hpp"

namespace frog::cli {

inline constexpr const char* kArtifactVersion = "frogsim 1.0.0";
inline constexpr int kSchemaVersion = 1;

// One experiment run, fully determined (together with the artifact version)
// byte-for-byte. Parsed from JSON with unknown keys rejected.
struct ExperimentConfig {
    std::string experiment;  // simulate | mu | shape | flat-edge |
                             // full-diamond | srw-validate | ct
    int d = 2;
    EngineMode mode = EngineMode::Aggregated;
    InitialConfig init = InitialConfig::one_per_site();
    std::uint64_t seed = 1;
    int replicas = 10;
    std::int64_t n = 100;
    double t_end = 100.0;
    double horizon_factor = 4.0;
    std::vector<std::int64_t> n_grid;
    std::vector<double> t_grid;
    std::vector<std::int64_t> direction;
    std::vector<std::int64_t> x0;
    int m = 2;          // flat-edge
    double delta = 1.0; // full-diamond
    bool emit_svg = false;

    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;  // canonical echo; round-trips

    bool operator==(const ExperimentConfig& o) const;

    void validate() const;  // throws std::invalid_argument
};

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<std::string> files;  // relative names, manifest.json last
};

// Executes the experiment, writes results.csv (+ report.json, shape.svg when
// applicable) and manifest.json into out_dir. Partial outputs are removed on
// failure. Result files are byte-identical across re-runs of one config.
RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::filesystem::path& out_dir,
                         int threads = 0);

// Recompute the results.csv row(s) of a single replica in isolation;
// byte-identical to the corresponding row(s) of the full run.
std::string replica_row(const ExperimentConfig& cfg, int replica);

// Per-replica engine seed, as recorded in the manifest.
std::uint64_t replica_seed(const ExperimentConfig& cfg, int replica);

}  // namespace frog::cli
