// test_harness.cpp
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frog/digest.hpp"
#include "frog/harness.hpp"
#include "json.hpp"

using namespace frog;
using namespace frog::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("frogsim-test-" + name);
    fs::remove_all(p);
    return p;
}

ExperimentConfig small_simulate() {
    ExperimentConfig cfg;
    cfg.experiment = "simulate";
    cfg.d = 2;
    cfg.mode = EngineMode::Coupled;
    cfg.seed = 404;
    cfg.replicas = 6;
    cfg.n = 25;
    return cfg;
}

}  // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    // Two-block message.
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("config round-trips through its JSON echo") {
    ExperimentConfig cfg;
    cfg.experiment = "mu";
    cfg.d = 1;
    cfg.mode = EngineMode::Aggregated;
    cfg.init = InitialConfig::m_per_site(2);
    cfg.seed = 987654321;
    cfg.replicas = 12;
    cfg.n_grid = {100, 200, 300};
    cfg.direction = {1};
    cfg.horizon_factor = 6.0;
    const auto back = ExperimentConfig::from_json_text(cfg.to_json_text());
    CHECK(back == cfg);

    ExperimentConfig ht;
    ht.experiment = "full-diamond";
    ht.init = InitialConfig::heavy_tail(1.25);
    ht.delta = 1.25;
    ht.n = 40;
    CHECK(ExperimentConfig::from_json_text(ht.to_json_text()) == ht);
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{not json"),
                    std::invalid_argument);
    // Unknown keys are errors, no silent drift.
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"schema_version":1,"experiment":"simulate","typo_key":3})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"schema_version":2,"experiment":"simulate"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"schema_version":1,"experiment":"nope"})"),
                    std::invalid_argument);
    // replicas = 0 rejected.
    auto cfg = small_simulate();
    cfg.replicas = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    // Nested unknown key.
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_text(
            R"({"schema_version":1,"experiment":"simulate","init":{"law":"one-per-site","oops":1}})"),
        std::invalid_argument);
}

TEST_CASE("run_experiment writes results, manifest digests match, bytes stable") {
    const auto cfg = small_simulate();
    const auto dir1 = fresh_dir("sim1");
    const auto dir2 = fresh_dir("sim2");
    run_experiment(cfg, dir1);
    run_experiment(cfg, dir2);

    REQUIRE(fs::exists(dir1 / "results.csv"));
    REQUIRE(fs::exists(dir1 / "manifest.json"));

    // Same config twice: byte-identical result files.
    CHECK(slurp(dir1 / "results.csv") == slurp(dir2 / "results.csv"));

    // Manifest digests match the emitted files.
    const auto manifest = nlohmann::json::parse(slurp(dir1 / "manifest.json"));
    CHECK(manifest["artifact_version"] == kArtifactVersion);
    CHECK(manifest["config"]["experiment"] == "simulate");
    for (const auto& out : manifest["outputs"]) {
        const auto body = slurp(dir1 / out["file"].get<std::string>());
        CHECK(sha256_hex(body) == out["sha256"].get<std::string>());
        CHECK(body.size() == out["bytes"].get<std::size_t>());
    }
    // Per-replica seeds recorded.
    REQUIRE(manifest["replica_seeds"].size() == 6);
    CHECK(manifest["replica_seeds"][3].get<std::uint64_t>() == replica_seed(cfg, 3));

    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("rows carry (seed, replica) and re-run in isolation reproduces them") {
    const auto cfg = small_simulate();
    const auto dir = fresh_dir("rows");
    run_experiment(cfg, dir);
    std::istringstream csv(slurp(dir / "results.csv"));
    std::string line;
    std::getline(csv, line);  // header
    CHECK(line.rfind("replica,seed", 0) == 0);
    int r = 0;
    while (std::getline(csv, line)) {
        CHECK(line == replica_row(cfg, r));
        CHECK(line.rfind(std::to_string(r) + "," +
                             std::to_string(replica_seed(cfg, r)) + ",",
                         0) == 0);
        ++r;
    }
    CHECK(r == cfg.replicas);
    fs::remove_all(dir);
}

TEST_CASE("mu experiment emits a slope report") {
    ExperimentConfig cfg;
    cfg.experiment = "mu";
    cfg.d = 1;
    cfg.seed = 7;
    cfg.replicas = 10;
    cfg.direction = {1};
    cfg.n_grid = {10, 20, 30};
    cfg.horizon_factor = 8;
    const auto dir = fresh_dir("mu");
    run_experiment(cfg, dir);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["slope"].get<double>() >= 0.5);
    CHECK(report["censored_fraction"].get<double>() <= 0.2);
    fs::remove_all(dir);
}

TEST_CASE("shape experiment can emit an SVG") {
    ExperimentConfig cfg;
    cfg.experiment = "shape";
    cfg.d = 2;
    cfg.seed = 11;
    cfg.replicas = 2;
    cfg.n = 15;  // snapshots at 15 and 30
    cfg.emit_svg = true;
    const auto dir = fresh_dir("shape");
    run_experiment(cfg, dir);
    REQUIRE(fs::exists(dir / "shape.svg"));
    const auto svg = slurp(dir / "shape.svg");
    CHECK(svg.find("<svg") == 0);
    fs::remove_all(dir);
}

TEST_CASE("srw-validate battery passes") {
    ExperimentConfig cfg;
    cfg.experiment = "srw-validate";
    cfg.seed = 1;
    cfg.replicas = 10'000;
    const auto dir = fresh_dir("srw");
    run_experiment(cfg, dir);
    std::istringstream csv(slurp(dir / "results.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "check,value,threshold,pass");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        INFO(line);
        CHECK(line.substr(line.size() - 2) == ",1");  // every check passes
    }
    CHECK(rows >= 6);
    REQUIRE(fs::exists(dir / "fits.json"));
    fs::remove_all(dir);
}

TEST_CASE("ct experiment report") {
    ExperimentConfig cfg;
    cfg.experiment = "ct";
    cfg.d = 2;
    cfg.seed = 5;
    cfg.replicas = 8;
    cfg.t_grid = {10, 20, 40};
    const auto dir = fresh_dir("ct");
    run_experiment(cfg, dir);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["regime"] == "ContinuousTime");
    bool monotone_checked = false;
    for (const auto& check : report["checks"]) {
        if (check["name"] == "radii_monotone") {
            monotone_checked = true;
            CHECK(check["pass"].get<bool>());
        }
    }
    CHECK(monotone_checked);
    fs::remove_all(dir);
}

#ifdef FROGSIM_PATH
TEST_CASE("frogsim CLI end to end") {
    const auto dir = fresh_dir("cli");
    fs::create_directories(dir);
    const auto cfg_path = dir / "config.json";
    {
        std::ofstream out(cfg_path);
        out << small_simulate().to_json_text();
    }
    const std::string base = std::string(FROGSIM_PATH);
    const std::string cmd = base + " simulate --config " + cfg_path.string() +
                            " --out " + (dir / "run").string() + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "run" / "results.csv"));
    CHECK(fs::exists(dir / "run" / "manifest.json"));

    // Validation failures exit with code 2.
    {
        std::ofstream out(cfg_path);
        out << R"({"schema_version":1,"experiment":"simulate","replicas":0})";
    }
    const std::string bad = base + " simulate --config " + cfg_path.string() +
                            " --out " + (dir / "run2").string() + " > /dev/null 2>&1";
    const int rc = std::system(bad.c_str());
    CHECK(WEXITSTATUS(rc) == 2);

    // Mismatched subcommand also exits 2.
    {
        std::ofstream out(cfg_path);
        out << small_simulate().to_json_text();
    }
    const std::string mismatch = base + " mu --config " + cfg_path.string() +
                                 " --out " + (dir / "run3").string() +
                                 " > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(mismatch.c_str())) == 2);

    fs::remove_all(dir);
}
#endif
