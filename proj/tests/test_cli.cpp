#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fchain/experiment.hpp"

using namespace fchain;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fchain_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

fs::path write_config(const fs::path& dir, const std::string& body) {
    const fs::path p = dir / "config.json";
    std::ofstream out(p);
    out << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("load_config parses a full description") {
    TempDir tmp;
    auto p = write_config(tmp.path, R"({
        "profiles": [{"kind": "rainbow", "h": 2.0}, {"kind": "rindler", "c": 0.25}],
        "N": 40,
        "fillings": [0.25, 0.5],
        "modes": [1, 20],
        "mu0": 0.7,
        "dump_spectrum": true
    })");
    auto cfg = load_config(p);
    REQUIRE(cfg.profiles.size() == 2);
    CHECK(cfg.profiles[0].label() == "rainbow_h2");
    CHECK(cfg.n_sites == 40);
    CHECK(cfg.fillings == std::vector<double>{0.25, 0.5});
    CHECK(cfg.mode_indices == std::vector<int>{1, 20});
    REQUIRE(cfg.mu0.has_value());
    CHECK(*cfg.mu0 == 0.7);
    CHECK(cfg.dump_spectrum);
    CHECK(particles_for(cfg, 0.25) == 10);
}

TEST_CASE("single profile shorthand and auto mu0") {
    TempDir tmp;
    auto p = write_config(tmp.path,
                          R"({"profile": {"kind": "minkowski"}, "N": 8,
                              "fillings": [0.5], "mu0": "auto"})");
    auto cfg = load_config(p);
    REQUIRE(cfg.profiles.size() == 1);
    CHECK_FALSE(cfg.mu0.has_value());
}

TEST_CASE("config rejections") {
    TempDir tmp;
    CHECK_THROWS_AS(load_config(tmp.path / "missing.json"), ConfigError);
    CHECK_THROWS_AS(load_config(write_config(tmp.path, "{not json")), ConfigError);
    CHECK_THROWS_AS(load_config(write_config(tmp.path, R"({"N": 7})")), ConfigError);
    CHECK_THROWS_AS(
        load_config(write_config(tmp.path, R"({"N": 10, "fillings": [0.33]})")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_config(tmp.path, R"({"N": 10, "fillings": [1.5]})")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_config(tmp.path, R"({"N": 10, "modes": [11]})")), ConfigError);
    CHECK_THROWS_AS(
        load_config(write_config(
            tmp.path, R"({"profile": {"kind": "wormhole"}, "N": 10})")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_config(
            tmp.path, R"({"profile": {"kind": "rainbow", "h": -1}, "N": 10})")),
        ConfigError);
}

TEST_CASE("custom profile table resolves relative to the config file") {
    TempDir tmp;
    {
        std::ofstream t(tmp.path / "table.csv");
        t << "# x,J\n0,1\n0.5,0.2\n1,1\n";
    }
    auto cfg = load_config(write_config(
        tmp.path, R"({"profile": {"kind": "custom", "table": "table.csv"}, "N": 10})"));
    REQUIRE(cfg.profiles.size() == 1);
    CHECK(cfg.profiles[0](0.5) == doctest::Approx(0.2));
}

TEST_CASE("density command writes deterministic csv output") {
    TempDir tmp;
    ExperimentConfig cfg = load_config(write_config(
        tmp.path, R"({"profile": {"kind": "rainbow", "h": 2.0}, "N": 40,
                      "fillings": [0.25]})"));
    cfg.outdir = tmp.path / "out";
    cmd_density(cfg);
    const fs::path csv = cfg.outdir / "density" / "rainbow_h2_nu0.25.csv";
    REQUIRE(fs::exists(csv));
    const std::string first = slurp(csv);
    CHECK(first.rfind("# site,x,", 0) == 0);
    // 40 data rows plus the header
    CHECK(std::count(first.begin(), first.end(), '\n') == 41);

    cmd_density(cfg);  // rerun must be byte-identical
    CHECK(slurp(csv) == first);
}

TEST_CASE("modes and entropy commands produce their outputs") {
    TempDir tmp;
    ExperimentConfig cfg = load_config(write_config(
        tmp.path, R"({"profile": {"kind": "rindler", "c": 0.25}, "N": 24,
                      "fillings": [0.5], "modes": [6]})"));
    cfg.outdir = tmp.path / "out";
    cfg.jobs = 2;
    cmd_modes(cfg);
    CHECK(fs::exists(cfg.outdir / "modes" / "rindler_c0.25_mode6.csv"));
    cmd_entropy(cfg);
    CHECK(fs::exists(cfg.outdir / "entropy" / "rindler_c0.25_nu0.5.csv"));
    cmd_compensate(cfg);
    CHECK(fs::exists(cfg.outdir / "compensate" / "rindler_c0.25_nu0.5.csv"));
    cmd_mimic(cfg);
    CHECK(fs::exists(cfg.outdir / "mimic" / "rindler_c0.25_nu0.5.csv"));
}

TEST_CASE("strongsweep writes bond tables") {
    TempDir tmp;
    ExperimentConfig cfg = load_config(write_config(
        tmp.path, R"({"N": 16, "fillings": [0.25], "h_list": [4.0]})"));
    cfg.outdir = tmp.path / "out";
    cmd_strongsweep(cfg);
    CHECK(fs::exists(cfg.outdir / "strongsweep" / "rainbow_h4_nu0.25.csv"));
    const std::string bonds = slurp(cfg.outdir / "strongsweep" / "rainbow_h4_bonds.csv");
    CHECK(bonds.rfind("# rank,left,right,strength,sign", 0) == 0);
    CHECK(std::count(bonds.begin(), bonds.end(), '\n') == 9);
}

TEST_CASE("commands demand the inputs they need") {
    ExperimentConfig cfg;
    CHECK_THROWS_AS(cmd_density(cfg), ConfigError);
    CHECK_THROWS_AS(cmd_modes(cfg), ConfigError);
    CHECK_THROWS_AS(cmd_strongsweep(cfg), ConfigError);
    CHECK_THROWS_AS(cmd_entropy(cfg), ConfigError);
}
