#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peswr/experiments.hpp"

using namespace peswr;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("minimal config picks documented defaults") {
    const RunConfig cfg = parse_config_text("experiment=mono\n");
    CHECK(cfg.nx == 40);
    CHECK(cfg.nz == 10);
    CHECK(cfg.nt == 40);
    CHECK(cfg.t_final == 1.3);
    CHECK(cfg.epsilon == 1e-3);
    CHECK(cfg.guess == "random");
    const TransmissionParams tp = cfg.transmission();
    CHECK(tp.alpha == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(tp.beta == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("unknown and malformed keys are named") {
    try {
        parse_config_text("fooo=1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fooo") != std::string::npos);
    }
    try {
        parse_config_text("nx=forty\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("nx") != std::string::npos);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("nx=4\nnx=5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
}

TEST_CASE("step experiment config round-trips through dump") {
    const std::string text =
        "experiment=swr-step\n"
        "epsilon=1e-3\n"
        "u0=1\n"
        "nx=40\n"
        "nz=10\n"
        "nt=40\n"
        "t_final=1.3\n"
        "initial=step\n";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.experiment == ExperimentKind::SwrStep);
    CHECK(cfg.initial_kind() == InitialKind::Step);
    std::ostringstream dumped;
    dump_config(dumped, cfg);
    const RunConfig back = parse_config_text(dumped.str());
    CHECK(config_hash(back) == config_hash(cfg));
    std::ostringstream dumped2;
    dump_config(dumped2, back);
    CHECK(dumped.str() == dumped2.str());
}

TEST_CASE("environment overrides any config key") {
    RunConfig cfg = parse_config_text("nx=40\n");
    setenv("PESWR_NX", "12", 1);
    setenv("PESWR_GUESS", "sinusoid", 1);
    apply_env_overrides(cfg);
    unsetenv("PESWR_NX");
    unsetenv("PESWR_GUESS");
    CHECK(cfg.nx == 12);
    CHECK(cfg.guess_kind() == GuessKind::Sinusoid);
}

TEST_CASE("mono experiment emits snapshots and a manifest") {
    TempDir tmp("peswr_test_mono");
    RunConfig cfg = parse_config_text(
        "experiment=mono\ninitial=step\nnx=12\nnz=4\nnt=10\nt_final=0.5\nhalf_length=1\n");
    cfg.out_dir = (tmp.path / "a").string();
    CHECK(run_experiment(cfg) == 0);
    CHECK(fs::exists(fs::path(cfg.out_dir) / "mono_vel_k0.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "mono_zeta_k0.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "mono_vel_k10.csv"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "manifest.txt"));
    const std::string man = slurp(fs::path(cfg.out_dir) / "manifest.txt");
    CHECK(man.find("config_hash=") != std::string::npos);
    CHECK(man.find("mono_vel_k10.csv") != std::string::npos);

    // Snapshot row count: header + ncol*(nz+1) rows.
    std::stringstream ss(slurp(fs::path(cfg.out_dir) / "mono_vel_k0.csv"));
    int lines = 0;
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 1 + (2 * cfg.nx - 1) * (cfg.nz + 1));
}

TEST_CASE("reruns with one config and seed are byte-identical") {
    TempDir tmp("peswr_test_det");
    RunConfig cfg = parse_config_text(
        "experiment=swr-zero-test\nnx=10\nnz=3\nnt=8\nt_final=0.5\nhalf_length=1\n"
        "max_iterations=4\nseed=11\n");
    cfg.out_dir = (tmp.path / "r1").string();
    CHECK(run_experiment(cfg) == 0);
    RunConfig cfg2 = cfg;
    cfg2.out_dir = (tmp.path / "r2").string();
    CHECK(run_experiment(cfg2) == 0);
    for (const char* name : {"errors.csv", "manifest.txt"}) {
        const std::string a = slurp(fs::path(cfg.out_dir) / name);
        const std::string b = slurp(fs::path(cfg2.out_dir) / name);
        CHECK(a == b);
    }
}

TEST_CASE("zero test emits one error row per iteration") {
    TempDir tmp("peswr_test_rows");
    RunConfig cfg = parse_config_text(
        "experiment=swr-zero-test\nnx=10\nnz=3\nnt=8\nt_final=0.5\nhalf_length=1\n"
        "max_iterations=5\n");
    cfg.out_dir = (tmp.path / "z").string();
    CHECK(run_experiment(cfg) == 0);
    std::stringstream ss(slurp(fs::path(cfg.out_dir) / "errors.csv"));
    std::string line;
    std::getline(ss, line);
    CHECK(line == "iteration,field_error,interface_error");
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("convergence study reports first-order transport") {
    TempDir tmp("peswr_test_conv");
    RunConfig cfg = parse_config_text("experiment=convergence-study\nconv_levels=3\n");
    cfg.out_dir = (tmp.path / "c").string();
    CHECK(run_experiment(cfg) == 0);
    std::stringstream ss(slurp(fs::path(cfg.out_dir) / "convergence.csv"));
    std::string line;
    std::getline(ss, line);
    CHECK(line == "h,error,observed_order");
    std::vector<double> orders;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const size_t c1 = line.find(','), c2 = line.rfind(',');
        orders.push_back(std::stod(line.substr(c2 + 1)));
        (void)c1;
    }
    REQUIRE(orders.size() == 3);
    for (size_t k = 1; k < orders.size(); ++k) {
        CHECK(orders[k] >= 0.8);
        CHECK(orders[k] <= 1.2);
    }
}

TEST_CASE("custom csv initial condition round trip") {
    TempDir tmp("peswr_test_csv");
    // Generate a surface snapshot, then feed it back as the initial data.
    RunConfig cfg = parse_config_text(
        "experiment=mono\ninitial=step\nnx=8\nnz=3\nnt=4\nt_final=0.3\nhalf_length=1\n");
    cfg.out_dir = (tmp.path / "gen").string();
    CHECK(run_experiment(cfg) == 0);

    RunConfig cfg2 = cfg;
    cfg2.initial = "custom-csv";
    cfg2.custom_csv = (fs::path(cfg.out_dir) / "mono_zeta_k0.csv").string();
    const GridSpec g = cfg2.grid();
    const State s = build_initial_state(cfg2, g);
    const State want = build_initial_state(cfg, g);
    for (size_t q = 0; q < s.surface.zeta.size(); ++q)
        CHECK(s.surface.zeta[q] == want.surface.zeta[q]);

    RunConfig bad = cfg2;
    bad.custom_csv = (tmp.path / "missing.csv").string();
    CHECK_THROWS_AS(build_initial_state(bad, g), ConfigError);
}
