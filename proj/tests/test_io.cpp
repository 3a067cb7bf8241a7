/// @file test_io.cpp
/// Checkpoint serialization, JSON config parsing and validation, and the
/// C-linkage shared-library interface end to end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blab/blab_c.h"
#include "blab/checkpoint.hpp"
#include "blab/config.hpp"
#include "blab/rng.hpp"
#include "blab/sim.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace blab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("blab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

FlowState sample_state(int K, int J, std::uint64_t seed) {
    SpectralGrid g = make_grid(K, J, 2.0 * M_PI);
    PhysicalParams p;
    p.nu = p.mu = 1e-3;
    p.gamma = 1.0;
    FlowState s = band_limited_state(g, p, 1e-2, seed, K, J * g.dxi);
    s.t = 0.75;
    return s;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string base_config_json(const std::string& out_dir, double gamma = 1.0,
                             double amplitude = 1e-3) {
    std::ostringstream ss;
    ss << "{\n"
       << "  \"grid\": {\"K\": 2, \"J\": 16, \"L_Y\": 6.283185307179586},\n"
       << "  \"physics\": {\"nu\": 1e-3, \"mu\": 1e-3, \"gamma\": " << gamma
       << ", \"eps\": 0.5, \"s\": 2.0, \"delta\": 0.25},\n"
       << "  \"schedule\": {\"dt\": 0.02, \"t_end\": 0.5, \"sample_every\": 5},\n"
       << "  \"init\": {\"family\": \"band_limited\", \"amplitude\": " << amplitude
       << ", \"seed\": 3, \"band_limits\": [1, 1.0]},\n"
       << "  \"verify\": {\"n_train\": 1000, \"n_holdout\": 1000, \"seed\": 2026},\n"
       << "  \"output\": {\"directory\": \"" << out_dir << "\"}\n"
       << "}\n";
    return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& json_text) {
    fs::path path = dir / "config.json";
    write_file(path, json_text);
    return path;
}

} // namespace

// ---- checkpoints ----

TEST_CASE("checkpoint roundtrip is bitwise exact") {
    fs::path dir = scratch_dir("ckpt");
    FlowState s = sample_state(3, 12, 17);
    fs::path path = dir / "state.ckpt";
    save_checkpoint(path.string(), s);
    FlowState r = load_checkpoint(path.string());

    CHECK(r.t == s.t);
    CHECK(r.u1.grid.K == s.u1.grid.K);
    CHECK(r.u1.grid.J == s.u1.grid.J);
    CHECK(r.u1.grid.L_Y == s.u1.grid.L_Y);
    REQUIRE(r.u1.coeffs.size() == s.u1.coeffs.size());
    for (std::size_t i = 0; i < s.u1.coeffs.size(); ++i) {
        CHECK(r.u1.coeffs[i] == s.u1.coeffs[i]);
        CHECK(r.u2.coeffs[i] == s.u2.coeffs[i]);
        CHECK(r.theta.coeffs[i] == s.theta.coeffs[i]);
    }

    // saving the reloaded state reproduces the file byte for byte
    fs::path path2 = dir / "state2.ckpt";
    save_checkpoint(path2.string(), r);
    CHECK(read_file(path) == read_file(path2));
}

TEST_CASE("checkpoint loader rejects corrupt files") {
    fs::path dir = scratch_dir("ckpt_bad");
    FlowState s = sample_state(2, 8, 5);
    fs::path good = dir / "good.ckpt";
    save_checkpoint(good.string(), s);
    std::string bytes = read_file(good);
    CHECK(bytes.substr(0, 4) == "CBLB");

    fs::path bad_magic = dir / "bad_magic.ckpt";
    std::string magicked = bytes;
    magicked[0] = 'X';
    write_file(bad_magic, magicked);
    CHECK_THROWS_AS(load_checkpoint(bad_magic.string()), std::runtime_error);

    fs::path bad_version = dir / "bad_version.ckpt";
    std::string versioned = bytes;
    versioned[4] = 2;  // version field, little endian
    write_file(bad_version, versioned);
    CHECK_THROWS_AS(load_checkpoint(bad_version.string()), std::runtime_error);

    fs::path truncated = dir / "truncated.ckpt";
    write_file(truncated, bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_checkpoint(truncated.string()), std::runtime_error);

    CHECK_THROWS_AS(load_checkpoint((dir / "missing.ckpt").string()),
                    std::runtime_error);
}

// ---- config parsing ----

TEST_CASE("config parses the full schema") {
    Config cfg = parse_config(base_config_json("outdir"));
    CHECK(cfg.K == 2);
    CHECK(cfg.J == 16);
    CHECK(cfg.L_Y == doctest::Approx(2.0 * M_PI));
    CHECK(cfg.physics.nu == 1e-3);
    CHECK(cfg.physics.gamma == 1.0);
    CHECK(cfg.schedule.dt == 0.02);
    CHECK(cfg.schedule.t_end == 0.5);
    CHECK(cfg.init.band_k == 1);
    CHECK(cfg.init.band_xi == 1.0);
    CHECK(cfg.init.seed == 3);
    CHECK(cfg.verify.n_train == 1000);
    CHECK(cfg.output.directory == "outdir");
    // verify inherits the multiplier parameters derived from physics
    CHECK(cfg.verify.mp.gamma == 1.0);
}

TEST_CASE("config rejects unknown keys by name") {
    std::string text = R"({"grid": {"K": 2, "J": 8, "Q": 3}})";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("grid.Q") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"gird": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
}

TEST_CASE("config rejects bad values with the offending key") {
    try {
        parse_config(R"({"grid": {"K": "two"}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("grid.K") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"init": {"band_limits": [1]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"init": {"amplitude": -1.0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"init": {"family": "plume"}})"), ConfigError);
}

TEST_CASE("config re-validates the coercivity constraint") {
    try {
        parse_config(base_config_json("outdir", 0.4));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("coercivity") != std::string::npos);
    }
}

TEST_CASE("load_config reports a missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

// ---- C API: subcommand runners ----

TEST_CASE("blab_version is a nonempty string") {
    const char* v = blab_version();
    REQUIRE(v != nullptr);
    CHECK(std::string(v).size() > 0);
}

TEST_CASE("blab_run_simulate writes diagnostics and is deterministic") {
    fs::path dir = scratch_dir("capi_sim");
    fs::path cfg = write_config(dir, base_config_json((dir / "out").string()));
    char err[256] = {};

    int rc = blab_run_simulate(cfg.string().c_str(), nullptr, -1, err, sizeof(err));
    CHECK(rc == 0);
    fs::path csv = dir / "out" / "diagnostics.csv";
    REQUIRE(fs::exists(csv));
    std::string contents = read_file(csv);
    std::string header = contents.substr(0, contents.find('\n'));
    CHECK(header == diagnostics_csv_header());
    CHECK(header ==
          "t,E,D,Estar,u1neq_L2,u2_L2,u2hat_L1,thetaneq_L2,hs_half_norm,"
          "diss_visc,diss_u2_weighted,diss_k13,diss_upsilon,diss_t3,"
          "dEstar_dt_fd,flag");

    // a rerun with identical inputs reproduces the file byte for byte
    fs::path dir2 = dir / "out2";
    rc = blab_run_simulate(cfg.string().c_str(), dir2.string().c_str(), -1, err,
                           sizeof(err));
    CHECK(rc == 0);
    CHECK(read_file(dir2 / "diagnostics.csv") == contents);

    // an explicit seed override changes the data rows
    fs::path dir3 = dir / "out3";
    rc = blab_run_simulate(cfg.string().c_str(), dir3.string().c_str(), 99, err,
                           sizeof(err));
    CHECK(rc == 0);
    CHECK(read_file(dir3 / "diagnostics.csv") != contents);
}

TEST_CASE("blab_run_simulate exit codes for bad config and divergence") {
    fs::path dir = scratch_dir("capi_rc");
    char err[256] = {};

    fs::path bad = write_config(dir, base_config_json((dir / "out").string(), 0.4));
    int rc = blab_run_simulate(bad.string().c_str(), nullptr, -1, err, sizeof(err));
    CHECK(rc == 1);
    CHECK(std::string(err).find("coercivity") != std::string::npos);

    rc = blab_run_simulate((dir / "missing.json").string().c_str(), nullptr, -1, err,
                           sizeof(err));
    CHECK(rc == 1);

    // a nonlinear run at absurd amplitude goes non-finite and reports 2
    fs::path div = dir / "div.json";
    write_file(div, base_config_json((dir / "divout").string(), 1.0, 1e6));
    err[0] = '\0';
    rc = blab_run_simulate(div.string().c_str(), nullptr, -1, err, sizeof(err));
    CHECK(rc == 2);
    CHECK(std::string(err).find("diverged") != std::string::npos);
    // the partial trajectory is still written
    CHECK(fs::exists(dir / "divout" / "diagnostics.csv"));
}

TEST_CASE("blab_run_verify writes lemma reports") {
    fs::path dir = scratch_dir("capi_verify");
    fs::path cfg = write_config(dir, base_config_json((dir / "out").string()));
    char err[256] = {};

    int rc = blab_run_verify(cfg.string().c_str(), nullptr, "lemma2.1", -1, err,
                             sizeof(err));
    CHECK(rc == 0);
    fs::path csv = dir / "out" / "lemma_reports.csv";
    REQUIRE(fs::exists(csv));
    std::string contents = read_file(csv);
    CHECK(contents.find(ratio_report_csv_header()) == 0);
    CHECK(contents.find("lemma2.1-poisson") != std::string::npos);

    rc = blab_run_verify(cfg.string().c_str(), nullptr, "lemma9.9", -1, err,
                         sizeof(err));
    CHECK(rc == 1);
}

TEST_CASE("blab_run_scan rejects an empty kappa list") {
    fs::path dir = scratch_dir("capi_scan");
    fs::path cfg = write_config(dir, base_config_json((dir / "out").string()));
    char err[256] = {};
    int rc = blab_run_scan(cfg.string().c_str(), nullptr, -1, err, sizeof(err));
    CHECK(rc == 1);
    CHECK(std::string(err).find("kappas") != std::string::npos);
}

// ---- C API: incremental simulation handle ----

TEST_CASE("blab_sim lifecycle, checkpointing, and resume determinism") {
    fs::path dir = scratch_dir("capi_handle");
    fs::path cfg = write_config(dir, base_config_json((dir / "out").string()));
    char err[256] = {};

    blab_sim* sim = blab_sim_create(cfg.string().c_str(), err, sizeof(err));
    REQUIRE(sim != nullptr);
    CHECK(blab_sim_time(sim) == 0.0);
    double h0 = blab_sim_hs_half_norm(sim);
    CHECK(h0 > 0.0);

    CHECK(blab_sim_advance(sim, 10) == 0);
    CHECK(blab_sim_time(sim) == doctest::Approx(0.2));
    fs::path ckpt = dir / "mid.ckpt";
    CHECK(blab_sim_save(sim, ckpt.string().c_str(), err, sizeof(err)) == 0);

    CHECK(blab_sim_advance(sim, 10) == 0);
    double t_final = blab_sim_time(sim);
    double h_final = blab_sim_hs_half_norm(sim);
    CHECK(t_final == doctest::Approx(0.4));

    // rewind to the checkpoint, replay, and land on the same values
    CHECK(blab_sim_load(sim, ckpt.string().c_str(), err, sizeof(err)) == 0);
    CHECK(blab_sim_time(sim) == doctest::Approx(0.2));
    CHECK(blab_sim_advance(sim, 10) == 0);
    CHECK(blab_sim_time(sim) == t_final);
    CHECK(blab_sim_hs_half_norm(sim) == h_final);

    CHECK(blab_sim_advance(sim, -1) == 1);
    CHECK(blab_sim_save(sim, nullptr, err, sizeof(err)) == 1);
    blab_sim_destroy(sim);
    blab_sim_destroy(nullptr);  // must be a harmless no-op

    CHECK(blab_sim_create((dir / "missing.json").string().c_str(), err,
                          sizeof(err)) == nullptr);
    CHECK(std::string(err).size() > 0);
}
