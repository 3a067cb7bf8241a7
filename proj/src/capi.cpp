/// @file capi.cpp
/// C API implementation: thin orchestration over the core library with all
/// exceptions converted to exit codes and error strings.

#include "blab/blab_c.h"

#include "blab/checkpoint.hpp"
#include "blab/config.hpp"
#include "blab/experiment.hpp"
#include "blab/inequality.hpp"
#include "blab/sim.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace blab;

void set_err(char* err, size_t err_len, const std::string& msg) {
    if (!err || err_len == 0) return;
    std::snprintf(err, err_len, "%s", msg.c_str());
}

Config load_with_overrides(const char* config_path, long long seed) {
    Config cfg = load_config(config_path ? config_path : "");
    if (seed >= 0) {
        cfg.init.seed = static_cast<std::uint64_t>(seed);
        cfg.verify.seed = static_cast<std::uint64_t>(seed);
    }
    return cfg;
}

FlowState make_initial(const Config& cfg) {
    SpectralGrid grid = cfg.grid();
    int band_k = cfg.init.band_k > 0 ? cfg.init.band_k : std::max(1, cfg.K / 2);
    double band_xi = cfg.init.band_xi > 0.0 ? cfg.init.band_xi
                                            : cfg.J * grid.dxi / 2.0;
    return band_limited_state(grid, cfg.physics, cfg.init.amplitude, cfg.init.seed,
                              band_k, band_xi);
}

std::filesystem::path out_path(const char* out_dir, const Config& cfg,
                               const std::string& name) {
    std::filesystem::path dir =
        (out_dir && *out_dir) ? out_dir : cfg.output.directory;
    std::filesystem::create_directories(dir);
    return dir / name;
}

double run_t_max(const Config& cfg, double kappa) {
    if (cfg.experiment.T_max > 0.0) return cfg.experiment.T_max;
    return 5.0 * std::pow(kappa, -1.0 / 3.0);
}

Trajectory run_one(const Config& cfg, const char* out_dir) {
    FlowState init = make_initial(cfg);
    Schedule sched = cfg.schedule;
    if (cfg.output.checkpoint_every > 0) {
        sched.checkpoint_every = cfg.output.checkpoint_every;
        sched.out_dir = out_path(out_dir, cfg, "").string();
    }
    return simulate(init, cfg.physics, cfg.multiplier_params(), sched);
}

Series series_of(const std::vector<DiagnosticsRow>& rows,
                 double DiagnosticsRow::* field) {
    Series s;
    for (const auto& r : rows) s.emplace_back(r.t, r.*field);
    return s;
}

int simulate_impl(const char* config_path, const char* out_dir, long long seed,
                  char* err, size_t err_len) {
    Config cfg;
    try {
        cfg = load_with_overrides(config_path, seed);
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
    Trajectory traj = run_one(cfg, out_dir);
    write_diagnostics_csv(out_path(out_dir, cfg, "diagnostics.csv").string(),
                          traj.rows);
    for (const std::string& w : traj.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (traj.diverged) {
        set_err(err, err_len,
                "run diverged at t=" + std::to_string(traj.diverged_at));
        return 2;
    }
    return 0;
}

int verify_impl(const char* config_path, const char* out_dir, const char* lemma_id,
                long long seed, char* err, size_t err_len) {
    Config cfg;
    std::vector<RatioReport> reports;
    try {
        cfg = load_with_overrides(config_path, seed);
        std::string id = (lemma_id && *lemma_id) ? lemma_id : "all";
        reports = run_lemma_suite(cfg.verify, id);
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
    std::ofstream csv(out_path(out_dir, cfg, "lemma_reports.csv"));
    csv << ratio_report_csv_header() << "\n";
    bool all_pass = true;
    for (const auto& r : reports) {
        csv << ratio_report_csv_line(r) << "\n";
        std::printf("%s\n", ratio_report_summary(r).c_str());
        all_pass = all_pass && r.pass;
    }
    if (!all_pass) {
        set_err(err, err_len, "held-out validation failed");
        return 2;
    }
    return 0;
}

int scan_impl(const char* config_path, const char* out_dir, long long seed,
              char* err, size_t err_len) {
    Config cfg;
    try {
        cfg = load_with_overrides(config_path, seed);
        if (cfg.experiment.kappas.empty())
            throw ConfigError("config: experiment.kappas is empty");
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }

    try {
        if (cfg.experiment.scan == "ed" || cfg.experiment.scan == "both") {
            auto rate_for = [&](double kappa) {
                Config run = cfg;
                run.physics.nu = kappa;
                run.physics.mu = kappa;
                run.schedule.linear_only = true;
                run.schedule.t_end = run_t_max(cfg, kappa);
                run.schedule.stop_factor = 0.0;
                Trajectory traj = run_one(run, out_dir);
                if (traj.diverged)
                    throw std::runtime_error("ed scan member run diverged");
                double T0 = std::pow(kappa, -1.0 / 6.0);
                FitResult fit = fit_exp_rate(
                    series_of(traj.rows, &DiagnosticsRow::hs_half_norm), T0,
                    run.schedule.t_end);
                return fit.value;
            };
            RateScanResult res = ed_rate_scaling(cfg.experiment.kappas, rate_for);
            std::ofstream csv(out_path(out_dir, cfg, "ed_scan.csv"));
            csv << "kappa,rate\n";
            for (std::size_t i = 0; i < res.kappas.size(); ++i) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", res.kappas[i],
                              res.rates[i]);
                csv << buf;
            }
            std::printf("ed_rate_scaling slope=%.6g half_width=%.3g residual=%.3g\n",
                        res.slope.value, res.slope.half_width, res.slope.residual);
        }
        if (cfg.experiment.scan == "threshold" || cfg.experiment.scan == "both") {
            auto stable = [&](double kappa, double a) {
                Config run = cfg;
                run.physics.nu = kappa;
                run.physics.mu = kappa;
                run.schedule.linear_only = false;
                run.schedule.t_end = run_t_max(cfg, kappa);
                run.schedule.stop_factor = cfg.experiment.stability_factor;
                run.init.amplitude = a;
                Trajectory traj = run_one(run, out_dir);
                return !traj.diverged;
            };
            BisectionSpec bspec{cfg.experiment.a_lo, cfg.experiment.a_hi,
                                cfg.experiment.bisection_depth};
            ThresholdReport rep =
                threshold_scan(cfg.experiment.kappas, bspec, stable);
            std::ofstream csv(out_path(out_dir, cfg, "threshold_scan.csv"));
            csv << "kappa,a_star,verdict,T_max,seed\n";
            for (const auto& p : rep.points) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s,%.12g,%llu\n",
                              p.kappa, p.a_star, p.verdict.c_str(),
                              run_t_max(cfg, p.kappa),
                              static_cast<unsigned long long>(cfg.init.seed));
                csv << buf;
            }
            std::printf("threshold_scan slope=%.6g half_width=%.3g resolved=%s\n",
                        rep.slope.value, rep.slope.half_width,
                        rep.all_resolved ? "all" : "partial");
        }
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
    return 0;
}

int fit_impl(const char* csv_path, const char* out_dir, char* err, size_t err_len) {
    std::ifstream in(csv_path ? csv_path : "");
    if (!in) {
        set_err(err, err_len, std::string("cannot read ") +
                                  (csv_path ? csv_path : "(null)"));
        return 1;
    }
    std::string header;
    std::getline(in, header);
    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
    }
    auto col_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i);
        return -1;
    };
    const char* wanted[5] = {"u2_L2", "u1neq_L2", "thetaneq_L2", "u2hat_L1",
                             "hs_half_norm"};
    int t_col = col_of("t");
    if (t_col < 0) {
        set_err(err, err_len, "csv is missing the t column");
        return 1;
    }
    std::vector<Series> series(5);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> f;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        double t = std::atof(f[t_col].c_str());
        for (int w = 0; w < 5; ++w) {
            int ci = col_of(wanted[w]);
            if (ci >= 0 && ci < static_cast<int>(f.size()))
                series[w].emplace_back(t, std::atof(f[ci].c_str()));
        }
    }
    try {
        std::filesystem::path dir = (out_dir && *out_dir) ? out_dir : ".";
        std::filesystem::create_directories(dir);
        std::ofstream out(dir / "fit_summary.csv");
        out << "series,kind,value,residual,half_width,n_points\n";
        for (int w = 0; w < 5; ++w) {
            if (series[w].empty()) continue;
            double t_last = series[w].back().first;
            char buf[160];
            if (w < 4) {
                FitResult fr =
                    fit_power_decay(series[w], 10.0, std::min(100.0, t_last));
                std::snprintf(buf, sizeof buf, "%s,power,%.12g,%.6g,%.6g,%zu\n",
                              wanted[w], fr.value, fr.residual, fr.half_width,
                              fr.n_points);
            } else {
                FitResult fr =
                    fit_exp_rate(series[w], std::min(10.0, t_last / 2.0), t_last);
                std::snprintf(buf, sizeof buf, "%s,exp,%.12g,%.6g,%.6g,%zu\n",
                              wanted[w], fr.value, fr.residual, fr.half_width,
                              fr.n_points);
            }
            out << buf;
            std::printf("%s", buf);
        }
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
    return 0;
}

} // namespace

struct blab_sim {
    Config cfg;
    MultiplierParams mp;
    FlowState state;
};

extern "C" {

const char* blab_version(void) { return "0.1.0"; }

int blab_run_simulate(const char* config_path, const char* out_dir, long long seed,
                      char* err, size_t err_len) {
    try {
        return simulate_impl(config_path, out_dir, seed, err, err_len);
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
}

int blab_run_verify(const char* config_path, const char* out_dir, const char* lemma_id,
                    long long seed, char* err, size_t err_len) {
    try {
        return verify_impl(config_path, out_dir, lemma_id, seed, err, err_len);
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
}

int blab_run_scan(const char* config_path, const char* out_dir, long long seed,
                  char* err, size_t err_len) {
    try {
        return scan_impl(config_path, out_dir, seed, err, err_len);
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
}

int blab_run_fit(const char* csv_path, const char* out_dir, char* err,
                 size_t err_len) {
    try {
        return fit_impl(csv_path, out_dir, err, err_len);
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
}

blab_sim* blab_sim_create(const char* config_path, char* err, size_t err_len) {
    try {
        auto* sim = new blab_sim;
        sim->cfg = load_config(config_path ? config_path : "");
        sim->mp = sim->cfg.multiplier_params();
        sim->state = make_initial(sim->cfg);
        return sim;
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return nullptr;
    }
}

int blab_sim_advance(blab_sim* sim, int steps) {
    if (!sim || steps < 0) return 1;
    try {
        for (int i = 0; i < steps; ++i) {
            sim->state = step(sim->state, sim->cfg.physics, sim->cfg.schedule.dt,
                              sim->cfg.schedule.linear_only);
            if (!all_finite(sim->state.u1) || !all_finite(sim->state.u2) ||
                !all_finite(sim->state.theta))
                return 2;
        }
    } catch (const std::exception&) {
        return 1;
    }
    return 0;
}

double blab_sim_time(const blab_sim* sim) { return sim ? sim->state.t : 0.0; }

double blab_sim_hs_half_norm(const blab_sim* sim) {
    return sim ? hs_half_norm(sim->state, sim->cfg.physics) : 0.0;
}

int blab_sim_save(const blab_sim* sim, const char* path, char* err, size_t err_len) {
    if (!sim || !path) return 1;
    try {
        save_checkpoint(path, sim->state);
        return 0;
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
}

int blab_sim_load(blab_sim* sim, const char* path, char* err, size_t err_len) {
    if (!sim || !path) return 1;
    try {
        sim->state = load_checkpoint(path);
        return 0;
    } catch (const std::exception& e) {
        set_err(err, err_len, e.what());
        return 1;
    }
}

void blab_sim_destroy(blab_sim* sim) { delete sim; }

} // extern "C"
