/// @file config.cpp

#include "blab/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace blab {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key \"" + section + "." + it.key() +
                              "\"");
    }
}

template <typename T>
void get(const json& obj, const std::string& section, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for \"" + section + "." + key + "\"");
    }
}

} // namespace

Config parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(root, "",
                   {"grid", "physics", "multipliers", "schedule", "init",
                    "experiment", "output", "verify"});

    Config cfg;
    if (root.contains("grid")) {
        const json& g = root["grid"];
        reject_unknown(g, "grid", {"K", "J", "L_Y", "dealias_fraction"});
        get(g, "grid", "K", cfg.K);
        get(g, "grid", "J", cfg.J);
        get(g, "grid", "L_Y", cfg.L_Y);
        get(g, "grid", "dealias_fraction", cfg.dealias_fraction);
    }
    if (root.contains("physics")) {
        const json& p = root["physics"];
        reject_unknown(p, "physics", {"nu", "mu", "gamma", "eps", "s", "delta"});
        get(p, "physics", "nu", cfg.physics.nu);
        get(p, "physics", "mu", cfg.physics.mu);
        get(p, "physics", "gamma", cfg.physics.gamma);
        get(p, "physics", "eps", cfg.physics.eps);
        get(p, "physics", "s", cfg.physics.s);
        get(p, "physics", "delta", cfg.physics.delta);
    }
    if (root.contains("multipliers")) {
        const json& m = root["multipliers"];
        reject_unknown(m, "multipliers", {"J_sum", "psi_tol"});
        get(m, "multipliers", "J_sum", cfg.J_sum);
        get(m, "multipliers", "psi_tol", cfg.psi_tol);
    }
    if (root.contains("schedule")) {
        const json& s = root["schedule"];
        reject_unknown(s, "schedule",
                       {"dt", "t_end", "sample_every", "linear_only", "m_diagnostics",
                        "keep_states", "stop_factor"});
        get(s, "schedule", "dt", cfg.schedule.dt);
        get(s, "schedule", "t_end", cfg.schedule.t_end);
        get(s, "schedule", "sample_every", cfg.schedule.sample_every);
        get(s, "schedule", "linear_only", cfg.schedule.linear_only);
        get(s, "schedule", "m_diagnostics", cfg.schedule.m_diagnostics);
        get(s, "schedule", "keep_states", cfg.schedule.keep_states);
        get(s, "schedule", "stop_factor", cfg.schedule.stop_factor);
    }
    if (root.contains("init")) {
        const json& i = root["init"];
        reject_unknown(i, "init", {"family", "amplitude", "seed", "band_limits"});
        get(i, "init", "family", cfg.init.family);
        get(i, "init", "amplitude", cfg.init.amplitude);
        get(i, "init", "seed", cfg.init.seed);
        if (i.contains("band_limits")) {
            const json& b = i["band_limits"];
            if (!b.is_array() || b.size() != 2)
                throw ConfigError("config: \"init.band_limits\" must be [band_k, band_xi]");
            try {
                cfg.init.band_k = b[0].get<int>();
                cfg.init.band_xi = b[1].get<double>();
            } catch (const json::exception&) {
                throw ConfigError("config: bad value for \"init.band_limits\"");
            }
        }
    }
    if (root.contains("experiment")) {
        const json& e = root["experiment"];
        reject_unknown(e, "experiment",
                       {"kappas", "T_max", "stability_factor", "bisection_depth",
                        "scan", "a_lo", "a_hi"});
        get(e, "experiment", "kappas", cfg.experiment.kappas);
        get(e, "experiment", "T_max", cfg.experiment.T_max);
        get(e, "experiment", "stability_factor", cfg.experiment.stability_factor);
        get(e, "experiment", "bisection_depth", cfg.experiment.bisection_depth);
        get(e, "experiment", "scan", cfg.experiment.scan);
        get(e, "experiment", "a_lo", cfg.experiment.a_lo);
        get(e, "experiment", "a_hi", cfg.experiment.a_hi);
    }
    if (root.contains("output")) {
        const json& o = root["output"];
        reject_unknown(o, "output", {"directory", "checkpoint_every"});
        get(o, "output", "directory", cfg.output.directory);
        get(o, "output", "checkpoint_every", cfg.output.checkpoint_every);
    }
    if (root.contains("verify")) {
        const json& v = root["verify"];
        reject_unknown(v, "verify",
                       {"t_min", "t_max", "k_max", "xi_max", "lambda", "n_train",
                        "n_holdout", "seed", "widen"});
        get(v, "verify", "t_min", cfg.verify.t_min);
        get(v, "verify", "t_max", cfg.verify.t_max);
        get(v, "verify", "k_max", cfg.verify.k_max);
        get(v, "verify", "xi_max", cfg.verify.xi_max);
        get(v, "verify", "lambda", cfg.verify.lambda);
        get(v, "verify", "n_train", cfg.verify.n_train);
        get(v, "verify", "n_holdout", cfg.verify.n_holdout);
        get(v, "verify", "seed", cfg.verify.seed);
        get(v, "verify", "widen", cfg.verify.widen);
    }

    // Re-validate every invariant at load time with config-level messages.
    try {
        cfg.physics.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: physics: ") + e.what());
    }
    try {
        (void)cfg.grid();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: grid: ") + e.what());
    }
    try {
        cfg.multiplier_params().validate();
        cfg.verify.mp = cfg.multiplier_params();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: multipliers: ") + e.what());
    }
    try {
        cfg.schedule.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: schedule: ") + e.what());
    }
    if (cfg.init.family != "band_limited")
        throw ConfigError("config: init.family: unsupported family \"" +
                          cfg.init.family + "\"");
    if (!(cfg.init.amplitude > 0.0))
        throw ConfigError("config: init.amplitude must be > 0");
    if (cfg.init.band_k < 0 || cfg.init.band_xi < 0.0)
        throw ConfigError("config: init.band_limits must be nonnegative");
    for (double k : cfg.experiment.kappas)
        if (!(k > 0.0)) throw ConfigError("config: experiment.kappas must be > 0");
    if (cfg.experiment.scan != "ed" && cfg.experiment.scan != "threshold" &&
        cfg.experiment.scan != "both")
        throw ConfigError("config: experiment.scan must be ed, threshold or both");
    if (cfg.output.checkpoint_every < 0)
        throw ConfigError("config: output.checkpoint_every must be >= 0");
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace blab
