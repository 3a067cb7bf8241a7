/// @file config.hpp
/// JSON run configuration: exact key schema, unknown keys rejected, physics
/// invariants re-validated at load time.

#pragma once

#include "blab/inequality.hpp"
#include "blab/params.hpp"
#include "blab/sim.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace blab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InitConfig {
    std::string family = "band_limited";
    double amplitude = 1e-3;
    std::uint64_t seed = 2026;
    int band_k = 0;        // 0 means the default K/2
    double band_xi = 0.0;  // 0 means the default J*dxi/2
};

struct ExperimentConfig {
    std::vector<double> kappas;
    double T_max = 0.0;              // 0 means 5*kappa^{-1/3} per run
    double stability_factor = 10.0;
    int bisection_depth = 6;
    std::string scan = "ed";         // ed | threshold | both
    double a_lo = 1e-6;
    double a_hi = 1.0;
};

struct OutputConfig {
    std::string directory = "out";
    int checkpoint_every = 0;
};

struct Config {
    int K = 8;
    int J = 64;
    double L_Y = 2.0 * M_PI;
    double dealias_fraction = 2.0 / 3.0;
    PhysicalParams physics;
    int J_sum = 2000;
    double psi_tol = 1e-10;
    Schedule schedule;
    InitConfig init;
    ExperimentConfig experiment;
    OutputConfig output;
    SampleSpec verify;

    SpectralGrid grid() const { return make_grid(K, J, L_Y, dealias_fraction); }
    MultiplierParams multiplier_params() const {
        return MultiplierParams::from_physical(physics, J_sum, psi_tol);
    }
};

/// Parses and validates; throws ConfigError naming the offending key.
Config load_config(const std::string& path);
Config parse_config(const std::string& json_text);

} // namespace blab
