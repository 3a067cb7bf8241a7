/// @file sim.hpp
/// Trajectory driver: advances the Fourier-side system with the exponential
/// integrator and emits diagnostics rows (and optional checkpoints).

#pragma once

#include "blab/energy.hpp"

#include <string>

namespace blab {

struct Schedule {
    double dt = 0.01;
    double t_end = 1.0;
    int sample_every = 10;     // steps between diagnostics rows
    bool linear_only = false;
    bool m_diagnostics = false;  // compute Estar and the M dissipation terms
    bool keep_states = false;    // retain a state copy at each sample time
    double stop_factor = 0.0;    // >0: stop once hs norm exceeds factor*initial
    int checkpoint_every = 0;    // rows between checkpoints; 0 disables
    std::string out_dir;         // checkpoint directory

    void validate() const;
};

Trajectory simulate(const FlowState& initial, const PhysicalParams& params,
                    const MultiplierParams& mp, const Schedule& schedule);

/// Band-limited random initial data: complex Gaussian coefficients on
/// |k| <= band_k (k != 0), |xi| <= band_xi, reality-symmetrized,
/// divergence-projected at t = 0, then scaled to the requested H^{s+1/2} norm.
FlowState band_limited_state(const SpectralGrid& grid, const PhysicalParams& params,
                             double amplitude, std::uint64_t seed,
                             int band_k, double band_xi);

/// || (u, theta) ||_{H^{s+1/2}} of a state (the Theorem 1.1 data norm).
double hsp_half_data_norm(const FlowState& state, const PhysicalParams& params);

} // namespace blab
