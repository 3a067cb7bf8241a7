/// @file sim.cpp

#include "blab/sim.hpp"

#include "blab/checkpoint.hpp"
#include "blab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace blab {

void Schedule::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("schedule: dt must be positive and finite");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("schedule: t_end must be positive and finite");
    if (sample_every < 1)
        throw std::invalid_argument("schedule: sample_every must be >= 1");
    if (stop_factor < 0.0)
        throw std::invalid_argument("schedule: stop_factor must be >= 0");
    if (checkpoint_every < 0)
        throw std::invalid_argument("schedule: checkpoint_every must be >= 0");
    if (checkpoint_every > 0 && out_dir.empty())
        throw std::invalid_argument("schedule: checkpoints need an output directory");
}

namespace {

void record_sample(Trajectory& traj, const FlowState& state,
                   const PhysicalParams& params, const MultiplierParams& mp,
                   const Schedule& schedule, int& rows_since_checkpoint) {
    DiagnosticsRow row = make_row(state, params, mp, schedule.m_diagnostics);
    traj.max_hs = std::max(traj.max_hs, row.hs_half_norm);
    traj.rows.push_back(std::move(row));
    if (schedule.keep_states) traj.states.push_back(state);

    if (schedule.checkpoint_every > 0) {
        ++rows_since_checkpoint;
        if (rows_since_checkpoint >= schedule.checkpoint_every) {
            rows_since_checkpoint = 0;
            char name[64];
            std::snprintf(name, sizeof name, "checkpoint_t%012.6f.bin", state.t);
            std::filesystem::create_directories(schedule.out_dir);
            save_checkpoint((std::filesystem::path(schedule.out_dir) / name).string(),
                            state);
        }
    }
}

} // namespace

Trajectory simulate(const FlowState& initial, const PhysicalParams& params,
                    const MultiplierParams& mp, const Schedule& schedule) {
    params.validate();
    mp.validate();
    schedule.validate();
    if (!initial.u1.grid.same_as(initial.u2.grid) ||
        !initial.u1.grid.same_as(initial.theta.grid))
        throw std::invalid_argument("simulate: fields live on different grids");
    if (!all_finite(initial.u1) || !all_finite(initial.u2) || !all_finite(initial.theta))
        throw std::invalid_argument("simulate: initial data has non-finite coefficients");
    if (initial.t < 0.0)
        throw std::invalid_argument("simulate: initial time must be >= 0");

    Trajectory traj;
    FlowState state = leray_project_moving(initial);
    traj.initial_hs = hs_half_norm(state, params);
    traj.max_hs = traj.initial_hs;

    // Advisory CFL check on the nonlinear advection; the integrator handles
    // the stiff symbol exactly, so this only gates the explicit part.
    double umax = std::max(max_abs(state.u1), max_abs(state.u2));
    double cfl = 0.5 / std::max(1.0, state.u1.grid.K * std::max(umax, 1e-30));
    if (!schedule.linear_only && schedule.dt > cfl) {
        traj.warnings.push_back("dt exceeds the advective CFL estimate " +
                                std::to_string(cfl));
    }
    if (auto warn = params.regime_warning()) traj.warnings.push_back(*warn);

    int rows_since_checkpoint = 0;
    record_sample(traj, state, params, mp, schedule, rows_since_checkpoint);

    const long n_steps =
        static_cast<long>(std::ceil((schedule.t_end - state.t) / schedule.dt - 1e-12));
    for (long step_idx = 0; step_idx < n_steps; ++step_idx) {
        double dt = std::min(schedule.dt, schedule.t_end - state.t);
        if (dt <= 0.0) break;
        state = step(state, params, dt, schedule.linear_only);

        bool sample_now = ((step_idx + 1) % schedule.sample_every == 0) ||
                          (step_idx + 1 == n_steps);
        if (!all_finite(state.u1) || !all_finite(state.u2) || !all_finite(state.theta)) {
            traj.diverged = true;
            traj.diverged_at = state.t;
            if (!traj.rows.empty()) traj.rows.back().flag = "diverged";
            break;
        }
        if (sample_now) {
            record_sample(traj, state, params, mp, schedule, rows_since_checkpoint);
            if (schedule.stop_factor > 0.0 &&
                traj.rows.back().hs_half_norm >
                    schedule.stop_factor * std::max(traj.initial_hs, 1e-300)) {
                traj.diverged = true;
                traj.diverged_at = state.t;
                traj.rows.back().flag = "diverged";
                break;
            }
        }
    }

    fill_estar_rate(traj.rows);
    return traj;
}

double hsp_half_data_norm(const FlowState& state, const PhysicalParams& params) {
    const SpectralGrid& g = state.u1.grid;
    double acc = 0.0;
    double expnt = params.s + 0.5;
    for (int k = -g.K; k <= g.K; ++k) {
        for (int j = -g.J; j <= g.J; ++j) {
            double xi = g.xi(j);
            double w = std::pow(1.0 + k * k + xi * xi, expnt);
            std::size_t i = g.idx(k, j);
            acc += w * (std::norm(state.u1.coeffs[i]) + std::norm(state.u2.coeffs[i]) +
                        std::norm(state.theta.coeffs[i]));
        }
    }
    return std::sqrt(acc * g.dxi);
}

FlowState band_limited_state(const SpectralGrid& grid, const PhysicalParams& params,
                             double amplitude, std::uint64_t seed,
                             int band_k, double band_xi) {
    if (!(amplitude > 0.0))
        throw std::invalid_argument("band_limited_state: amplitude must be positive");
    CounterRng rng(seed, /*stream=*/0x1d0);

    FlowState state;
    state.t = 0.0;
    state.u1 = zero_field(grid);
    state.u2 = zero_field(grid);
    state.theta = zero_field(grid);

    std::uint64_t counter = 0;
    for (int k = 1; k <= std::min(band_k, grid.K); ++k) {
        for (int j = -grid.J; j <= grid.J; ++j) {
            if (std::abs(grid.xi(j)) > band_xi) continue;
            cplx u2v(rng.normal(counter, 0), rng.normal(counter, 1));
            cplx thv(rng.normal(counter, 2), rng.normal(counter, 3));
            ++counter;
            // u1 follows from the constraint k u1 + xi u2 = 0 at t = 0.
            state.u2.at(k, j) = u2v;
            state.u1.at(k, j) = -grid.xi(j) / k * u2v;
            state.theta.at(k, j) = thv;
        }
    }
    symmetrize(state.u1);
    symmetrize(state.u2);
    symmetrize(state.theta);
    state = leray_project_moving(state);

    double norm = hsp_half_data_norm(state, params);
    if (norm <= 0.0)
        throw std::runtime_error("band_limited_state: empty band, check band_k/band_xi");
    double scale = amplitude / norm;
    state.u1 = scale * state.u1;
    state.u2 = scale * state.u2;
    state.theta = scale * state.theta;
    return state;
}

} // namespace blab
