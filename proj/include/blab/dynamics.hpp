/// @file dynamics.hpp
/// The exact Fourier-side Boussinesq system in sheared coordinates:
///
///   d/dt u^ = -nu*(k^2+(xi-kt)^2) u^
///             + u2^ * ( (k^2-(xi-kt)^2)/S, 2k(xi-kt)/S )
///             - g^2 th^ * ( -k(xi-kt)/S, k^2/S )            + F^,
///   d/dt th^ = -mu*(k^2+(xi-kt)^2) th^ + u2^                + G^,
///   k u1^ + (xi-kt) u2^ = 0,            S := k^2+(xi-kt)^2.
///
/// F = -u.grad_L u - grad_L p_NL with -Lap_L p_NL = 2 div_L(u2 grad2_L u),
/// G = -u.grad_L theta. The stiff dissipation is integrated exactly through
/// the closed-form integrating factor; the rest is classical RK4 (Lawson).

#pragma once

#include "blab/grid.hpp"
#include "blab/params.hpp"

namespace blab {

struct FlowState {
    double t = 0.0;
    SpectralField u1, u2, theta;
};

struct TendencyPart {
    SpectralField du1, du2, dtheta;
};

/// Split right-hand side: stiff dissipation symbol, soft linear coupling,
/// and the nonlinear terms. Each part satisfies reality symmetry.
struct Tendency {
    TendencyPart linear_stiff;
    TendencyPart linear_soft;
    TendencyPart nonlinear;
};

/// Worst relative violation of k*u1^ + (xi-kt)*u2^ = 0 over the grid.
double divergence_defect(const FlowState& state);

/// p_L^ = (2ik u2^ + i g^2 (xi-kt) th^) / S, with p_L^(0,0) = 0.
SpectralField pressure_linear(const FlowState& state, const PhysicalParams& params);

/// p_NL^ = 2[ik F(u2 grad2_L u1) + i(xi-kt) F(u2 grad2_L u2)] / S,
/// products by convolution, (0,0) mode pinned to 0.
SpectralField pressure_nonlinear(const FlowState& state);

Tendency linear_rhs(const FlowState& state, const PhysicalParams& params);
Tendency nonlinear_rhs(const FlowState& state, const PhysicalParams& params);

/// Closed form of int_{t0}^{t1} (k^2 + (xi - k tau)^2) dtau; requires t1 >= t0.
double dissipation_integral(int k, double xi, double t0, double t1);

/// Project (u1^, u2^) onto the moving-frame divergence-free constraint.
FlowState leray_project_moving(const FlowState& state);

/// One integrator step of size dt > 0; re-projects the constraint afterwards.
/// Throws on dt <= 0; non-finite output is the caller's blow-up signal.
FlowState step(const FlowState& state, const PhysicalParams& params, double dt,
               bool linear_only = false);

namespace detail {
/// Signed-dt core used by step() and by the time-reversal property test.
FlowState step_raw(const FlowState& state, const PhysicalParams& params,
                   double dt, bool linear_only);
double dissipation_integral_signed(int k, double xi, double t0, double t1);
} // namespace detail

} // namespace blab
