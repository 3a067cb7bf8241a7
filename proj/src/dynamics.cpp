#include "blab/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace blab {

namespace {

const cplx I(0.0, 1.0);

/// Coupling coefficients of the linearized system at one mode, with the k=0
/// limits of the fractions and no coupling at the (0,0) mode.
struct Coupling {
    double a1, a2;  // multiplies u2^ in the u equation
    double b1, b2;  // multiplies g^2 th^ in the u equation (with minus sign)
};

Coupling coupling_at(int k, double xi, double t) {
    if (k == 0) {
        if (xi == 0.0) return {0.0, 0.0, 0.0, 0.0};
        return {-1.0, 0.0, 0.0, 0.0};
    }
    const double sh = xi - k * t;
    const double S = k * k + sh * sh;
    return {(k * k - sh * sh) / S, 2.0 * k * sh / S, -k * sh / S, k * k / S};
}

SpectralField derivative_x(const SpectralField& f) {
    SpectralField out = f;
    const SpectralGrid& g = f.grid;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j)
            out.at(k, j) = I * static_cast<double>(k) * f.at(k, j);
    return out;
}

SpectralField derivative_yl(const SpectralField& f, double t) {
    SpectralField out = f;
    const SpectralGrid& g = f.grid;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j)
            out.at(k, j) = I * (g.xi(j) - k * t) * f.at(k, j);
    return out;
}

} // namespace

double divergence_defect(const FlowState& state) {
    const SpectralGrid& g = state.u1.grid;
    double worst = 0.0;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            const double sh = g.xi(j) - k * state.t;
            const cplx div = static_cast<double>(k) * state.u1.at(k, j) + sh * state.u2.at(k, j);
            const double scale = std::hypot(static_cast<double>(k), sh) *
                                     std::hypot(std::abs(state.u1.at(k, j)),
                                                std::abs(state.u2.at(k, j))) +
                                 1e-300;
            worst = std::max(worst, std::abs(div) / scale);
        }
    return worst;
}

SpectralField pressure_linear(const FlowState& state, const PhysicalParams& params) {
    const SpectralGrid& g = state.u1.grid;
    SpectralField p = zero_field(g);
    const double g2 = params.gamma * params.gamma;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            if (k == 0 && j == 0) continue;  // gauge: zero mean pressure
            const double sh = g.xi(j) - k * state.t;
            const double S = k * k + sh * sh;
            p.at(k, j) = (2.0 * I * static_cast<double>(k) * state.u2.at(k, j) +
                          I * g2 * sh * state.theta.at(k, j)) / S;
        }
    return p;
}

SpectralField pressure_nonlinear(const FlowState& state) {
    const SpectralGrid& g = state.u1.grid;
    const SpectralField d2u1 = convolve_fast(state.u2, derivative_yl(state.u1, state.t));
    const SpectralField d2u2 = convolve_fast(state.u2, derivative_yl(state.u2, state.t));
    SpectralField p = zero_field(g);
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            if (k == 0 && j == 0) continue;
            const double sh = g.xi(j) - k * state.t;
            const double S = k * k + sh * sh;
            p.at(k, j) = 2.0 * (I * static_cast<double>(k) * d2u1.at(k, j) +
                                I * sh * d2u2.at(k, j)) / S;
        }
    return p;
}

Tendency linear_rhs(const FlowState& state, const PhysicalParams& params) {
    const SpectralGrid& g = state.u1.grid;
    Tendency out;
    out.linear_stiff = {zero_field(g), zero_field(g), zero_field(g)};
    out.linear_soft = {zero_field(g), zero_field(g), zero_field(g)};
    out.nonlinear = {zero_field(g), zero_field(g), zero_field(g)};
    const double g2 = params.gamma * params.gamma;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            const double sh = g.xi(j) - k * state.t;
            const double S = k * k + sh * sh;
            const cplx u2v = state.u2.at(k, j);
            const cplx thv = state.theta.at(k, j);
            out.linear_stiff.du1.at(k, j) = -params.nu * S * state.u1.at(k, j);
            out.linear_stiff.du2.at(k, j) = -params.nu * S * u2v;
            out.linear_stiff.dtheta.at(k, j) = -params.mu * S * thv;
            const Coupling c = coupling_at(k, g.xi(j), state.t);
            out.linear_soft.du1.at(k, j) = u2v * c.a1 - g2 * thv * c.b1;
            out.linear_soft.du2.at(k, j) = u2v * c.a2 - g2 * thv * c.b2;
            out.linear_soft.dtheta.at(k, j) = u2v;
        }
    return out;
}

Tendency nonlinear_rhs(const FlowState& state, const PhysicalParams& params) {
    const SpectralGrid& g = state.u1.grid;
    const double t = state.t;

    const SpectralField dxu1 = derivative_x(state.u1);
    const SpectralField dxu2 = derivative_x(state.u2);
    const SpectralField dxth = derivative_x(state.theta);
    const SpectralField dyu1 = derivative_yl(state.u1, t);
    const SpectralField dyu2 = derivative_yl(state.u2, t);
    const SpectralField dyth = derivative_yl(state.theta, t);

    const SpectralField a1x = convolve_fast(state.u1, dxu1);
    const SpectralField a1y = convolve_fast(state.u2, dyu1);
    const SpectralField a2x = convolve_fast(state.u1, dxu2);
    const SpectralField a2y = convolve_fast(state.u2, dyu2);
    const SpectralField atx = convolve_fast(state.u1, dxth);
    const SpectralField aty = convolve_fast(state.u2, dyth);

    Tendency out;
    out.linear_stiff = {zero_field(g), zero_field(g), zero_field(g)};
    out.linear_soft = {zero_field(g), zero_field(g), zero_field(g)};
    out.nonlinear = {zero_field(g), zero_field(g), zero_field(g)};
    (void)params;

    // p_NL from the same convolutions appearing in the advection terms.
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            const double sh = g.xi(j) - k * t;
            cplx p(0.0, 0.0);
            if (!(k == 0 && j == 0)) {
                const double S = k * k + sh * sh;
                p = 2.0 * (I * static_cast<double>(k) * a1y.at(k, j) +
                           I * sh * a2y.at(k, j)) / S;
            }
            out.nonlinear.du1.at(k, j) =
                -(a1x.at(k, j) + a1y.at(k, j)) - I * static_cast<double>(k) * p;
            out.nonlinear.du2.at(k, j) = -(a2x.at(k, j) + a2y.at(k, j)) - I * sh * p;
            out.nonlinear.dtheta.at(k, j) = -(atx.at(k, j) + aty.at(k, j));
        }
    return out;
}

double dissipation_integral(int k, double xi, double t0, double t1) {
    if (!(t1 >= t0))
        throw std::invalid_argument("dissipation_integral: t1 must be >= t0");
    return detail::dissipation_integral_signed(k, xi, t0, t1);
}

namespace detail {
double dissipation_integral_signed(int k, double xi, double t0, double t1) {
    auto P = [&](double tau) {
        return xi * xi * tau - xi * k * tau * tau + k * k * tau * tau * tau / 3.0;
    };
    return k * k * (t1 - t0) + P(t1) - P(t0);
}
} // namespace detail

FlowState leray_project_moving(const FlowState& state) {
    FlowState out = state;
    const SpectralGrid& g = state.u1.grid;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            const double sh = g.xi(j) - k * state.t;
            const double S = k * k + sh * sh;
            if (S == 0.0) {
                out.u2.at(k, j) = 0.0;  // zero-mean vertical velocity
                continue;
            }
            const cplx div = static_cast<double>(k) * state.u1.at(k, j) + sh * state.u2.at(k, j);
            out.u1.at(k, j) -= static_cast<double>(k) * div / S;
            out.u2.at(k, j) -= sh * div / S;
        }
    return out;
}

namespace detail {

FlowState step_raw(const FlowState& state, const PhysicalParams& params,
                   double dt, bool linear_only) {
    const SpectralGrid& g = state.u1.grid;
    const double t0 = state.t;
    const double h = dt;

    // Non-stiff right-hand side (soft coupling + nonlinear terms) at time t.
    auto nonstiff = [&](const FlowState& s) {
        Tendency lin = linear_rhs(s, params);
        TendencyPart r = std::move(lin.linear_soft);
        if (!linear_only) {
            Tendency nl = nonlinear_rhs(s, params);
            r.du1 = r.du1 + nl.nonlinear.du1;
            r.du2 = r.du2 + nl.nonlinear.du2;
            r.dtheta = r.dtheta + nl.nonlinear.dtheta;
        }
        return r;
    };

    // Per-mode propagator of the dissipation from ta to tb, applied in place.
    auto propagate = [&](FlowState& s, double ta, double tb) {
        for (int k = -g.K; k <= g.K; ++k)
            for (int j = -g.J; j <= g.J; ++j) {
                const double Iv = dissipation_integral_signed(k, g.xi(j), ta, tb);
                s.u1.at(k, j) *= std::exp(-params.nu * Iv);
                s.u2.at(k, j) *= std::exp(-params.nu * Iv);
                s.theta.at(k, j) *= std::exp(-params.mu * Iv);
            }
    };
    auto propagate_part = [&](TendencyPart& s, double ta, double tb) {
        for (int k = -g.K; k <= g.K; ++k)
            for (int j = -g.J; j <= g.J; ++j) {
                const double Iv = dissipation_integral_signed(k, g.xi(j), ta, tb);
                s.du1.at(k, j) *= std::exp(-params.nu * Iv);
                s.du2.at(k, j) *= std::exp(-params.nu * Iv);
                s.dtheta.at(k, j) *= std::exp(-params.mu * Iv);
            }
    };
    auto add_scaled = [&](const FlowState& s, double c, const TendencyPart& p) {
        FlowState r = s;
        r.u1 = s.u1 + c * p.du1;
        r.u2 = s.u2 + c * p.du2;
        r.theta = s.theta + c * p.dtheta;
        return r;
    };

    // Lawson RK4: classical RK4 on the integrating-factor-transformed system,
    // written with forward propagators only.
    const double th = t0 + 0.5 * h;
    const double t1 = t0 + h;

    TendencyPart k1 = nonstiff(state);

    FlowState s2 = add_scaled(state, 0.5 * h, k1);
    propagate(s2, t0, th);
    s2.t = th;
    TendencyPart k2 = nonstiff(s2);

    FlowState half = state;
    propagate(half, t0, th);                  // E_half * y0
    FlowState s3 = add_scaled(half, 0.5 * h, k2);
    s3.t = th;
    TendencyPart k3 = nonstiff(s3);

    FlowState s4 = add_scaled(half, h, k3);
    propagate(s4, th, t1);
    s4.t = t1;
    TendencyPart k4 = nonstiff(s4);

    FlowState out = state;
    propagate(out, t0, t1);                   // E_full * y0
    propagate_part(k1, t0, t1);
    TendencyPart k23;
    k23.du1 = k2.du1 + k3.du1;
    k23.du2 = k2.du2 + k3.du2;
    k23.dtheta = k2.dtheta + k3.dtheta;
    propagate_part(k23, th, t1);
    out.u1 = out.u1 + (h / 6.0) * (k1.du1 + 2.0 * k23.du1 + k4.du1);
    out.u2 = out.u2 + (h / 6.0) * (k1.du2 + 2.0 * k23.du2 + k4.du2);
    out.theta = out.theta + (h / 6.0) * (k1.dtheta + 2.0 * k23.dtheta + k4.dtheta);
    out.t = t1;

    return leray_project_moving(out);
}

} // namespace detail

FlowState step(const FlowState& state, const PhysicalParams& params, double dt,
               bool linear_only) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    return detail::step_raw(state, params, dt, linear_only);
}

} // namespace blab
