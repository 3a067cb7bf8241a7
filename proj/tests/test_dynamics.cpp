/// @file test_dynamics.cpp
/// The Fourier-side Boussinesq system: pressures, tendencies, the closed-form
/// dissipation integral, the moving-frame Leray projection, and the Lawson
/// integrator against closed forms and a fine-step ODE oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blab/dynamics.hpp"
#include "blab/rng.hpp"

#include <cmath>
#include <complex>

using namespace blab;

namespace {

const cplx I(0.0, 1.0);

FlowState zero_state(const SpectralGrid& g, double t = 0.0) {
    return {t, zero_field(g), zero_field(g), zero_field(g)};
}

FlowState random_state(const SpectralGrid& g, std::uint64_t seed, double scale,
                       double t = 0.0) {
    FlowState s = zero_state(g, t);
    CounterRng rng{seed, 2};
    std::uint64_t c = 0;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            s.u2.at(k, j) = scale * cplx(rng.normal(c, 0), rng.normal(c, 1));
            s.theta.at(k, j) = scale * cplx(rng.normal(c, 2), rng.normal(c, 3));
            ++c;
        }
    symmetrize(s.u2);
    symmetrize(s.theta);
    s = leray_project_moving(s);
    return s;
}

PhysicalParams inviscid() {
    PhysicalParams p;
    p.nu = p.mu = 0.0;
    p.gamma = 1.0;
    p.eps = 0.5;
    p.s = 2.0;
    p.delta = 0.25;
    return p;
}

double state_distance(const FlowState& a, const FlowState& b) {
    double d = 0.0;
    d = std::max(d, max_abs(a.u1 - b.u1));
    d = std::max(d, max_abs(a.u2 - b.u2));
    d = std::max(d, max_abs(a.theta - b.theta));
    return d;
}

} // namespace

// ---- pressures ----

TEST_CASE("pressure_linear closed-form points") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    PhysicalParams p = inviscid();

    FlowState s = zero_state(g);
    CHECK(max_abs(pressure_linear(s, p)) == 0.0);

    s.u2.at(1, 0) = cplx(1.0, 0.0);
    SpectralField pr = pressure_linear(s, p);
    CHECK(std::abs(pr.at(1, 0) - 2.0 * I) < 1e-14);

    FlowState s2 = zero_state(g);
    s2.theta.at(0, 1) = cplx(1.0, 0.0);
    SpectralField pr2 = pressure_linear(s2, p);
    CHECK(std::abs(pr2.at(0, 1) - I) < 1e-14);
}

TEST_CASE("pressure_nonlinear zero cases") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    CHECK(max_abs(pressure_nonlinear(zero_state(g))) == 0.0);
    FlowState s = zero_state(g);
    s.u1.at(1, 1) = cplx(0.3, 0.1);
    s.u1.at(-1, -1) = std::conj(s.u1.at(1, 1));
    s.theta.at(1, 0) = cplx(1.0, 0.0);
    s.theta.at(-1, 0) = cplx(1.0, 0.0);
    CHECK(max_abs(pressure_nonlinear(s)) == 0.0);  // every term carries u2
}

TEST_CASE("pressure_nonlinear matches a direct-convolution assembly") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    FlowState s = random_state(g, 31, 0.2, 0.7);
    SpectralField pr = pressure_nonlinear(s);

    // independent assembly: p = 2[ik C(u2, i sh u1) + i sh C(u2, i sh u2)]/S
    SpectralField dyu1 = s.u1, dyu2 = s.u2;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            cplx f = I * (g.xi(j) - k * s.t);
            dyu1.at(k, j) = f * s.u1.at(k, j);
            dyu2.at(k, j) = f * s.u2.at(k, j);
        }
    SpectralField c1 = convolve_direct(s.u2, dyu1);
    SpectralField c2 = convolve_direct(s.u2, dyu2);
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            if (k == 0 && j == 0) {
                CHECK(std::abs(pr.at(0, 0)) == 0.0);
                continue;
            }
            double sh = g.xi(j) - k * s.t;
            double S = k * k + sh * sh;
            cplx expect =
                2.0 * (I * double(k) * c1.at(k, j) + I * sh * c2.at(k, j)) / S;
            CHECK(std::abs(pr.at(k, j) - expect) < 1e-12);
        }
}

// ---- linear_rhs ----

TEST_CASE("linear_rhs of the zero state is zero") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    Tendency t = linear_rhs(zero_state(g), inviscid());
    CHECK(max_abs(t.linear_stiff.du1 + t.linear_soft.du1) == 0.0);
    CHECK(max_abs(t.linear_stiff.du2 + t.linear_soft.du2) == 0.0);
    CHECK(max_abs(t.linear_stiff.dtheta + t.linear_soft.dtheta) == 0.0);
}

TEST_CASE("linear_rhs k=0 reduction is heat decay plus the u2 source") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    PhysicalParams p = inviscid();
    p.nu = 0.3;
    p.mu = 0.7;
    FlowState s = zero_state(g);
    s.u1.at(0, 1) = cplx(2.0, 0.0);
    s.u1.at(0, -1) = cplx(2.0, 0.0);
    s.theta.at(0, 1) = cplx(0.0, 1.0);
    s.theta.at(0, -1) = cplx(0.0, -1.0);
    Tendency t = linear_rhs(s, p);
    // S = xi^2 = 1 at (0, +-1); u2(0,xi) constrained to zero so no coupling
    CHECK(std::abs(t.linear_stiff.du1.at(0, 1) + 0.3 * s.u1.at(0, 1)) < 1e-15);
    CHECK(std::abs(t.linear_stiff.dtheta.at(0, 1) + 0.7 * s.theta.at(0, 1)) < 1e-15);
    CHECK(std::abs(t.linear_soft.du1.at(0, 1)) == 0.0);
    CHECK(std::abs(t.linear_soft.dtheta.at(0, 1)) == 0.0);
}

TEST_CASE("linear_rhs single-mode hand computation at t=0") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    PhysicalParams p = inviscid();  // nu = mu = 0, gamma = 1
    FlowState s = zero_state(g);
    s.u2.at(1, 0) = cplx(1.0, 0.0);
    s.u2.at(-1, 0) = cplx(1.0, 0.0);
    Tendency t = linear_rhs(s, p);
    // k=1, xi=0, t=0: sh=0, S=1: du1 = u2*(k^2-sh^2)/S = 1, du2 = 2k*sh/S = 0,
    // dtheta = u2 = 1
    CHECK(std::abs(t.linear_soft.du1.at(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(t.linear_soft.du2.at(1, 0)) == 0.0);
    CHECK(std::abs(t.linear_soft.dtheta.at(1, 0) - 1.0) < 1e-15);

    // theta coupling: with theta=1 at the same mode, du1 += -g^2*(-k sh/S)=0,
    // du2 += -g^2*k^2/S = -1
    FlowState s2 = zero_state(g);
    s2.theta.at(1, 0) = cplx(1.0, 0.0);
    s2.theta.at(-1, 0) = cplx(1.0, 0.0);
    Tendency t2 = linear_rhs(s2, p);
    CHECK(std::abs(t2.linear_soft.du1.at(1, 0)) == 0.0);
    CHECK(std::abs(t2.linear_soft.du2.at(1, 0) + 1.0) < 1e-15);
}

// ---- nonlinear_rhs ----

TEST_CASE("nonlinear_rhs zero velocity gives F = G = 0") {
    SpectralGrid g = make_grid(3, 3, 2.0 * M_PI);
    FlowState s = zero_state(g);
    s.theta.at(1, 1) = cplx(0.4, 0.2);
    s.theta.at(-1, -1) = std::conj(s.theta.at(1, 1));
    Tendency t = nonlinear_rhs(s, inviscid());
    CHECK(max_abs(t.nonlinear.du1) == 0.0);
    CHECK(max_abs(t.nonlinear.du2) == 0.0);
    CHECK(max_abs(t.nonlinear.dtheta) == 0.0);
}

TEST_CASE("nonlinear_rhs matches a convolve_direct assembly on K=J=3") {
    SpectralGrid g = make_grid(3, 3, 2.0 * M_PI);
    FlowState s = random_state(g, 33, 0.1, 0.4);
    Tendency t = nonlinear_rhs(s, inviscid());

    auto mul_symbol = [&](const SpectralField& f, bool x_dir) {
        SpectralField out = f;
        for (int k = -g.K; k <= g.K; ++k)
            for (int j = -g.J; j <= g.J; ++j)
                out.at(k, j) = (x_dir ? I * double(k) : I * (g.xi(j) - k * s.t)) *
                               f.at(k, j);
        return out;
    };
    SpectralField a1 = convolve_direct(s.u1, mul_symbol(s.u1, true)) +
                       convolve_direct(s.u2, mul_symbol(s.u1, false));
    SpectralField a2 = convolve_direct(s.u1, mul_symbol(s.u2, true)) +
                       convolve_direct(s.u2, mul_symbol(s.u2, false));
    SpectralField at = convolve_direct(s.u1, mul_symbol(s.theta, true)) +
                       convolve_direct(s.u2, mul_symbol(s.theta, false));
    SpectralField c1 = convolve_direct(s.u2, mul_symbol(s.u1, false));
    SpectralField c2 = convolve_direct(s.u2, mul_symbol(s.u2, false));

    double scale = std::max({max_abs(a1), max_abs(a2), max_abs(at), 1e-30});
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            double sh = g.xi(j) - k * s.t;
            cplx p(0.0, 0.0);
            if (!(k == 0 && j == 0)) {
                double S = k * k + sh * sh;
                p = 2.0 * (I * double(k) * c1.at(k, j) + I * sh * c2.at(k, j)) / S;
            }
            cplx f1 = -a1.at(k, j) - I * double(k) * p;
            cplx f2 = -a2.at(k, j) - I * sh * p;
            cplx gt = -at.at(k, j);
            CHECK(std::abs(t.nonlinear.du1.at(k, j) - f1) / scale < 1e-10);
            CHECK(std::abs(t.nonlinear.du2.at(k, j) - f2) / scale < 1e-10);
            CHECK(std::abs(t.nonlinear.dtheta.at(k, j) - gt) / scale < 1e-10);
        }
}

TEST_CASE("nonlinear tendency respects the moving-frame constraint") {
    SpectralGrid g = make_grid(4, 4, 2.0 * M_PI);
    FlowState s = random_state(g, 35, 0.1, 1.3);
    Tendency t = nonlinear_rhs(s, inviscid());
    double scale = std::max(max_abs(t.nonlinear.du1), max_abs(t.nonlinear.du2));
    REQUIRE(scale > 0.0);
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            double sh = g.xi(j) - k * s.t;
            cplx div = double(k) * t.nonlinear.du1.at(k, j) +
                       sh * t.nonlinear.du2.at(k, j);
            CHECK(std::abs(div) / (scale * (std::hypot(double(k), sh) + 1.0)) < 1e-8);
        }
}

// ---- dissipation_integral ----

TEST_CASE("dissipation_integral closed-form points") {
    CHECK(dissipation_integral(0, 2.0, 0.0, 3.0) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(dissipation_integral(1, 0.0, 0.0, 1.0) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(dissipation_integral(1, 1.0, 0.0, 1.0) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS(dissipation_integral(1, 0.0, 1.0, 0.0));
}

TEST_CASE("dissipation_integral against midpoint quadrature") {
    CounterRng rng{51, 0};
    for (int i = 0; i < 100; ++i) {
        int k = int(rng.uniform_int(i, -5, 5, 0));
        double xi = rng.uniform(i, -10.0, 10.0, 1);
        double t0 = rng.uniform(i, 0.0, 5.0, 2);
        double t1 = t0 + rng.uniform(i, 0.0, 5.0, 3);
        const int n = 20000;
        double h = (t1 - t0) / n, acc = 0.0;
        for (int m = 0; m < n; ++m) {
            double tau = t0 + (m + 0.5) * h;
            double sh = xi - k * tau;
            acc += (k * k + sh * sh) * h;
        }
        CHECK(dissipation_integral(k, xi, t0, t1) ==
              doctest::Approx(acc).epsilon(1e-7));
    }
}

// ---- leray_project_moving ----

TEST_CASE("leray projection: closed form, idempotence, k=0 rules") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    FlowState s = zero_state(g);
    s.u1.at(1, 1) = cplx(1.0, 0.0);
    s.u1.at(-1, -1) = cplx(1.0, 0.0);
    FlowState pr = leray_project_moving(s);
    CHECK(std::abs(pr.u1.at(1, 1) - cplx(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(pr.u2.at(1, 1) - cplx(-0.5, 0.0)) < 1e-15);

    FlowState twice = leray_project_moving(pr);
    CHECK(state_distance(twice, pr) < 1e-15);
    CHECK(divergence_defect(pr) < 1e-14);

    FlowState z = zero_state(g);
    z.u1.at(0, 1) = cplx(0.2, 0.1);
    z.u1.at(0, -1) = std::conj(z.u1.at(0, 1));
    z.u2.at(0, 2) = cplx(1.0, 0.0);
    z.u2.at(0, -2) = cplx(1.0, 0.0);
    z.u2.at(0, 0) = cplx(0.5, 0.0);
    FlowState zp = leray_project_moving(z);
    CHECK(std::abs(zp.u1.at(0, 1) - z.u1.at(0, 1)) < 1e-15);  // u1(0,.) free
    CHECK(std::abs(zp.u2.at(0, 2)) == 0.0);                   // constraint kills it
    CHECK(std::abs(zp.u2.at(0, 0)) == 0.0);                   // zero-mean u2
}

// ---- step ----

TEST_CASE("step preserves the zero state and validates dt") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    FlowState z = zero_state(g);
    FlowState out = step(z, inviscid(), 0.1);
    CHECK(out.t == doctest::Approx(0.1));
    CHECK(max_abs(out.u1) == 0.0);
    CHECK(max_abs(out.u2) == 0.0);
    CHECK(max_abs(out.theta) == 0.0);
    CHECK_THROWS(step(z, inviscid(), 0.0));
    CHECK_THROWS(step(z, inviscid(), -0.1));
}

TEST_CASE("pure k=0 heat mode decays by the exact integrating factor") {
    SpectralGrid g = make_grid(2, 2, 2.0 * M_PI);
    PhysicalParams p = inviscid();
    p.nu = 0.2;
    p.mu = 0.05;
    FlowState s = zero_state(g);
    s.u1.at(0, 1) = cplx(1.0, 0.5);
    s.u1.at(0, -1) = std::conj(s.u1.at(0, 1));
    s.theta.at(0, 1) = cplx(0.3, -0.2);
    s.theta.at(0, -1) = std::conj(s.theta.at(0, 1));
    double dt = 0.37;
    FlowState out = step(s, p, dt);
    // S = 1 at (0, +-1); the k=0 u2 is zero so no coupling feeds back into u1,
    // and dtheta picks up only u2 = 0 beyond its own decay
    CHECK(std::abs(out.u1.at(0, 1) - std::exp(-0.2 * dt) * s.u1.at(0, 1)) < 1e-15);
    CHECK(std::abs(out.theta.at(0, 1) - std::exp(-0.05 * dt) * s.theta.at(0, 1)) <
          1e-15);
}

TEST_CASE("single mode linear evolution matches a fine-step ODE oracle") {
    // mode (k, xi) = (1, 0), inviscid, gamma = 1, over t in [0, 10]
    PhysicalParams p = inviscid();
    SpectralGrid g = make_grid(1, 1, 2.0 * M_PI);
    FlowState s = zero_state(g);
    s.u2.at(1, 0) = cplx(1.0, 0.0);
    s.u2.at(-1, 0) = cplx(1.0, 0.0);
    s.theta.at(1, 0) = cplx(0.0, 0.5);
    s.theta.at(-1, 0) = std::conj(s.theta.at(1, 0));
    s = leray_project_moving(s);

    // oracle: RK4 at dt = 2e-5 on the 2-variable reduced system
    cplx u2 = s.u2.at(1, 0), th = s.theta.at(1, 0);
    auto rhs = [](double t, cplx u2v, cplx thv, cplx& du, cplx& dth) {
        double sh = -t;  // xi - k t with xi = 0, k = 1
        double S = 1.0 + sh * sh;
        du = u2v * (2.0 * sh / S) - thv * (1.0 / S);
        dth = u2v;
    };
    const double ho = 2e-5;
    const int n = int(10.0 / ho + 0.5);
    for (int i = 0; i < n; ++i) {
        double t = i * ho;
        cplx k1u, k1t, k2u, k2t, k3u, k3t, k4u, k4t;
        rhs(t, u2, th, k1u, k1t);
        rhs(t + ho / 2, u2 + ho / 2 * k1u, th + ho / 2 * k1t, k2u, k2t);
        rhs(t + ho / 2, u2 + ho / 2 * k2u, th + ho / 2 * k2t, k3u, k3t);
        rhs(t + ho, u2 + ho * k3u, th + ho * k3t, k4u, k4t);
        u2 += ho / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        th += ho / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    }

    FlowState cur = s;
    const double dt = 1e-3;
    for (int i = 0; i < 10000; ++i) cur = step(cur, p, dt, true);
    double scale = std::max(std::abs(u2), std::abs(th));
    CHECK(std::abs(cur.u2.at(1, 0) - u2) / scale < 1e-6);
    CHECK(std::abs(cur.theta.at(1, 0) - th) / scale < 1e-6);
    // u1 follows from the constraint u1 = -sh/k u2
    CHECK(std::abs(cur.u1.at(1, 0) - (10.0 * cur.u2.at(1, 0))) / scale < 1e-6);
}

TEST_CASE("integrator is fourth order on the nonlinear system") {
    SpectralGrid g = make_grid(3, 3, 2.0 * M_PI);
    PhysicalParams p = inviscid();
    p.nu = p.mu = 0.01;
    FlowState s = random_state(g, 61, 0.05, 0.0);
    auto advance = [&](double dt, int nsteps) {
        FlowState c = s;
        for (int i = 0; i < nsteps; ++i) c = step(c, p, dt);
        return c;
    };
    FlowState ref = advance(1.0 / 512.0, 512);
    double e1 = state_distance(advance(1.0 / 16.0, 16), ref);
    double e2 = state_distance(advance(1.0 / 32.0, 32), ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 22.0);
}

TEST_CASE("reality symmetry and the constraint survive many steps") {
    SpectralGrid g = make_grid(4, 4, 2.0 * M_PI);
    PhysicalParams p = inviscid();
    FlowState c = random_state(g, 62, 0.05, 0.0);
    for (int i = 0; i < 50; ++i) c = step(c, p, 0.02);
    CHECK(reality_defect(c.u1) < 1e-12);
    CHECK(reality_defect(c.u2) < 1e-12);
    CHECK(reality_defect(c.theta) < 1e-12);
    CHECK(divergence_defect(c) < 1e-12);
}

TEST_CASE("step_raw reverses an inviscid linear step") {
    SpectralGrid g = make_grid(3, 3, 2.0 * M_PI);
    PhysicalParams p = inviscid();
    FlowState s = random_state(g, 63, 0.3, 0.0);
    FlowState fwd = detail::step_raw(s, p, 0.05, true);
    FlowState back = detail::step_raw(fwd, p, -0.05, true);
    CHECK(back.t == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(state_distance(back, s) < 1e-9 * (1.0 + max_abs(s.u2)));
}
