#include "blab/energy.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace blab {

namespace {

inline double abracket2(double a, double b) { return std::sqrt(1.0 + a * a + b * b); }

/// Quadratic-form energy sum with an arbitrary per-mode weight array.
double weighted_energy(const FlowState& st, const PhysicalParams& p,
                       const std::vector<double>& w) {
    const SpectralGrid& g = st.u1.grid;
    const double g2 = p.gamma * p.gamma;
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w2 = w[i] * w[i];
        const cplx u1 = st.u1.coeffs[i];
        acc += w2 * (std::norm(u1) + std::norm(st.u2.coeffs[i]) +
                     g2 * std::norm(st.theta.coeffs[i]) +
                     (st.theta.coeffs[i] * std::conj(u1)).real());
    }
    return acc * g.dxi;
}

std::vector<double> ak_weights(const SpectralGrid& g, double t,
                               const MultiplierParams& mp) {
    std::vector<double> w(g.size());
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j)
            w[g.idx(k, j)] = a_k(t, k, g.xi(j), mp);
    return w;
}

} // namespace

double coercivity_margin(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("coercivity_margin: gamma must be > 0");
    const double g2 = gamma * gamma;
    const double tr = 1.0 + g2;
    const double disc = std::sqrt((1.0 - g2) * (1.0 - g2) + 1.0);
    return 0.5 * (tr - disc);
}

double energy_E(const FlowState& state, const PhysicalParams& params,
                const MultiplierParams& mp) {
    if (!(params.gamma > 0.5))
        throw std::invalid_argument("energy_E: gamma must exceed 1/2");
    return weighted_energy(state, params, ak_weights(state.u1.grid, state.t, mp));
}

MWeightTable build_m_weights(const SpectralGrid& g, double t,
                             const MultiplierParams& mp) {
    MWeightTable tab;
    tab.t = t;
    tab.M.resize(g.size());
    tab.Upsilon.resize(g.size());
    std::vector<double> xis(g.nj());
    for (int j = -g.J; j <= g.J; ++j) xis[j + g.J] = g.xi(j);
    std::vector<double> m3row, upsrow;
    for (int k = -g.K; k <= g.K; ++k) {
        m3_row(t, k, xis, mp, m3row);
        upsilon_row(t, k, xis, mp, upsrow);
        const double sa = script_a(t, k, mp);
        for (int j = -g.J; j <= g.J; ++j) {
            const double xi = g.xi(j);
            const double kp = std::max(std::abs(static_cast<double>(k)), 1.0);
            const double sh = xi - k * t;
            const double half = std::pow(kp * kp + sh * sh, 0.25);
            const double sob = std::pow(abracket2(static_cast<double>(k), xi), mp.s);
            const double m0sum = m1(t, k, xi, mp) + m2(t, k, xi, mp) + m3row[j + g.J];
            tab.M[g.idx(k, j)] = half * sob * sa * std::exp(m0sum);
            tab.Upsilon[g.idx(k, j)] = upsrow[j + g.J];
        }
    }
    return tab;
}

double energy_Estar(const FlowState& state, const PhysicalParams& params,
                    const MultiplierParams& mp) {
    if (!(params.gamma > 0.5))
        throw std::invalid_argument("energy_Estar: gamma must exceed 1/2");
    if (!(state.t >= 0.5 * mp.T0()))
        throw std::domain_error("energy_Estar: t below the kappa^{-1/6}/2 regime");
    const MWeightTable tab = build_m_weights(state.u1.grid, state.t, mp);
    return weighted_energy(state, params, tab.M);
}

DampingNorms damping_norms(const FlowState& state) {
    const SpectralGrid& g = state.u1.grid;
    DampingNorms out;
    double u1neq = 0.0, u2 = 0.0, thneq = 0.0;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            u2 += std::norm(state.u2.at(k, j));
            if (k != 0) {
                u1neq += std::norm(state.u1.at(k, j));
                thneq += std::norm(state.theta.at(k, j));
            }
        }
    out.u1neq_L2 = std::sqrt(u1neq * g.dxi);
    out.u2_L2 = std::sqrt(u2 * g.dxi);
    out.thetaneq_L2 = std::sqrt(thneq * g.dxi);
    out.u2hat_L1 = l1_norm_nonzero_modes(state.u2);
    return out;
}

double hs_half_norm(const FlowState& state, const PhysicalParams& params) {
    const SpectralGrid& g = state.u1.grid;
    double acc = 0.0;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            const double xi = g.xi(j);
            const double sh = xi - k * state.t;
            const double w = abracket2(static_cast<double>(k), sh) *
                             std::pow(abracket2(static_cast<double>(k), xi), 2.0 * params.s);
            acc += w * (std::norm(state.u1.at(k, j)) + std::norm(state.u2.at(k, j)) +
                        std::norm(state.theta.at(k, j)));
        }
    return std::sqrt(acc * g.dxi);
}

DiagnosticsRow make_row(const FlowState& state, const PhysicalParams& params,
                        const MultiplierParams& mp, bool m_diagnostics) {
    const SpectralGrid& g = state.u1.grid;
    DiagnosticsRow row;
    row.t = state.t;
    row.E = energy_E(state, params, mp);
    const DampingNorms dn = damping_norms(state);
    row.u1neq_L2 = dn.u1neq_L2;
    row.u2_L2 = dn.u2_L2;
    row.u2hat_L1 = dn.u2hat_L1;
    row.thetaneq_L2 = dn.thetaneq_L2;
    row.hs_half_norm = hs_half_norm(state, params);

    const double T0 = mp.T0();
    const bool m_regime = m_diagnostics && state.t >= 0.5 * T0 && state.t > 0.0 &&
                          std::isfinite(T0);
    if (state.t <= T0 || !std::isfinite(T0)) {
        // Unified weight takes the A_k branch here.
        row.D = row.E;
    }
    if (m_regime) {
        const MWeightTable tab = build_m_weights(g, state.t, mp);
        row.Estar = weighted_energy(state, params, tab.M);
        if (state.t > T0) row.D = row.Estar;
        const double g2 = params.gamma * params.gamma;
        const double k13 = std::pow(mp.kappa, 1.0 / 3.0);
        double visc = 0.0, u2w = 0.0, dk = 0.0, ups = 0.0, plain = 0.0;
        for (int k = -g.K; k <= g.K; ++k)
            for (int j = -g.J; j <= g.J; ++j) {
                const std::size_t i = g.idx(k, j);
                const double xi = g.xi(j);
                const double sh = xi - k * state.t;
                const double S = k * k + sh * sh;
                const double M2 = tab.M[i] * tab.M[i];
                const double nu2 = std::norm(state.u1.at(k, j)) + std::norm(state.u2.at(k, j));
                const double nth = std::norm(state.theta.at(k, j));
                const double both = nu2 + g2 * nth;
                visc += S * M2 * (params.nu * nu2 + params.mu * g2 * nth);
                if (k != 0) {
                    const double w = std::pow(1.0 + (xi / k - state.t) * (xi / k - state.t),
                                              0.5 * mp.delta);
                    u2w += w * w * M2 * std::norm(state.u2.at(k, j));
                }
                dk += std::pow(std::abs(static_cast<double>(k)), 2.0 / 3.0) * M2 * both;
                ups += tab.Upsilon[i] * M2 * both;
                plain += M2 * both;
            }
        row.diss_visc = visc * g.dxi;
        row.diss_u2_weighted = u2w * g.dxi;
        row.diss_k13 = k13 * dk * g.dxi;
        row.diss_upsilon = ups * g.dxi;
        row.diss_t3 = std::pow(mp.kappa, -1.0 / 3.0) * std::pow(state.t, -3.0) *
                      plain * g.dxi;
    }
    return row;
}

void fill_estar_rate(std::vector<DiagnosticsRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double rate = 0.0;
        if (i > 0 && i + 1 < rows.size() && rows[i - 1].Estar > 0.0 &&
            rows[i + 1].Estar > 0.0) {
            rate = (rows[i + 1].Estar - rows[i - 1].Estar) /
                   (rows[i + 1].t - rows[i - 1].t);
        }
        rows[i].dEstar_dt_fd = rate;
    }
}

std::string diagnostics_csv_header() {
    return "t,E,D,Estar,u1neq_L2,u2_L2,u2hat_L1,thetaneq_L2,hs_half_norm,"
           "diss_visc,diss_u2_weighted,diss_k13,diss_upsilon,diss_t3,"
           "dEstar_dt_fd,flag";
}

std::string diagnostics_csv_line(const DiagnosticsRow& r) {
    char buf[640];
    std::snprintf(buf, sizeof(buf),
                  "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,"
                  "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%s",
                  r.t, r.E, r.D, r.Estar, r.u1neq_L2, r.u2_L2, r.u2hat_L1,
                  r.thetaneq_L2, r.hs_half_norm, r.diss_visc, r.diss_u2_weighted,
                  r.diss_k13, r.diss_upsilon, r.diss_t3, r.dEstar_dt_fd,
                  r.flag.c_str());
    return buf;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << diagnostics_csv_header() << "\n";
    for (const DiagnosticsRow& r : rows) out << diagnostics_csv_line(r) << "\n";
}

PropReport check_prop_smalltime(const Trajectory& traj, const PhysicalParams& params,
                                const MultiplierParams& mp, double C_fit) {
    if (traj.states.size() != traj.rows.size() || traj.states.size() < 3)
        throw std::invalid_argument(
            "check_prop_smalltime: need kept states with >= 3 samples");
    for (std::size_t i = 1; i < traj.rows.size(); ++i)
        if (traj.rows[i].t - traj.rows[i - 1].t > 0.1 + 1e-12)
            throw std::invalid_argument(
                "check_prop_smalltime: sampling too coarse for centered differences");

    PropReport rep;
    rep.name = "prop4.1";
    const double g2 = params.gamma * params.gamma;
    for (std::size_t i = 1; i + 1 < traj.states.size(); ++i) {
        const FlowState& st = traj.states[i];
        const SpectralGrid& g = st.u1.grid;
        const double dEdt = (traj.rows[i + 1].E - traj.rows[i - 1].E) /
                            (traj.rows[i + 1].t - traj.rows[i - 1].t);
        const std::vector<double> A = ak_weights(g, st.t, mp);
        double th_term = 0.0, u2_term = 0.0, visc = 0.0, l2 = 0.0;
        for (int k = -g.K; k <= g.K; ++k)
            for (int j = -g.J; j <= g.J; ++j) {
                const std::size_t idx = g.idx(k, j);
                const double sh = g.xi(j) - k * st.t;
                const double S = k * k + sh * sh;
                const double A2 = A[idx] * A[idx];
                const double nth = std::norm(st.theta.coeffs[idx]);
                const double nu2all = std::norm(st.u1.coeffs[idx]) +
                                      std::norm(st.u2.coeffs[idx]);
                if (S > 0.0) th_term += params.gamma * k * k / S * A2 * nth;
                u2_term += A2 * std::norm(st.u2.coeffs[idx]);
                visc += S * A2 * (params.nu * nu2all + params.mu * g2 * nth);
                l2 += A2 * (nu2all + nth);
            }
        const double dxi = g.dxi;
        const double lhs = dEdt + (th_term + (2.0 / params.gamma) * u2_term +
                                   params.eps * visc) * dxi;
        const double rhs = std::sqrt(1.0 + st.t * st.t) * std::pow(l2 * dxi, 1.5);
        rep.t.push_back(st.t);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        rep.max_lhs = std::max(rep.max_lhs, lhs);
        if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        ++rep.n_samples;
        const double lin_slack = 1e-8 * (1.0 + traj.rows[i].E);
        if (lhs > lin_slack && lhs > C_fit * rhs) rep.pass = false;
    }
    return rep;
}

PropReport check_prop_longtime(const Trajectory& traj, const PhysicalParams& params,
                               const MultiplierParams& mp, double c2) {
    if (traj.states.size() != traj.rows.size())
        throw std::invalid_argument("check_prop_longtime: states were not kept");
    PropReport rep;
    rep.name = "prop6.1";
    const double T0 = mp.T0();
    const double k13 = std::pow(mp.kappa, 1.0 / 3.0);
    const double eps1 = params.eps / 4.0;
    rep.max_rate = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < traj.rows.size(); ++i) {
        if (traj.rows[i - 1].t < T0) continue;  // both neighbors inside regime
        const FlowState& st = traj.states[i];
        const SpectralGrid& g = st.u1.grid;
        const double Estar = traj.rows[i].Estar;
        const double rate = (traj.rows[i + 1].Estar - traj.rows[i - 1].Estar) /
                            (traj.rows[i + 1].t - traj.rows[i - 1].t);
        // Smallness monitor ||M(u^, th^)|| <= c2 kappa^{1/3} (plain L2 norms).
        const MWeightTable tab = build_m_weights(g, st.t, mp);
        double l2 = 0.0, u2w = 0.0, dk = 0.0, ups = 0.0, visc = 0.0, l2u = 0.0;
        for (int k = -g.K; k <= g.K; ++k)
            for (int j = -g.J; j <= g.J; ++j) {
                const std::size_t idx = g.idx(k, j);
                const double xi = g.xi(j);
                const double sh = xi - k * st.t;
                const double M2 = tab.M[idx] * tab.M[idx];
                const double nu2all = std::norm(st.u1.coeffs[idx]) +
                                      std::norm(st.u2.coeffs[idx]);
                const double nth = std::norm(st.theta.coeffs[idx]);
                const double both = nu2all + nth;
                l2 += M2 * both;
                l2u += M2 * nu2all;
                if (k != 0)
                    u2w += std::pow(1.0 + (xi / k - st.t) * (xi / k - st.t), mp.delta) *
                           M2 * std::norm(st.u2.coeffs[idx]);
                dk += std::pow(std::abs(static_cast<double>(k)), 2.0 / 3.0) * M2 * both;
                ups += tab.Upsilon[idx] * M2 * both;
                visc += (k * k + sh * sh) * M2 * both;
            }
        const double dxi = g.dxi;
        l2 *= dxi; l2u *= dxi; u2w *= dxi; dk *= dxi; ups *= dxi; visc *= dxi;
        const double mnorm = std::sqrt(l2);
        if (mnorm > c2 * k13) rep.hypothesis_met = false;

        const double t3 = std::pow(mp.kappa, -1.0 / 3.0) * std::pow(st.t, -3.0);
        const double lhs = rate + eps1 * (u2w + k13 * dk + ups + t3 * l2 +
                                          params.nu * visc);
        const double rhs = mnorm * (std::pow(mp.kappa, 1.0 / 3.0) == 0.0
                                        ? 0.0
                                        : (dk + std::pow(mp.kappa, 2.0 / 3.0) * visc +
                                           std::pow(mp.kappa, -2.0 / 3.0) *
                                               std::pow(st.t, -3.0) * l2u +
                                           std::pow(mp.kappa, -1.0 / 3.0) * (u2w + ups)));
        rep.t.push_back(st.t);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        ++rep.n_samples;
        const double slack = 1e-10 * Estar + 1e-14;
        rep.max_rate = std::max(rep.max_rate, rate - slack);
        if (rep.hypothesis_met && rate > slack) rep.pass = false;
    }
    if (rep.n_samples == 0)
        throw std::invalid_argument("check_prop_longtime: no samples with t >= T0");
    return rep;
}

} // namespace blab
