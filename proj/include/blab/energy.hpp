/// @file energy.hpp
/// Energy functionals, tracked norms, diagnostics rows, and the trajectory
/// checks for the small-time and long-time differential inequalities.

#pragma once

#include "blab/dynamics.hpp"
#include "blab/multipliers.hpp"

#include <string>
#include <vector>

namespace blab {

struct DiagnosticsRow {
    double t = 0.0;
    double E = 0.0;          // A_k energy
    double D = 0.0;          // m (unified weight) energy
    double Estar = 0.0;      // M energy (0 when heavy diagnostics are off)
    double u1neq_L2 = 0.0;
    double u2_L2 = 0.0;
    double u2hat_L1 = 0.0;
    double thetaneq_L2 = 0.0;
    double hs_half_norm = 0.0;
    // Dissipation functionals of the long-time display, evaluated with M
    // weights (full term values, no eps/4 prefactor; 0 when diagnostics off):
    double diss_visc = 0.0;         // sum S*(nu|Mu|^2 + mu g^2|Mth|^2)
    double diss_u2_weighted = 0.0;  // sum <xi/k-t>^delta |Mu2|^2
    double diss_k13 = 0.0;          // kappa^{1/3} sum |k|^{2/3}(|Mu|^2+g^2|Mth|^2)
    double diss_upsilon = 0.0;      // sum Upsilon (|Mu|^2+g^2|Mth|^2)
    double diss_t3 = 0.0;           // kappa^{-1/3} t^{-3} sum (|Mu|^2+g^2|Mth|^2)
    double dEstar_dt_fd = 0.0;      // centered finite difference, filled post-run
    std::string flag = "stable";
};

/// Minimum eigenvalue of [[1, 1/2],[1/2, gamma^2]]; positive iff gamma > 1/2.
double coercivity_margin(double gamma);

/// E(t) = sum dxi ( |A u^|^2 + g^2 |A th^|^2 + Re(A th^ A conj(u1^)) ).
double energy_E(const FlowState& state, const PhysicalParams& params,
                const MultiplierParams& mp);

/// Same with the long-time weight M; requires t >= kappa^{-1/6}/2.
double energy_Estar(const FlowState& state, const PhysicalParams& params,
                    const MultiplierParams& mp);

struct DampingNorms {
    double u1neq_L2 = 0.0;
    double u2_L2 = 0.0;
    double u2hat_L1 = 0.0;
    double thetaneq_L2 = 0.0;
};
DampingNorms damping_norms(const FlowState& state);

/// || <grad_L>^{1/2} (u, theta) ||_{H^s}.
double hs_half_norm(const FlowState& state, const PhysicalParams& params);

/// Precomputed per-mode M and Upsilon arrays at one time (shared between the
/// energy, the dissipation functionals, and the long-time check).
struct MWeightTable {
    double t = 0.0;
    std::vector<double> M;        // grid-indexed
    std::vector<double> Upsilon;  // grid-indexed
};
MWeightTable build_m_weights(const SpectralGrid& grid, double t,
                             const MultiplierParams& mp);

DiagnosticsRow make_row(const FlowState& state, const PhysicalParams& params,
                        const MultiplierParams& mp, bool m_diagnostics);

/// Fill dEstar_dt_fd by centered differences over the sampled rows.
void fill_estar_rate(std::vector<DiagnosticsRow>& rows);

std::string diagnostics_csv_header();
std::string diagnostics_csv_line(const DiagnosticsRow& row);
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows);

struct Trajectory {
    std::vector<DiagnosticsRow> rows;
    std::vector<FlowState> states;  // kept only when the schedule asks for it
    bool diverged = false;
    double diverged_at = 0.0;
    double initial_hs = 0.0;
    double max_hs = 0.0;
    std::vector<std::string> warnings;
};

struct PropReport {
    std::string name;
    int n_samples = 0;
    double max_lhs = 0.0;        // most positive LHS seen
    double max_ratio = 0.0;      // max LHS/RHS over samples with RHS > 0
    double max_rate = 0.0;       // long-time: most positive dE*/dt - slack
    bool pass = true;
    bool hypothesis_met = true;  // long-time smallness monitor
    std::vector<double> t, lhs, rhs;
};

/// Proposition 4.1: centered dE/dt plus the gamma-, 2/gamma- and eps-weighted
/// dissipation sums against C <t> ||A(u^,th^)||^3. For linear trajectories a
/// positive LHS beyond 1e-8*(1+E) fails; otherwise ratios are reported and
/// compared against C_fit when one is supplied (inf disables the comparison).
PropReport check_prop_smalltime(const Trajectory& traj, const PhysicalParams& params,
                                const MultiplierParams& mp,
                                double C_fit = std::numeric_limits<double>::infinity());

/// Proposition 2.2 / 6.1: the sign of dE*/dt (slack 1e-10*E* + 1e-14) and the
/// eps1 = eps/4 form of the Section 2 display, at samples with t >= T0.
PropReport check_prop_longtime(const Trajectory& traj, const PhysicalParams& params,
                               const MultiplierParams& mp, double c2 = 1.0);

} // namespace blab
