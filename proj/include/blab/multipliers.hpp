/// @file multipliers.hpp
/// The time-dependent Fourier weights: psi_lambda, M0, A_k, q, the long-time
/// components M1, M2, M3, Upsilon, script-A, the full weight M, its rate q*,
/// and the unified piecewise multiplier m.
///
/// Conventions (k=0 and the (0,0) mode):
///   - M0, M1, M2 vanish at k=0; the q*/q terms carrying k in the numerator
///     vanish at k=0; k_+ = max(|k|,1) inside |k_+, xi-kt|^{1/2}.
///   - M3 and Upsilon are lattice sums truncated at |j| <= J_sum; every
///     identity involving them is checked under the same truncation.
///   - The M-branch weights are only defined for t >= T0/2 with
///     T0 = kappa^{-1/6} (the t^{-2} exponent of script-A blows up at t=0).

#pragma once

#include "blab/params.hpp"

#include <vector>

namespace blab {

struct MultiplierParams {
    double gamma = 1.0;
    double C_gamma = 2.0;
    double kappa = 1e-3;
    double eps_small = 0.5 / 16.0;  // epsilon = eps/16
    double s = 2.0;
    double delta = 0.25;
    int J_sum = 2000;
    double psi_tol = 1e-10;

    static MultiplierParams from_physical(const PhysicalParams& p,
                                          int J_sum = 2000,
                                          double psi_tol = 1e-10);
    double T0() const {
        return kappa > 0.0 ? std::pow(kappa, -1.0 / 6.0)
                           : std::numeric_limits<double>::infinity();
    }
    void validate() const;
};

/// psi_lambda(infinity) = integral_0^inf <y>^{-1-lambda} dy (closed form).
double psi_inf(double lambda);

/// psi_lambda(x) = integral_0^x <y>^{-1-lambda} dy; arctan for lambda = 1,
/// otherwise a cached Simpson table on [0,50] plus an asymptotic tail.
double psi(double lambda, double x);

/// Interpolation table for one lambda, exposed so hot loops can fetch it once.
struct PsiTable;
const PsiTable* psi_table(double lambda);
double psi_eval(const PsiTable& tab, double x);

double m0(double t, int k, double xi, const MultiplierParams& p);
double a_k(double t, int k, double xi, const MultiplierParams& p);
/// q = d/dt log A_k (closed form).
double q_small(double t, int k, double xi, const MultiplierParams& p);

double m1(double t, int k, double xi, const MultiplierParams& p);
double m2(double t, int k, double xi, const MultiplierParams& p);
double m3(double t, int k, double xi, const MultiplierParams& p);

/// Upsilon = -d/dt M3, as the sum over l != k with |k-l| <= J_sum.
double upsilon(double t, int k, double xi, const MultiplierParams& p);
/// Same quantity summed over j = k-l; equals upsilon under matched windows.
double upsilon_jform(double t, int k, double xi, const MultiplierParams& p);

/// script-A = exp(eps_small*kappa^{1/3}*t*1_{k!=0} + kappa^{-1/3}*t^{-2}).
double script_a(double t, int k, const MultiplierParams& p);

/// M = |k_+, xi-kt|^{1/2} <k,xi>^s script-A exp(M1+M2+M3); t >= T0/2 only.
double big_m(double t, int k, double xi, const MultiplierParams& p);
/// q* = d/dt log M (closed form, same J_sum truncation inside Upsilon).
double q_star(double t, int k, double xi, const MultiplierParams& p);

/// Piecewise m: A_k-branch for t <= T0, M-branch for t > T0.
double m_unified(double t, int k, double xi, const MultiplierParams& p);

/// Batched rows at fixed (t, k) over many xi values; shares the per-j
/// prefactor arrays so weight-array builds stay cheap.
void m3_row(double t, int k, const std::vector<double>& xis,
            const MultiplierParams& p, std::vector<double>& out);
void upsilon_row(double t, int k, const std::vector<double>& xis,
                 const MultiplierParams& p, std::vector<double>& out);

} // namespace blab
