/// @file experiment.hpp
/// Desk-scale reproduction of the theorem's quantitative behavior: power-law
/// and exponential-rate fits, rate-vs-kappa scaling, the Gronwall envelope,
/// and the amplitude-threshold bisection scan.

#pragma once

#include "blab/energy.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace blab {

using Series = std::vector<std::pair<double, double>>;

struct FitResult {
    double value = 0.0;       // fitted exponent or rate
    double window_lo = 0.0;
    double window_hi = 0.0;
    double residual = 0.0;    // rms residual of the fit in log space
    double half_width = 0.0;  // jackknife confidence half-width
    std::size_t n_points = 0;
};

/// Least-squares slope of log(value) against log(t) over the window.
/// Throws on nonpositive values or fewer than 3 points in the window.
FitResult fit_power_decay(const Series& series, double window_lo, double window_hi);

/// Least-squares fit of log(value) = c0 + p*log(t) + a*cos(omega*log(t)) +
/// b*sin(omega*log(t)) over the window, returning the exponent p.  At gamma=1
/// every mode of the linearized system oscillates coherently with log-time
/// frequency omega = sqrt(4*gamma^2 - 1), so absorbing that component removes
/// the finite-window bias of the plain power fit.
FitResult fit_power_decay_osc(const Series& series, double window_lo,
                              double window_hi, double omega);

/// Fits log(value) = c0 + p*log(t) - r*t over the window and returns the
/// decay rate r (positive r means exponential decay); the power-law prefactor
/// is divided out by the joint fit.
FitResult fit_exp_rate(const Series& series, double window_lo, double window_hi);

/// Least-squares slope of log(y) on log(x); used for rate-vs-kappa scaling.
FitResult regress_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct RateScanResult {
    std::vector<double> kappas;
    std::vector<double> rates;
    FitResult slope;
};

/// Requires >= 4 kappa values spanning >= 3 decades; rate_for_kappa throws on
/// a diverged member run, which propagates.
RateScanResult ed_rate_scaling(const std::vector<double>& kappas,
                               const std::function<double(double)>& rate_for_kappa);

struct GronwallReport {
    double C_fit = 0.0;       // smallest C making the envelope hold
    std::size_t n_samples = 0;
    double t_last = 0.0;      // last sample time inside the regime
    double worst_t = 0.0;     // sample that determines C_fit
};

/// Proposition 2.1 envelope E(t)^{1/2} <= E(0)^{1/2}/(1 - C(t+t^2)E(0)^{1/2})
/// over samples with t <= kappa^{-1/6}; fits the smallest such C >= 0.
GronwallReport gronwall_envelope(const Trajectory& traj, const PhysicalParams& params);

struct BisectionSpec {
    double a_lo = 1e-6;
    double a_hi = 1.0;
    int depth = 6;
};

struct ThresholdPoint {
    double kappa = 0.0;
    double a_star = 0.0;            // geometric midpoint of the final bracket
    double a_lo = 0.0, a_hi = 0.0;  // final bracket
    std::string verdict;            // resolved | censored_stable | censored_unstable
    bool monotone = true;           // no stable-above-unstable inversions seen
};

struct ThresholdReport {
    std::vector<ThresholdPoint> points;
    FitResult slope;                // log a* vs log kappa over resolved points
    bool all_resolved = false;
};

/// Bisects the largest stable amplitude per kappa using the supplied
/// classifier (true = stable run), then regresses log a* on log kappa.
ThresholdReport threshold_scan(const std::vector<double>& kappas,
                               const BisectionSpec& spec,
                               const std::function<bool(double kappa, double a)>& stable);

} // namespace blab
