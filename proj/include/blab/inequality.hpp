/// @file inequality.hpp
/// Randomized numerical verification of the multiplier inequalities:
/// evaluate left/right-hand sides on deterministic sample batches, fit the
/// implied constant on a training half, validate on a held-out half.

#pragma once

#include "blab/multipliers.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blab {

struct SampleSpec {
    double t_min = 0.0;
    double t_max = 1000.0;
    int k_max = 64;           // k, l drawn from [-k_max, k_max]
    double xi_max = 1000.0;   // xi, eta drawn from [-xi_max, xi_max]
    double lambda = 1.0;      // Poisson-bound exponent (per-sample jitter around it)
    std::size_t n_train = 10000;
    std::size_t n_holdout = 10000;
    std::uint64_t seed = 2026;
    double widen = 1.0;       // multiplies t_max and xi_max for drift sweeps
    MultiplierParams mp;      // gamma, C_gamma, kappa, s, delta, J_sum

    void validate() const;
};

struct RatioReport {
    std::string lemma;
    std::size_t n_train = 0;
    std::size_t n_holdout = 0;
    double max_train_ratio = 0.0;
    double C_fit = 0.0;
    double max_holdout_ratio = 0.0;
    std::string worst_point;        // held-out worst case, human readable
    std::size_t n_case1 = 0;        // stratum tallies where the proof splits
    std::size_t n_case2 = 0;
    bool pass = false;              // max_holdout_ratio <= C_fit
};

/// C_fit = 1.05 * max(training ratios); throws on an empty sample.
double fit_constant(const std::vector<double>& ratios);

/// integral dEta / (|a,eta|^{1+lam} |b,z-eta|^{1+lam}) by adaptive Simpson on
/// the arctan-compactified line, absolute tolerance tol.
double poisson_integral(double a, double b, double z, double lam,
                        double tol = 1e-9);

// One report per lemma; multi-display lemmas return one report per display.
RatioReport check_poisson_bound(const SampleSpec& spec);
RatioReport check_damping_bound(const SampleSpec& spec);
RatioReport check_m0_gradient(const SampleSpec& spec);
RatioReport check_m0_difference(const SampleSpec& spec);
std::vector<RatioReport> check_ak_commutators(const SampleSpec& spec);
std::vector<RatioReport> check_m_lipschitz(const SampleSpec& spec);
std::vector<RatioReport> check_m_commutators(const SampleSpec& spec);
std::vector<RatioReport> check_trilinear_bounds(const SampleSpec& spec);

/// Every check above, in a fixed order, with per-check default specs derived
/// from `spec`. Unknown ids throw; id "all" selects everything.
std::vector<RatioReport> run_lemma_suite(const SampleSpec& spec,
                                         const std::string& lemma_id = "all");
std::vector<std::string> known_lemma_ids();

std::string ratio_report_csv_header();
std::string ratio_report_csv_line(const RatioReport& r);
std::string ratio_report_summary(const RatioReport& r);

} // namespace blab
