/// @file params.hpp
/// Physical parameters and the derived regime constants.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace blab {

/// nu, mu are the viscosity / thermal diffusivity; gamma^2 is the Richardson
/// number (gamma > 1/2 is the stability regime); eps is the Theorem 1.1
/// margin in the spectral-gap condition (nu+mu)/(2*gamma*sqrt(nu*mu)) < 2-eps.
struct PhysicalParams {
    double nu = 0.0;
    double mu = 0.0;
    double gamma = 1.0;
    double eps = 0.5;
    double s = 2.0;       // Sobolev index, > 3/2
    double delta = 0.25;  // auxiliary exponent, 0 < delta < min(s-3/2, 1/2)

    double kappa() const { return std::min(nu, mu); }
    double C_gamma() const { return std::max(1.0, 2.0 / (2.0 * gamma - 1.0)); }
    double eps_small() const { return eps / 16.0; }
    /// Regime switch time T0 = kappa^{-1/6} (infinite for inviscid runs).
    double T0() const {
        const double k = kappa();
        return k > 0.0 ? std::pow(k, -1.0 / 6.0) : std::numeric_limits<double>::infinity();
    }

    void validate() const {
        if (nu < 0.0 || mu < 0.0)
            throw std::invalid_argument("params: nu and mu must be >= 0");
        if (!(gamma > 0.5))
            throw std::invalid_argument("params: gamma must exceed 1/2 (coercivity)");
        if (!(eps > 0.0) || !(eps < 1.0 / gamma))
            throw std::invalid_argument("params: eps must lie in (0, 1/gamma)");
        if (!(s > 1.5))
            throw std::invalid_argument("params: s must exceed 3/2");
        if (!(delta > 0.0) || !(delta < std::min(s - 1.5, 0.5)))
            throw std::invalid_argument("params: delta must lie in (0, min(s-3/2, 1/2))");
    }

    /// The spectral-gap condition is only meaningful for nu, mu > 0; report it
    /// as a warning rather than an error so inviscid runs stay legal.
    std::optional<std::string> regime_warning() const {
        if (nu > 0.0 && mu > 0.0) {
            const double lhs = (nu + mu) / (2.0 * gamma * std::sqrt(nu * mu));
            if (!(lhs < 2.0 - eps))
                return "condition (nu+mu)/(2*gamma*sqrt(nu*mu)) < 2-eps not met: lhs=" +
                       std::to_string(lhs);
            if (!(kappa() < 1.0))
                return "kappa = min(nu,mu) is not < 1; Theorem 1.1 regime not met";
        }
        return std::nullopt;
    }
};

} // namespace blab
