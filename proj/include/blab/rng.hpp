/// @file rng.hpp
/// Counter-based deterministic random number generation.
///
/// Every random draw in the code base is a pure function of
/// (seed, stream, counter, lane), so results never depend on evaluation
/// order and parallel sweeps reproduce bit-for-bit.

#pragma once

#include <cstdint>
#include <cmath>

namespace blab {

namespace detail {

// SplitMix64 finalizer; good avalanche, cheap, stateless.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Stateless counter-based generator. `stream` separates independent
/// consumers (e.g. one per lemma check) drawing from the same seed.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::uint64_t word(std::uint64_t counter, std::uint64_t lane = 0) const {
        std::uint64_t h = detail::mix64(seed ^ 0x243f6a8885a308d3ULL);
        h = detail::mix64(h ^ (stream + 0x13198a2e03707344ULL));
        h = detail::mix64(h ^ (counter + 0xa4093822299f31d0ULL));
        return detail::mix64(h ^ (lane + 0x082efa98ec4e6c89ULL));
    }

    /// Uniform in [0,1), 53-bit resolution.
    double uniform(std::uint64_t counter, std::uint64_t lane = 0) const {
        return static_cast<double>(word(counter, lane) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t counter, double lo, double hi,
                   std::uint64_t lane = 0) const {
        return lo + (hi - lo) * uniform(counter, lane);
    }

    /// Integer uniform on [lo, hi] inclusive.
    long long uniform_int(std::uint64_t counter, long long lo, long long hi,
                          std::uint64_t lane = 0) const {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(word(counter, lane) % span);
    }

    /// Standard normal via Box-Muller on two dedicated lanes.
    double normal(std::uint64_t counter, std::uint64_t lane = 0) const {
        const double u1 = uniform(counter, 2 * lane + 101);
        const double u2 = uniform(counter, 2 * lane + 102);
        const double r = std::sqrt(-2.0 * std::log(u1 + 0x1.0p-60));
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Cauchy-like heavy-tailed draw, scale parameter `scale`.
    double cauchy(std::uint64_t counter, double scale,
                  std::uint64_t lane = 0) const {
        const double u = uniform(counter, lane + 211);
        return scale * std::tan(M_PI * (u - 0.5));
    }
};

} // namespace blab
