/// @file fft.hpp
/// Minimal power-of-two complex FFT used by the fast convolution path.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace blab {

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// In-place iterative radix-2 transform. `n` must be a power of two.
/// Forward: a_k -> sum_j a_j e^{-2pi i jk/n}; inverse omits the 1/n scale.
void fft_pow2(std::complex<double>* a, std::size_t n, bool inverse);

/// 2D transform of a row-major nx-by-ny array (both dims powers of two).
void fft2_pow2(std::vector<std::complex<double>>& a, std::size_t nx,
               std::size_t ny, bool inverse);

} // namespace blab
