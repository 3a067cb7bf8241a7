#include "blab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace blab {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(std::complex<double>* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a power of two");
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void fft2_pow2(std::vector<std::complex<double>>& a, std::size_t nx,
               std::size_t ny, bool inverse) {
    if (a.size() != nx * ny)
        throw std::invalid_argument("fft2_pow2: size mismatch");
    for (std::size_t r = 0; r < nx; ++r)
        fft_pow2(a.data() + r * ny, ny, inverse);
    std::vector<std::complex<double>> col(nx);
    for (std::size_t c = 0; c < ny; ++c) {
        for (std::size_t r = 0; r < nx; ++r) col[r] = a[r * ny + c];
        fft_pow2(col.data(), nx, inverse);
        for (std::size_t r = 0; r < nx; ++r) a[r * ny + c] = col[r];
    }
}

} // namespace blab
