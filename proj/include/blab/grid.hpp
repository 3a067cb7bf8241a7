/// @file grid.hpp
/// Truncated Fourier lattice on T x R (R approximated by a period-L_Y torus),
/// spectral fields with conjugate symmetry, convolutions and weighted norms.
///
/// Modes live on k in {-K..K}, xi_j = j*dxi for j in {-J..J} with
/// dxi = 2*pi/L_Y. Convolutions carry a dxi weight so that the lattice sum
/// over eta approximates the continuum integral.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace blab {

using cplx = std::complex<double>;

struct SpectralGrid {
    int K = 1;                       // max X-wavenumber
    int J = 1;                       // max xi index
    double L_Y = 2.0 * M_PI;         // Y-period
    double dxi = 1.0;                // xi spacing = 2*pi/L_Y
    double dealias_fraction = 2.0 / 3.0;

    int nk() const { return 2 * K + 1; }
    int nj() const { return 2 * J + 1; }
    std::size_t size() const {
        return static_cast<std::size_t>(nk()) * static_cast<std::size_t>(nj());
    }
    std::size_t idx(int k, int j) const {
        return static_cast<std::size_t>(k + K) * nj() + static_cast<std::size_t>(j + J);
    }
    double xi(int j) const { return j * dxi; }

    bool same_as(const SpectralGrid& o) const {
        return K == o.K && J == o.J && L_Y == o.L_Y;
    }
};

SpectralGrid make_grid(int K, int J, double L_Y,
                       double dealias_fraction = 2.0 / 3.0);

struct SpectralField {
    SpectralGrid grid;
    std::vector<cplx> coeffs;   // indexed via grid.idx(k, j)

    cplx& at(int k, int j) { return coeffs[grid.idx(k, j)]; }
    const cplx& at(int k, int j) const { return coeffs[grid.idx(k, j)]; }
};

/// Nonnegative weight w(t, k, xi) used inside norms, with a tag naming it.
struct WeightFn {
    std::function<double(double t, int k, double xi)> eval;
    std::string tag;
};

SpectralField zero_field(const SpectralGrid& grid);

/// Populate from a sampler and reality-symmetrize by averaging with the
/// conjugate of the (-k,-xi) sample. Rejects non-finite samples.
SpectralField from_function(const SpectralGrid& grid,
                            const std::function<cplx(int k, double xi)>& sampler);

/// Enforce f(-k,-xi) = conj f(k,xi) by averaging, in place.
void symmetrize(SpectralField& f);

/// Largest |f(-k,-xi) - conj f(k,xi)| relative to the field's max modulus.
double reality_defect(const SpectralField& f);

bool all_finite(const SpectralField& f);

/// Triple-loop convolution: (f*g)(k,j) = sum_{l,m} f(k-l,j-m) g(l,m) * dxi,
/// out-of-range indices treated as zero.
SpectralField convolve_direct(const SpectralField& f, const SpectralField& g);

/// FFT path: zero-pad to power-of-two collocation grids sized so that all
/// retained output modes are alias-free, multiply pointwise, transform back.
/// Agrees with convolve_direct to roundoff.
SpectralField convolve_fast(const SpectralField& f, const SpectralField& g);

/// sqrt( sum_{k,j} w(t,k,xi_j)^2 |f(k,xi_j)|^2 * dxi ).
double weighted_norm(const SpectralField& f, const WeightFn& w, double t);

/// sum_{k != 0} sum_j |f(k,xi_j)| * dxi.
double l1_norm_nonzero_modes(const SpectralField& f);

// Arithmetic helpers used by the dynamics and test code.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
double max_abs(const SpectralField& f);

} // namespace blab
