#include "blab/grid.hpp"
#include "blab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace blab {

SpectralGrid make_grid(int K, int J, double L_Y, double dealias_fraction) {
    if (K < 1) throw std::invalid_argument("make_grid: K must be >= 1");
    if (J < 1) throw std::invalid_argument("make_grid: J must be >= 1");
    if (!(L_Y > 0.0)) throw std::invalid_argument("make_grid: L_Y must be > 0");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
        throw std::invalid_argument("make_grid: dealias_fraction must be in (0,1]");
    SpectralGrid g;
    g.K = K;
    g.J = J;
    g.L_Y = L_Y;
    g.dxi = 2.0 * M_PI / L_Y;
    g.dealias_fraction = dealias_fraction;
    return g;
}

SpectralField zero_field(const SpectralGrid& grid) {
    SpectralField f;
    f.grid = grid;
    f.coeffs.assign(grid.size(), cplx(0.0, 0.0));
    return f;
}

SpectralField from_function(const SpectralGrid& grid,
                            const std::function<cplx(int, double)>& sampler) {
    SpectralField f = zero_field(grid);
    for (int k = -grid.K; k <= grid.K; ++k)
        for (int j = -grid.J; j <= grid.J; ++j) {
            const cplx v = sampler(k, grid.xi(j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("from_function: sampler returned non-finite value");
            f.at(k, j) = v;
        }
    symmetrize(f);
    return f;
}

void symmetrize(SpectralField& f) {
    const SpectralGrid& g = f.grid;
    for (int k = 0; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            if (k == 0 && j < 0) continue;
            const cplx a = f.at(k, j);
            const cplx b = f.at(-k, -j);
            const cplx avg = 0.5 * (a + std::conj(b));
            f.at(k, j) = avg;
            f.at(-k, -j) = std::conj(avg);
        }
}

double reality_defect(const SpectralField& f) {
    const SpectralGrid& g = f.grid;
    double scale = max_abs(f);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j)
            worst = std::max(worst, std::abs(f.at(k, j) - std::conj(f.at(-k, -j))));
    return worst / scale;
}

bool all_finite(const SpectralField& f) {
    for (const cplx& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

SpectralField convolve_direct(const SpectralField& f, const SpectralField& g) {
    if (!f.grid.same_as(g.grid))
        throw std::invalid_argument("convolve_direct: grid mismatch");
    const SpectralGrid& gr = f.grid;
    SpectralField out = zero_field(gr);
    for (int k = -gr.K; k <= gr.K; ++k)
        for (int j = -gr.J; j <= gr.J; ++j) {
            cplx acc(0.0, 0.0);
            for (int l = -gr.K; l <= gr.K; ++l) {
                const int kk = k - l;
                if (kk < -gr.K || kk > gr.K) continue;
                for (int m = -gr.J; m <= gr.J; ++m) {
                    const int jj = j - m;
                    if (jj < -gr.J || jj > gr.J) continue;
                    acc += f.at(kk, jj) * g.at(l, m);
                }
            }
            out.at(k, j) = acc * gr.dxi;
        }
    return out;
}

SpectralField convolve_fast(const SpectralField& f, const SpectralField& g) {
    if (!f.grid.same_as(g.grid))
        throw std::invalid_argument("convolve_fast: grid mismatch");
    const SpectralGrid& gr = f.grid;
    // Pad so the quadratic product cannot alias back onto retained modes:
    // with fraction 2/3 the padded length exceeds 3K+1 (resp. 3J+1), which
    // makes the retained part of the circular convolution exactly linear.
    const std::size_t nx = next_pow2(static_cast<std::size_t>(
        std::ceil(gr.nk() / gr.dealias_fraction)));
    const std::size_t ny = next_pow2(static_cast<std::size_t>(
        std::ceil(gr.nj() / gr.dealias_fraction)));

    auto scatter = [&](const SpectralField& s) {
        std::vector<cplx> a(nx * ny, cplx(0.0, 0.0));
        for (int k = -gr.K; k <= gr.K; ++k)
            for (int j = -gr.J; j <= gr.J; ++j) {
                const std::size_t r = static_cast<std::size_t>((k + static_cast<int>(nx)) % static_cast<int>(nx));
                const std::size_t c = static_cast<std::size_t>((j + static_cast<int>(ny)) % static_cast<int>(ny));
                a[r * ny + c] = s.at(k, j);
            }
        return a;
    };

    std::vector<cplx> fa = scatter(f);
    std::vector<cplx> ga = scatter(g);
    fft2_pow2(fa, nx, ny, true);   // to collocation values
    fft2_pow2(ga, nx, ny, true);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= ga[i];
    fft2_pow2(fa, nx, ny, false);  // back to coefficients (unnormalized)

    const double scale = gr.dxi / (static_cast<double>(nx) * static_cast<double>(ny));
    SpectralField out = zero_field(gr);
    for (int k = -gr.K; k <= gr.K; ++k)
        for (int j = -gr.J; j <= gr.J; ++j) {
            const std::size_t r = static_cast<std::size_t>((k + static_cast<int>(nx)) % static_cast<int>(nx));
            const std::size_t c = static_cast<std::size_t>((j + static_cast<int>(ny)) % static_cast<int>(ny));
            out.at(k, j) = fa[r * ny + c] * scale;
        }
    return out;
}

double weighted_norm(const SpectralField& f, const WeightFn& w, double t) {
    const SpectralGrid& g = f.grid;
    double acc = 0.0;
    for (int k = -g.K; k <= g.K; ++k)
        for (int j = -g.J; j <= g.J; ++j) {
            const double wv = w.eval(t, k, g.xi(j));
            acc += wv * wv * std::norm(f.at(k, j));
        }
    return std::sqrt(acc * g.dxi);
}

double l1_norm_nonzero_modes(const SpectralField& f) {
    const SpectralGrid& g = f.grid;
    double acc = 0.0;
    for (int k = -g.K; k <= g.K; ++k) {
        if (k == 0) continue;
        for (int j = -g.J; j <= g.J; ++j) acc += std::abs(f.at(k, j));
    }
    return acc * g.dxi;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    if (!a.grid.same_as(b.grid)) throw std::invalid_argument("field add: grid mismatch");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    if (!a.grid.same_as(b.grid)) throw std::invalid_argument("field sub: grid mismatch");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    return out;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField out = a;
    for (cplx& c : out.coeffs) c *= s;
    return out;
}

double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (const cplx& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

} // namespace blab
