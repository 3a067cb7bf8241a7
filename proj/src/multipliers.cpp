#include "blab/multipliers.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace blab {

namespace {

inline double jbracket(double a, double b) {          // |a,b|
    return std::sqrt(a * a + b * b);
}
inline double abracket(double a, double b) {          // <a,b>
    return std::sqrt(1.0 + a * a + b * b);
}
inline double abracket1(double a) {                   // <a>
    return std::sqrt(1.0 + a * a);
}
inline double psi_integrand(double lambda, double y) {
    return std::pow(1.0 + y * y, -0.5 * (1.0 + lambda));
}

} // namespace

MultiplierParams MultiplierParams::from_physical(const PhysicalParams& p,
                                                int J_sum, double psi_tol) {
    p.validate();
    MultiplierParams mp;
    mp.gamma = p.gamma;
    mp.C_gamma = p.C_gamma();
    mp.kappa = p.kappa();
    mp.eps_small = p.eps_small();
    mp.s = p.s;
    mp.delta = p.delta;
    mp.J_sum = J_sum;
    mp.psi_tol = psi_tol;
    return mp;
}

void MultiplierParams::validate() const {
    if (J_sum < 10) throw std::invalid_argument("multipliers: J_sum must be >= 10");
    if (!(psi_tol > 0.0) || psi_tol > 1e-6)
        throw std::invalid_argument("multipliers: psi_tol must be in (0, 1e-6]");
}

// ---------------------------------------------------------------------------
// psi_lambda
// ---------------------------------------------------------------------------

double psi_inf(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("psi_inf: lambda must be > 0");
    // integral_0^inf (1+y^2)^{-(1+lambda)/2} dy = sqrt(pi)/2 * G(l/2)/G((l+1)/2)
    return 0.5 * std::sqrt(M_PI) * std::tgamma(0.5 * lambda) /
           std::tgamma(0.5 * (lambda + 1.0));
}

struct PsiTable {
    double lambda = 0.0;
    double h = 1e-3;
    double xmax = 50.0;
    double inf = 0.0;
    std::vector<double> val;  // psi at i*h, i = 0..N
};

namespace {

std::shared_ptr<const PsiTable> build_psi_table(double lambda) {
    auto tab = std::make_shared<PsiTable>();
    tab->lambda = lambda;
    tab->inf = psi_inf(lambda);
    const std::size_t n = static_cast<std::size_t>(std::llround(tab->xmax / tab->h));
    tab->val.resize(n + 1);
    tab->val[0] = 0.0;
    // Cumulative two-panel Simpson per cell; the integrand is smooth and the
    // cell is 1e-3 wide, so the per-cell error is far below 1e-12.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i * tab->h;
        const double m1q = a + 0.25 * tab->h;
        const double mid = a + 0.5 * tab->h;
        const double m3q = a + 0.75 * tab->h;
        const double b = a + tab->h;
        acc += (tab->h / 12.0) *
               (psi_integrand(lambda, a) + 4.0 * psi_integrand(lambda, m1q) +
                2.0 * psi_integrand(lambda, mid) + 4.0 * psi_integrand(lambda, m3q) +
                psi_integrand(lambda, b));
        tab->val[i + 1] = acc;
    }
    return tab;
}

std::map<double, std::shared_ptr<const PsiTable>>& psi_cache() {
    static std::map<double, std::shared_ptr<const PsiTable>> cache;
    return cache;
}
std::mutex psi_cache_mutex;

double psi_tail(double lambda, double x) {
    // integral_x^inf <y>^{-1-lambda} dy for x >= 50, asymptotic expansion of
    // (1 + y^{-2})^{-(1+lambda)/2} in y^{-2}, four terms.
    const double a = -0.5 * (1.0 + lambda);
    const double c1 = a;
    const double c2 = a * (a - 1.0) / 2.0;
    const double c3 = a * (a - 1.0) * (a - 2.0) / 6.0;
    double tail = std::pow(x, -lambda) / lambda;
    tail += c1 * std::pow(x, -lambda - 2.0) / (lambda + 2.0);
    tail += c2 * std::pow(x, -lambda - 4.0) / (lambda + 4.0);
    tail += c3 * std::pow(x, -lambda - 6.0) / (lambda + 6.0);
    return tail;
}

} // namespace

const PsiTable* psi_table(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("psi: lambda must be > 0");
    std::lock_guard<std::mutex> lock(psi_cache_mutex);
    auto& cache = psi_cache();
    auto it = cache.find(lambda);
    if (it == cache.end())
        it = cache.emplace(lambda, build_psi_table(lambda)).first;
    return it->second.get();
}

double psi_eval(const PsiTable& tab, double x) {
    const double ax = std::abs(x);
    double v;
    if (ax >= tab.xmax) {
        v = tab.inf - psi_tail(tab.lambda, ax);
    } else {
        // Cubic Hermite on the cell; endpoint slopes are known exactly.
        const double u = ax / tab.h;
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= tab.val.size() - 1) i = tab.val.size() - 2;
        const double tloc = u - static_cast<double>(i);
        const double x0 = i * tab.h;
        const double y0 = tab.val[i], y1 = tab.val[i + 1];
        const double d0 = psi_integrand(tab.lambda, x0) * tab.h;
        const double d1 = psi_integrand(tab.lambda, x0 + tab.h) * tab.h;
        const double t2 = tloc * tloc, t3 = t2 * tloc;
        v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + tloc) * d0 +
            (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * d1;
    }
    return x < 0.0 ? -v : v;
}

double psi(double lambda, double x) {
    if (!(lambda > 0.0)) throw std::invalid_argument("psi: lambda must be > 0");
    if (lambda == 1.0) return std::atan(x);
    return psi_eval(*psi_table(lambda), x);
}

// ---------------------------------------------------------------------------
// Small-time weight A_k and its rate
// ---------------------------------------------------------------------------

double m0(double t, int k, double xi, const MultiplierParams& p) {
    if (k == 0) return 0.0;
    return p.C_gamma * (std::atan(xi / k - t) - std::atan(xi / k));
}

double a_k(double t, int k, double xi, const MultiplierParams& p) {
    const double kp = std::max(std::abs(static_cast<double>(k)), 1.0);
    const double half = std::sqrt(jbracket(kp, xi - k * t));
    const double sob = std::pow(abracket(static_cast<double>(k), xi), p.s);
    return half * sob * std::exp(m0(t, k, xi, p));
}

double q_small(double t, int k, double xi, const MultiplierParams& p) {
    if (k == 0) return 0.0;  // both numerators carry k
    const double sh = xi - k * t;
    const double sym = k * k + sh * sh;
    return -k * sh / (2.0 * sym) - p.C_gamma * k * k / sym;
}

// ---------------------------------------------------------------------------
// Long-time weight M and its rate
// ---------------------------------------------------------------------------

double m1(double t, int k, double xi, const MultiplierParams& p) {
    if (k == 0) return 0.0;
    const double ak = std::abs(static_cast<double>(k));
    return std::atan(std::pow(p.kappa, 1.0 / 3.0) * std::pow(ak, 2.0 / 3.0) *
                     (xi / k - t));
}

double m2(double t, int k, double xi, const MultiplierParams& p) {
    if (k == 0) return 0.0;
    return p.C_gamma * psi(1.0 - p.delta, xi / k - t);
}

void m3_row(double t, int k, const std::vector<double>& xis,
            const MultiplierParams& p, std::vector<double>& out) {
    const PsiTable* tab = psi_table(p.delta);
    out.assign(xis.size(), 0.0);
    // Per-j prefactors are xi-independent; compute once for the whole row.
    for (int aj = 1; aj <= p.J_sum; ++aj)
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            const int j = sgn * aj;
            const double kmj = abracket1(static_cast<double>(k - j));
            const double pref = (1.0 / j) * std::pow(kmj, -p.delta);
            const double invd = 1.0 / (kmj + std::abs(j));
            const double tj = t * j;
            for (std::size_t i = 0; i < xis.size(); ++i)
                out[i] += pref * psi_eval(*tab, (xis[i] - tj) * invd);
        }
}

double m3(double t, int k, double xi, const MultiplierParams& p) {
    std::vector<double> out;
    m3_row(t, k, {xi}, p, out);
    return out[0];
}

void upsilon_row(double t, int k, const std::vector<double>& xis,
                 const MultiplierParams& p, std::vector<double>& out) {
    out.assign(xis.size(), 0.0);
    const double e = 1.0 + p.delta;
    for (int aj = 1; aj <= p.J_sum; ++aj)
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            const int j = sgn * aj;        // j = k - l
            const double lb = abracket1(static_cast<double>(k - j));  // <l>
            const double denom_base = lb + std::abs(j);
            const double pref = std::pow(lb, -p.delta) * std::pow(denom_base, p.delta);
            const double tj = t * j;
            for (std::size_t i = 0; i < xis.size(); ++i) {
                const double r = jbracket(denom_base, xis[i] - tj);
                out[i] += pref * std::pow(r, -e);
            }
        }
}

double upsilon(double t, int k, double xi, const MultiplierParams& p) {
    // Sum over l != k with |k-l| <= J_sum, exactly as displayed in the paper.
    double acc = 0.0;
    const double e = 1.0 + p.delta;
    for (int l = k - p.J_sum; l <= k + p.J_sum; ++l) {
        if (l == k) continue;
        const double lb = abracket1(static_cast<double>(l));
        const double denom_base = lb + std::abs(k - l);
        const double r = jbracket(denom_base, xi - t * (k - l));
        acc += std::pow(lb, -p.delta) * std::pow(denom_base, p.delta) * std::pow(r, -e);
    }
    return acc;
}

double upsilon_jform(double t, int k, double xi, const MultiplierParams& p) {
    std::vector<double> out;
    upsilon_row(t, k, {xi}, p, out);
    return out[0];
}

double script_a(double t, int k, const MultiplierParams& p) {
    if (!(t > 0.0)) throw std::invalid_argument("script_a: t must be > 0");
    const double k13 = std::pow(p.kappa, 1.0 / 3.0);
    const double growth = (k != 0) ? p.eps_small * k13 * t : 0.0;
    return std::exp(growth + std::pow(p.kappa, -1.0 / 3.0) / (t * t));
}

double big_m(double t, int k, double xi, const MultiplierParams& p) {
    if (!(t >= 0.5 * p.T0()))
        throw std::domain_error("big_m: t below the kappa^{-1/6}/2 regime");
    const double kp = std::max(std::abs(static_cast<double>(k)), 1.0);
    const double half = std::sqrt(jbracket(kp, xi - k * t));
    const double sob = std::pow(abracket(static_cast<double>(k), xi), p.s);
    const double m0sum = m1(t, k, xi, p) + m2(t, k, xi, p) + m3(t, k, xi, p);
    return half * sob * script_a(t, k, p) * std::exp(m0sum);
}

double q_star(double t, int k, double xi, const MultiplierParams& p) {
    if (!(t > 0.0)) throw std::invalid_argument("q_star: t must be > 0");
    const double sh = xi - k * t;
    const double k13 = std::pow(p.kappa, 1.0 / 3.0);
    double v = -2.0 * std::pow(p.kappa, -1.0 / 3.0) / (t * t * t) -
               upsilon_jform(t, k, xi, p);
    if (k != 0) {
        const double sym = k * k + sh * sh;
        const double ak = std::abs(static_cast<double>(k));
        v += -k * sh / (2.0 * sym) + p.eps_small * k13;
        v -= k13 * std::pow(ak, 4.0 / 3.0) /
             (std::pow(ak, 2.0 / 3.0) + std::pow(p.kappa, 2.0 / 3.0) * sh * sh);
        v -= p.C_gamma * std::pow(abracket1(xi / k - t), -2.0 + p.delta);
    }
    return v;
}

double m_unified(double t, int k, double xi, const MultiplierParams& p) {
    if (t <= p.T0()) return a_k(t, k, xi, p);
    return big_m(t, k, xi, p);
}

} // namespace blab
