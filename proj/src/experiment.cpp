/// @file experiment.cpp

#include "blab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blab {

namespace {

struct XY {
    std::vector<double> x, y;
};

XY window_log(const Series& series, double lo, double hi, bool log_x) {
    XY out;
    for (const auto& [t, v] : series) {
        if (t < lo || t > hi) continue;
        if (!(v > 0.0))
            throw std::invalid_argument("fit: nonpositive value inside the window");
        if (log_x && !(t > 0.0))
            throw std::invalid_argument("fit: nonpositive time inside a log-t window");
        out.x.push_back(log_x ? std::log(t) : t);
        out.y.push_back(std::log(v));
    }
    return out;
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        acc += r * r;
    }
    f.rms = std::sqrt(acc / n);
    return f;
}

/// Leave-one-block-out jackknife half-width of the slope (8 blocks).
double jackknife_width(const std::vector<double>& x, const std::vector<double>& y,
                       const std::function<double(const std::vector<double>&,
                                                  const std::vector<double>&)>& est) {
    std::size_t n = x.size();
    std::size_t blocks = std::min<std::size_t>(8, n);
    if (blocks < 3) return 0.0;
    std::vector<double> vals;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            if (i * blocks / n == b) continue;
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
        if (xs.size() >= 2) vals.push_back(est(xs, ys));
    }
    if (vals.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= vals.size();
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var *= double(vals.size() - 1) / vals.size();
    return std::sqrt(var);
}

} // namespace

FitResult fit_power_decay(const Series& series, double window_lo, double window_hi) {
    XY d = window_log(series, window_lo, window_hi, true);
    if (d.x.size() < 3)
        throw std::invalid_argument("fit_power_decay: fewer than 3 points in window");
    LineFit f = line_fit(d.x, d.y);
    FitResult out;
    out.value = f.slope;
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    out.residual = f.rms;
    out.n_points = d.x.size();
    out.half_width = jackknife_width(d.x, d.y, [](const auto& xs, const auto& ys) {
        return line_fit(xs, ys).slope;
    });
    return out;
}

FitResult fit_power_decay_osc(const Series& series, double window_lo,
                              double window_hi, double omega) {
    if (!(omega > 0.0))
        throw std::invalid_argument("fit_power_decay_osc: omega must be > 0");
    XY d = window_log(series, window_lo, window_hi, true);
    std::size_t n = d.x.size();
    if (n < 5)
        throw std::invalid_argument("fit_power_decay_osc: fewer than 5 points in window");

    auto solve4 = [](double A[4][4], double b[4], double out[4]) {
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int r = c + 1; r < 4; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            if (A[piv][c] == 0.0)
                throw std::invalid_argument("fit_power_decay_osc: singular system");
            std::swap(A[c], A[piv]);
            std::swap(b[c], b[piv]);
            for (int r = c + 1; r < 4; ++r) {
                double m = A[r][c] / A[c][c];
                for (int cc = c; cc < 4; ++cc) A[r][cc] -= m * A[c][cc];
                b[r] -= m * b[c];
            }
        }
        for (int r = 3; r >= 0; --r) {
            double acc = b[r];
            for (int cc = r + 1; cc < 4; ++cc) acc -= A[r][cc] * out[cc];
            out[r] = acc / A[r][r];
        }
    };
    auto coeffs_of = [&](const std::vector<double>& lt, const std::vector<double>& lv,
                         double out[4]) {
        double A[4][4] = {};
        double b[4] = {};
        for (std::size_t i = 0; i < lt.size(); ++i) {
            double phi[4] = {1.0, lt[i], std::cos(omega * lt[i]),
                             std::sin(omega * lt[i])};
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) A[r][c] += phi[r] * phi[c];
                b[r] += phi[r] * lv[i];
            }
        }
        solve4(A, b, out);
    };
    auto slope_of = [&](const std::vector<double>& lt, const std::vector<double>& lv) {
        double coef[4];
        coeffs_of(lt, lv, coef);
        return coef[1];
    };

    FitResult out;
    double coef[4];
    coeffs_of(d.x, d.y, coef);
    out.value = coef[1];
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    out.n_points = n;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double model = coef[0] + coef[1] * d.x[i] + coef[2] * std::cos(omega * d.x[i]) +
                       coef[3] * std::sin(omega * d.x[i]);
        acc += (d.y[i] - model) * (d.y[i] - model);
    }
    out.residual = std::sqrt(acc / n);
    out.half_width = jackknife_width(d.x, d.y, slope_of);
    return out;
}

FitResult fit_exp_rate(const Series& series, double window_lo, double window_hi) {
    XY d = window_log(series, window_lo, window_hi, true);
    std::size_t n = d.x.size();
    if (n < 4)
        throw std::invalid_argument("fit_exp_rate: fewer than 4 points in window");
    // Model log v = c0 + p*log t - r*t; normal equations in (c0, p, r).
    std::vector<double> tlin(n);
    for (std::size_t i = 0; i < n; ++i) tlin[i] = std::exp(d.x[i]);

    auto solve3 = [](double A[3][3], double b[3], double out[3]) {
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            if (A[piv][c] == 0.0)
                throw std::invalid_argument("fit_exp_rate: singular system");
            std::swap(A[c], A[piv]);
            std::swap(b[c], b[piv]);
            for (int r = c + 1; r < 3; ++r) {
                double m = A[r][c] / A[c][c];
                for (int cc = c; cc < 3; ++cc) A[r][cc] -= m * A[c][cc];
                b[r] -= m * b[c];
            }
        }
        for (int r = 2; r >= 0; --r) {
            double acc = b[r];
            for (int cc = r + 1; cc < 3; ++cc) acc -= A[r][cc] * out[cc];
            out[r] = acc / A[r][r];
        }
    };

    auto rate_of = [&](const std::vector<double>& lt, const std::vector<double>& lv) {
        std::size_t m = lt.size();
        double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double b[3] = {0, 0, 0};
        for (std::size_t i = 0; i < m; ++i) {
            double phi[3] = {1.0, lt[i], -std::exp(lt[i])};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) A[r][c] += phi[r] * phi[c];
                b[r] += phi[r] * lv[i];
            }
        }
        double coef[3];
        solve3(A, b, coef);
        return coef[2];
    };

    FitResult out;
    out.value = rate_of(d.x, d.y);
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    out.n_points = n;

    // rms residual against the full three-parameter model
    {
        double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double b[3] = {0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            double phi[3] = {1.0, d.x[i], -tlin[i]};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) A[r][c] += phi[r] * phi[c];
                b[r] += phi[r] * d.y[i];
            }
        }
        double coef[3];
        solve3(A, b, coef);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = d.y[i] - (coef[0] + coef[1] * d.x[i] - coef[2] * tlin[i]);
            acc += r * r;
        }
        out.residual = std::sqrt(acc / n);
    }
    out.half_width = jackknife_width(d.x, d.y, rate_of);
    return out;
}

FitResult regress_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("regress_loglog: need matching samples, >= 2");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("regress_loglog: nonpositive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    LineFit f = line_fit(lx, ly);
    FitResult out;
    out.value = f.slope;
    out.window_lo = *std::min_element(x.begin(), x.end());
    out.window_hi = *std::max_element(x.begin(), x.end());
    out.residual = f.rms;
    out.n_points = x.size();
    out.half_width = jackknife_width(lx, ly, [](const auto& xs, const auto& ys) {
        return line_fit(xs, ys).slope;
    });
    return out;
}

RateScanResult ed_rate_scaling(const std::vector<double>& kappas,
                               const std::function<double(double)>& rate_for_kappa) {
    if (kappas.size() < 4)
        throw std::invalid_argument("ed_rate_scaling: need >= 4 kappa values");
    double kmin = *std::min_element(kappas.begin(), kappas.end());
    double kmax = *std::max_element(kappas.begin(), kappas.end());
    if (!(kmin > 0.0) || kmax / kmin < 999.0)
        throw std::invalid_argument("ed_rate_scaling: kappas must span >= 3 decades");
    RateScanResult out;
    out.kappas = kappas;
    for (double k : kappas) out.rates.push_back(rate_for_kappa(k));
    out.slope = regress_loglog(out.kappas, out.rates);
    return out;
}

GronwallReport gronwall_envelope(const Trajectory& traj, const PhysicalParams& params) {
    GronwallReport rep;
    double T0 = params.kappa() > 0.0 ? std::pow(params.kappa(), -1.0 / 6.0)
                                     : std::numeric_limits<double>::infinity();
    if (traj.rows.empty()) return rep;
    double E0 = std::sqrt(std::max(traj.rows.front().E, 0.0));
    for (const auto& row : traj.rows) {
        if (row.t > T0) break;
        rep.n_samples += 1;
        rep.t_last = row.t;
        if (row.t <= 0.0) continue;
        double Et = std::sqrt(std::max(row.E, 0.0));
        if (Et <= E0 || E0 <= 0.0) continue;
        // E(t)^{1/2} <= E0^{1/2}/(1 - C(t+t^2)E0^{1/2})  <=>  C >= this bound
        double c_req = (1.0 - E0 / Et) / ((row.t + row.t * row.t) * E0);
        if (c_req > rep.C_fit) {
            rep.C_fit = c_req;
            rep.worst_t = row.t;
        }
    }
    return rep;
}

ThresholdReport threshold_scan(const std::vector<double>& kappas,
                               const BisectionSpec& spec,
                               const std::function<bool(double, double)>& stable) {
    if (kappas.empty())
        throw std::invalid_argument("threshold_scan: empty kappa list");
    if (!(spec.a_lo > 0.0) || !(spec.a_hi > spec.a_lo))
        throw std::invalid_argument("threshold_scan: need 0 < a_lo < a_hi");
    if (spec.depth < 6)
        throw std::invalid_argument("threshold_scan: bisection depth must be >= 6");

    ThresholdReport rep;
    std::vector<double> res_k, res_a;
    for (double kappa : kappas) {
        ThresholdPoint pt;
        pt.kappa = kappa;
        std::vector<std::pair<double, bool>> seen;
        auto probe = [&](double a) {
            bool st = stable(kappa, a);
            seen.emplace_back(a, st);
            return st;
        };
        bool lo_stable = probe(spec.a_lo);
        bool hi_stable = probe(spec.a_hi);
        if (!lo_stable) {
            pt.verdict = "censored_unstable";
            pt.a_lo = pt.a_hi = pt.a_star = spec.a_lo;
        } else if (hi_stable) {
            pt.verdict = "censored_stable";
            pt.a_lo = pt.a_hi = pt.a_star = spec.a_hi;
        } else {
            double lo = spec.a_lo, hi = spec.a_hi;
            for (int d = 0; d < spec.depth; ++d) {
                double mid = std::sqrt(lo * hi);
                if (probe(mid)) lo = mid; else hi = mid;
            }
            pt.a_lo = lo;
            pt.a_hi = hi;
            pt.a_star = std::sqrt(lo * hi);
            pt.verdict = "resolved";
            res_k.push_back(kappa);
            res_a.push_back(pt.a_star);
        }
        // monotonicity audit: a stable probe above an unstable probe is a
        // resolution artifact worth flagging
        std::sort(seen.begin(), seen.end());
        double first_unstable = std::numeric_limits<double>::infinity();
        for (const auto& [a, st] : seen) {
            if (!st) first_unstable = std::min(first_unstable, a);
            if (st && a > first_unstable) pt.monotone = false;
        }
        rep.points.push_back(std::move(pt));
    }
    rep.all_resolved = res_k.size() == kappas.size();
    if (res_k.size() >= 2) rep.slope = regress_loglog(res_k, res_a);
    return rep;
}

} // namespace blab
