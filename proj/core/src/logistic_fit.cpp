#include "jsccplan/logistic_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsccplan {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct InnerFit {
    double a1 = 0.0;
    double a2 = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

// Exact linear least squares in (a1, a2) at fixed (c1, c2):
// model_i = a1 * (1 - s_i) + a2 * s_i with s_i = sigmoid(c1 * x_i + c2).
InnerFit solve_inner(const std::vector<SsimSample>& samples, double c1, double c2) {
    double m11 = 0, m12 = 0, m22 = 0, r1 = 0, r2 = 0;
    for (const auto& [x, y] : samples) {
        const double s = sigmoid(c1 * x + c2);
        const double t = 1.0 - s;
        m11 += t * t;
        m12 += s * t;
        m22 += s * s;
        r1 += y * t;
        r2 += y * s;
    }
    const double det = m11 * m22 - m12 * m12;
    InnerFit fit;
    if (std::abs(det) < 1e-14 * std::max(1.0, m11 * m22)) return fit;  // all s_i equal
    fit.a1 = (r1 * m22 - r2 * m12) / det;
    fit.a2 = (m11 * r2 - m12 * r1) / det;
    fit.sse = 0.0;
    for (const auto& [x, y] : samples) {
        const double s = sigmoid(c1 * x + c2);
        const double res = fit.a1 + (fit.a2 - fit.a1) * s - y;
        fit.sse += res * res;
    }
    return fit;
}

double objective(const std::vector<SsimSample>& samples, double c1, double c2) {
    if (!(c1 > 0.0)) return std::numeric_limits<double>::infinity();
    return solve_inner(samples, c1, c2).sse;
}

// Nelder-Mead on (c1, c2). Small and self-contained; the objective is the
// profiled SSE after the exact inner solve.
std::array<double, 2> nelder_mead(const std::vector<SsimSample>& samples,
                                  std::array<double, 2> start) {
    using Pt = std::array<double, 2>;
    auto f = [&](const Pt& p) { return objective(samples, p[0], p[1]); };

    std::array<Pt, 3> simplex{Pt{start[0], start[1]},
                              Pt{start[0] * 1.2 + 1e-3, start[1]},
                              Pt{start[0], start[1] + 0.25}};
    std::array<double, 3> fv{f(simplex[0]), f(simplex[1]), f(simplex[2])};

    for (int it = 0; it < 500; ++it) {
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const Pt& best = simplex[order[0]];
        const Pt& worst = simplex[order[2]];
        const double size = std::max(std::abs(best[0] - worst[0]) / std::max(1e-12, std::abs(best[0])),
                                     std::abs(best[1] - worst[1]));
        if (size < 1e-13 && it > 20) break;

        const Pt centroid{0.5 * (simplex[order[0]][0] + simplex[order[1]][0]),
                          0.5 * (simplex[order[0]][1] + simplex[order[1]][1])};
        auto along = [&](double coef) {
            return Pt{centroid[0] + coef * (centroid[0] - worst[0]),
                      centroid[1] + coef * (centroid[1] - worst[1])};
        };

        const Pt refl = along(1.0);
        const double f_refl = f(refl);
        if (f_refl < fv[order[0]]) {
            const Pt expa = along(2.0);
            const double f_expa = f(expa);
            if (f_expa < f_refl) {
                simplex[order[2]] = expa;
                fv[order[2]] = f_expa;
            } else {
                simplex[order[2]] = refl;
                fv[order[2]] = f_refl;
            }
        } else if (f_refl < fv[order[1]]) {
            simplex[order[2]] = refl;
            fv[order[2]] = f_refl;
        } else {
            const Pt contr = along(-0.5);
            const double f_contr = f(contr);
            if (f_contr < fv[order[2]]) {
                simplex[order[2]] = contr;
                fv[order[2]] = f_contr;
            } else {
                for (int i : {order[1], order[2]}) {
                    simplex[i] = {0.5 * (simplex[i][0] + best[0]),
                                  0.5 * (simplex[i][1] + best[1])};
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    const int best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    return simplex[best];
}

// Full 4-parameter Gauss-Newton polish with Levenberg damping.
void polish(const std::vector<SsimSample>& samples, LogisticParams& p) {
    double lambda = 1e-8;
    auto sse_of = [&](const LogisticParams& q) {
        double sse = 0;
        for (const auto& [x, y] : samples) {
            const double res = q.a1 + (q.a2 - q.a1) * sigmoid(q.c1 * x + q.c2) - y;
            sse += res * res;
        }
        return sse;
    };
    double sse = sse_of(p);
    for (int it = 0; it < 60; ++it) {
        double jtj[4][4] = {};
        double jtr[4] = {};
        for (const auto& [x, y] : samples) {
            const double s = sigmoid(p.c1 * x + p.c2);
            const double res = p.a1 + (p.a2 - p.a1) * s - y;
            const double ds = (p.a2 - p.a1) * s * (1.0 - s);
            const double jac[4] = {1.0 - s, s, ds * x, ds};
            for (int i = 0; i < 4; ++i) {
                jtr[i] += jac[i] * res;
                for (int j = 0; j < 4; ++j) jtj[i][j] += jac[i] * jac[j];
            }
        }
        // Solve (JtJ + lambda I) step = Jtr by Gaussian elimination.
        double a[4][5];
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) a[i][j] = jtj[i][j] + (i == j ? lambda * (1.0 + jtj[i][i]) : 0.0);
            a[i][4] = jtr[i];
        }
        bool singular = false;
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            if (std::abs(a[piv][col]) < 1e-300) { singular = true; break; }
            std::swap(a[piv], a[col]);
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                const double w = a[r][col] / a[col][col];
                for (int cc = col; cc <= 4; ++cc) a[r][cc] -= w * a[col][cc];
            }
        }
        if (singular) break;
        LogisticParams trial = p;
        trial.a1 -= a[0][4] / a[0][0];
        trial.a2 -= a[1][4] / a[1][1];
        trial.c1 -= a[2][4] / a[2][2];
        trial.c2 -= a[3][4] / a[3][3];
        const double trial_sse = trial.c1 > 0.0 ? sse_of(trial)
                                                : std::numeric_limits<double>::infinity();
        if (trial_sse <= sse) {
            const double gain = sse - trial_sse;
            p = trial;
            sse = trial_sse;
            lambda = std::max(lambda * 0.3, 1e-14);
            if (gain < 1e-24 * (1.0 + sse)) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e8) break;
        }
    }
}

}  // namespace

LogisticParams fit_logistic(const std::vector<SsimSample>& samples) {
    if (samples.size() < 6)
        throw std::invalid_argument("fit_logistic: need at least 6 samples");
    double y_min = samples[0].second, y_max = samples[0].second;
    for (const auto& [x, y] : samples) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (y_max - y_min < 0.05)
        throw std::invalid_argument("fit_logistic: SSIM spread below 0.05, samples degenerate");

    // Coarse grid over the nonlinear pair, exact inner solve at each node.
    double best_sse = std::numeric_limits<double>::infinity();
    std::array<double, 2> best{0.2, 0.0};
    for (int i = 0; i < 28; ++i) {
        const double c1 = 0.01 * std::pow(400.0, i / 27.0);  // log grid 0.01 .. 4
        for (int j = 0; j <= 32; ++j) {
            const double c2 = -8.0 + 0.5 * j;
            const double sse = objective(samples, c1, c2);
            if (sse < best_sse) {
                best_sse = sse;
                best = {c1, c2};
            }
        }
    }

    const auto refined = nelder_mead(samples, best);
    const InnerFit inner = solve_inner(samples, refined[0], refined[1]);
    LogisticParams params{inner.a1, inner.a2, refined[0], refined[1]};
    polish(samples, params);

    if (!(params.a2 > params.a1))
        throw std::runtime_error("fit_logistic: fitted asymptotes collapsed (a2 <= a1)");
    // Tolerate float-level excursions outside [0, 1]; anything larger means
    // the data does not look like an SSIM curve.
    constexpr double slack = 1e-6;
    if (params.a1 < -slack || params.a2 > 1.0 + slack)
        throw std::runtime_error("fit_logistic: fitted asymptotes outside [0, 1]");
    params.a1 = std::max(params.a1, 0.0);
    params.a2 = std::min(params.a2, 1.0);
    if (!(params.c1 > 0.0))
        throw std::runtime_error("fit_logistic: fitted slope not positive");
    return params;
}

}  // namespace jsccplan
