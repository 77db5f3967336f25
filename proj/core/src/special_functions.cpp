#include "jsccplan/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsccplan {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Power series: E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!).
// Given ln(x) directly so it also works when x itself underflows.
double e1_series_from_log(double log_x) {
    double sum = -kEulerGamma - log_x;
    if (log_x < -50.0) return sum;  // every series term below 1 ulp
    const double x = std::exp(log_x);
    double term = 1.0;  // x^k / k!
    for (int k = 1; k < 64; ++k) {
        term *= x / k;
        const double contrib = (k % 2 == 1 ? term : -term) / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Continued fraction (modified Lentz), valid for x >= 1.
double e1_continued_fraction(double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x);
}
}  // namespace

double exp_integral_e1(double g) {
    if (!(g > 0.0)) throw std::domain_error("exp_integral_e1: g must be > 0");
    if (g < 1.0) return e1_series_from_log(std::log(g));
    return e1_continued_fraction(g);
}

double exp_integral_e1_of_log(double x) {
    if (x < 0.0) return e1_series_from_log(x);
    return e1_continued_fraction(std::exp(x));
}

double min_threshold_log(double c, double rel_tol) {
    if (!(c > 0.0)) throw std::domain_error("min_threshold: c must be > 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("min_threshold: rel_tol must be > 0");

    // Bracket ln(d). For small d, E1 ~ -ln d - gamma; for large d, E1 < e^-d.
    double lo = std::min(-c - kEulerGamma - 1.0, -2.0);
    double hi = 1.0;
    while (exp_integral_e1_of_log(hi) > c) hi += 1.0;  // E1 decays ~ e^{-e^hi}
    // E1(e^lo) > c must hold; extend if the heuristic guess was short.
    while (exp_integral_e1_of_log(lo) <= c) lo -= 8.0;

    // Bisection on x = ln d; E1(e^x) is strictly decreasing in x.
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (exp_integral_e1_of_log(mid) > c)
            lo = mid;
        else
            hi = mid;
        // |hi - lo| bounds the relative error of d = e^x directly.
        if (hi - lo < 0.5 * rel_tol) break;
    }
    return 0.5 * (lo + hi);
}

double min_threshold(double c, double rel_tol) {
    const double x = min_threshold_log(c, rel_tol);
    const double d = std::exp(x);
    return std::max(d, std::numeric_limits<double>::min());
}

}  // namespace jsccplan
