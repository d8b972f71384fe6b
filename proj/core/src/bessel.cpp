#include "eigenbar/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

constexpr double kSeriesLimit = 8.0;

// sum_k (-1)^k (x/2)^(2k+order) / (k! (k+order)!)
double series(double x, int order) {
    const double h = 0.5 * x;
    double term = order == 0 ? 1.0 : h;
    double sum = term;
    const double q = -h * h;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

// J_order(x) = (1/pi) int_0^pi cos(order*t - x sin t) dt, periodic so the trapezoid
// rule converges geometrically once the node count exceeds |x|.
double integral_form(double x, int order) {
    const int nodes = 64 + 2 * static_cast<int>(std::ceil(std::abs(x)));
    double sum = 0.0;
    for (int i = 0; i < 2 * nodes; ++i) {
        const double t = std::numbers::pi * i / nodes;
        sum += std::cos(order * t - x * std::sin(t));
    }
    return sum / (2.0 * nodes);
}

}  // namespace

double bessel_j0(double x) { return std::abs(x) <= kSeriesLimit ? series(x, 0) : integral_form(x, 0); }

double bessel_j1(double x) { return std::abs(x) <= kSeriesLimit ? series(x, 1) : integral_form(x, 1); }

double bessel_j0_first_zero() {
    double lo = 2.0;
    double hi = 3.0;
    double flo = bessel_j0(lo);
    if (!(flo > 0.0 && bessel_j0(hi) < 0.0)) throw InternalError("J0 root is not bracketed by [2, 3]");
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = bessel_j0(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace eigenbar
