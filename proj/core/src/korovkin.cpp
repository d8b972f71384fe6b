#include "eigenbar/korovkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigenbar/bessel.hpp"
#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

constexpr int kRadialNodes = 64;
constexpr int kAngularNodes = 48;

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

const Rule& rule(int n) {
    static const Rule radial = [] {
        Rule r;
        gauss_legendre(kRadialNodes, r.x, r.w);
        return r;
    }();
    static const Rule angular = [] {
        Rule r;
        gauss_legendre(kAngularNodes, r.x, r.w);
        return r;
    }();
    return n == kRadialNodes ? radial : angular;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre needs at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pm = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

KorovkinKernel KorovkinKernel::create(int resolution) {
    if (resolution < 256) throw InvalidArgument("Korovkin table needs at least 256 radial nodes");
    KorovkinKernel k;
    k.j01_ = bessel_j0_first_zero();
    // int over the disk of J0(2 j01 r)^2 equals (pi / 4) J1(j01)^2.
    const double j1 = bessel_j1(k.j01_);
    k.u_scale_ = 1.0 / std::sqrt(0.25 * std::numbers::pi * j1 * j1);
    std::vector<double> table(resolution);
    for (int i = 0; i < resolution; ++i) table[i] = k.w_direct(static_cast<double>(i) / (resolution - 1));
    const double w0 = table[0];
    if (!(std::abs(w0 - 1.0) < 1e-6)) throw InternalError("Korovkin kernel quadrature lost accuracy at 0");
    // W(0) = ||V||^2 = 1 exactly; remove the quadrature residue.
    for (auto& x : table) x = std::clamp(x / w0, 0.0, 1.0);
    table.back() = 0.0;
    k.table_ = std::move(table);
    return k;
}

double KorovkinKernel::u(double r) const {
    r = std::abs(r);
    if (r > 0.5) return 0.0;
    return u_scale_ * bessel_j0(2.0 * j01_ * r);
}

double KorovkinKernel::w_direct(double rho) const {
    rho = std::abs(rho);
    if (rho >= 1.0) return 0.0;
    if (rho == 0.0) {
        // 2 pi int_0^{1/2} U(r)^2 r dr
        const auto& R = rule(kRadialNodes);
        double s = 0.0;
        for (int i = 0; i < kRadialNodes; ++i) {
            const double r = 0.25 * (R.x[i] + 1.0);
            const double ur = u(r);
            s += R.w[i] * 0.25 * ur * ur * r;
        }
        return 2.0 * std::numbers::pi * s;
    }
    const auto& R = rule(kRadialNodes);
    const auto& A = rule(kAngularNodes);
    const double kink = std::abs(0.5 - rho);
    const double lower = std::max(0.0, rho - 0.5);
    std::vector<std::pair<double, double>> pieces;
    if (kink > lower && kink < 0.5) {
        pieces.emplace_back(lower, kink);
        pieces.emplace_back(kink, 0.5);
    } else {
        pieces.emplace_back(lower, 0.5);
    }
    double total = 0.0;
    for (const auto& [a, b] : pieces) {
        // r = a + (b - a)(1 - cos phi)/2 flattens the square-root behaviour of the
        // angular limit at both ends.
        for (int i = 0; i < kRadialNodes; ++i) {
            const double phi = 0.5 * std::numbers::pi * (R.x[i] + 1.0);
            const double r = a + 0.5 * (b - a) * (1.0 - std::cos(phi));
            const double dr = 0.5 * (b - a) * std::sin(phi) * 0.5 * std::numbers::pi;
            if (r <= 0.0) continue;
            const double c = (rho * rho + r * r - 0.25) / (2.0 * rho * r);
            const double theta0 = std::acos(std::clamp(c, -1.0, 1.0));
            if (theta0 <= 0.0) continue;
            double inner = 0.0;
            for (int j = 0; j < kAngularNodes; ++j) {
                const double th = 0.5 * theta0 * (A.x[j] + 1.0);
                const double s2 = std::max(0.0, rho * rho + r * r - 2.0 * rho * r * std::cos(th));
                inner += A.w[j] * u(std::min(0.5, std::sqrt(s2)));
            }
            inner *= 0.5 * theta0;
            total += R.w[i] * dr * u(r) * r * 2.0 * inner;
        }
    }
    return total;
}

double KorovkinKernel::w(double rho) const {
    if (!initialized()) throw StateError("Korovkin kernel is not initialised");
    rho = std::abs(rho);
    if (rho >= 1.0) return 0.0;
    const int n = resolution();
    const double pos = rho * (n - 1);
    const int i = std::min(static_cast<int>(pos), n - 2);
    const double t = pos - i;
    const auto at = [&](int k) {
        if (k < 0) return table_[-k];  // even in rho
        if (k >= n) return 0.0;
        return table_[k];
    };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double v = p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
    return std::clamp(v, 0.0, 1.0);
}

const KorovkinKernel& shared_korovkin_kernel() {
    static const KorovkinKernel kernel = KorovkinKernel::create();
    return kernel;
}

TrigPoly korovkin_mean(const TrigPoly& f, double lambda, const KorovkinKernel& kernel) {
    if (!kernel.initialized()) throw StateError("Korovkin kernel is not initialised");
    if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
    const double root = std::sqrt(lambda);
    TrigPoly h;
    for (const auto& [v, c] : f.coefficients()) {
        const double r2 = static_cast<double>(v.first * v.first + v.second * v.second);
        if (r2 > lambda) continue;
        const double damp = kernel.w(std::sqrt(r2) / root);
        if (v.first == 0 && v.second == 0)
            h.set(v, c.real() * damp);
        else if (v.second > 0 || (v.second == 0 && v.first > 0))
            h.set(v, c * damp);
    }
    return h;
}

TrigPoly korovkin_mean(std::span<const double> grid, int n, double lambda, const KorovkinKernel& kernel) {
    if (!kernel.initialized()) throw StateError("Korovkin kernel is not initialised");
    return korovkin_mean(dft_coefficients(grid, n, lambda), lambda, kernel);
}

}  // namespace eigenbar
