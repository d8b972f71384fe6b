#include "eigenbar/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "eigenbar/errors.hpp"
#include "eigenbar/functionals.hpp"
#include "eigenbar/mesh_io.hpp"

namespace eigenbar {

namespace {

// Order 1 as a disk max filter: the largest f(x + t) - f(x) over lattice t in the
// disk, taken row by row with periodic sliding-window maxima.
double first_order_modulus(std::span<const double> grid, int n, double reach_sq, int reach) {
    std::vector<double> disk_max(grid.size(), -std::numeric_limits<double>::infinity());
    std::vector<double> window(n);
    std::deque<int> q;
    for (int b = -reach; b <= reach; ++b) {
        const double rest = reach_sq - static_cast<double>(b) * b;
        if (rest < 0.0) continue;
        int w = static_cast<int>(std::floor(std::sqrt(rest)));
        while (static_cast<double>(w + 1) * (w + 1) <= rest) ++w;
        while (w > 0 && static_cast<double>(w) * w > rest) --w;
        for (int y = 0; y < n; ++y) {
            const double* row = grid.data() + static_cast<std::size_t>(((y + b) % n + n) % n) * n;
            if (2 * w + 1 >= n) {
                const double m = *std::max_element(row, row + n);
                std::fill(window.begin(), window.end(), m);
            } else {
                // Window [x - w, x + w] over the periodic row, unrolled onto [-w, n + w).
                q.clear();
                const auto at = [&](int i) { return row[(i % n + n) % n]; };
                for (int i = -w; i < n + w; ++i) {
                    while (!q.empty() && at(q.back()) <= at(i)) q.pop_back();
                    q.push_back(i);
                    const int x = i - w;
                    if (x < 0) continue;
                    while (q.front() < x - w) q.pop_front();
                    window[x] = at(q.front());
                }
            }
            double* out = disk_max.data() + static_cast<std::size_t>(y) * n;
            for (int x = 0; x < n; ++x) out[x] = std::max(out[x], window[x]);
        }
    }
    double best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) best = std::max(best, disk_max[i] - grid[i]);
    return best;
}

}  // namespace

double modulus(std::span<const double> grid, int n, double delta, int order) {
    if (n < 1 || grid.size() != static_cast<std::size_t>(n) * n) throw InvalidArgument("grid size mismatch");
    if (order < 1) throw InvalidArgument("modulus order must be at least 1");
    if (!(delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
    if (delta == 0.0) return 0.0;
    const double h = 2.0 * std::numbers::pi / n;
    if (h > delta / 4.0) throw InvalidArgument("grid too coarse for this delta (spacing exceeds delta/4)");

    std::vector<double> coeff(order + 1);
    for (int j = 0; j <= order; ++j) {
        double binom = 1.0;
        for (int i = 0; i < j; ++i) binom = binom * (order - i) / (i + 1);
        coeff[j] = ((order - j) % 2 == 0 ? 1.0 : -1.0) * binom;
    }
    // The difference along -t is the one along t read from a shifted base point,
    // so half of the shift disk suffices.
    const double reach_sq = (delta / h) * (delta / h) * (1.0 + 1e-12);
    const int reach = static_cast<int>(std::floor(delta / h)) + 1;
    if (order == 1) return first_order_modulus(grid, n, reach_sq, reach);
    double best = 0.0;
    std::vector<int> rows(order + 1);
    std::vector<int> cols(static_cast<std::size_t>(order + 1) * n);
    for (int b = 0; b <= reach; ++b) {
        for (int a = -reach; a <= reach; ++a) {
            if (b == 0 && a <= 0) continue;
            if (static_cast<double>(a) * a + static_cast<double>(b) * b > reach_sq) continue;
            for (int j = 0; j <= order; ++j)
                for (int x = 0; x < n; ++x) cols[j * n + x] = ((x + j * a) % n + n) % n;
            for (int y = 0; y < n; ++y) {
                for (int j = 0; j <= order; ++j) rows[j] = ((y + j * b) % n + n) % n * n;
                for (int x = 0; x < n; ++x) {
                    double s = 0.0;
                    for (int j = 0; j <= order; ++j) s += coeff[j] * grid[rows[j] + cols[j * n + x]];
                    best = std::max(best, std::abs(s));
                }
            }
        }
    }
    return best;
}

double modulus(const ScalarField& field, double delta, int order) {
    return modulus(field.values(), grid_side(field), delta, order);
}

double grid_l2_norm(std::span<const double> grid, int n) {
    const double h = 2.0 * std::numbers::pi / n;
    double s = 0.0;
    for (double v : grid) s += v * v;
    return std::sqrt(s) * h;
}

namespace {

AverageBarTerm make_term(std::size_t k, double lhs, double delta, double base, const ScalarField& field) {
    AverageBarTerm t;
    t.k = k;
    t.lhs = lhs;
    t.delta = delta;
    try {
        t.rhs = base + 8.0 * modulus(field, delta, 1);
    } catch (const InvalidArgument&) {
        t.resolved = false;
        t.rhs = std::numeric_limits<double>::quiet_NaN();
        return t;
    }
    t.satisfied = t.lhs <= t.rhs;
    return t;
}

}  // namespace

AverageBarCheck average_bar_length_check(const ScalarField& field, const Barcode& barcode, double c1,
                                         const KorovkinKernel& kernel, const std::vector<std::size_t>& k_schedule) {
    if (!kernel.initialized()) throw StateError("Korovkin kernel is not initialised");
    const int n = grid_side(field);
    AverageBarCheck rep;
    rep.norm = grid_l2_norm(field.values(), n);
    rep.c1 = c1;
    rep.c0 = kernel.c0();
    const auto one = WeightFunction::one();
    const auto phi = phi_u(barcode, one);
    rep.finite_bars = phi.finite_bars;
    const double base = c1 * rep.norm;
    if (rep.finite_bars > 0) {
        rep.full = make_term(0, phi.value / (static_cast<double>(rep.finite_bars) + 1.0),
                             rep.c0 / std::sqrt(static_cast<double>(rep.finite_bars)), base, field);
    } else {
        rep.full.resolved = false;
    }
    for (std::size_t k : k_schedule) {
        if (k == 0) throw InvalidArgument("k schedule entries must be positive");
        rep.truncated.push_back(make_term(k, phi_u_k(barcode, one, k) / (static_cast<double>(k) + 1.0),
                                          rep.c0 / std::sqrt(static_cast<double>(k)), base, field));
    }
    return rep;
}

}  // namespace eigenbar
