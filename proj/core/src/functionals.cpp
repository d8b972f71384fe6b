#include "eigenbar/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

struct Range {
    double lo;
    double hi;
};

Range range_of(const Barcode& b) {
    if (b.empty()) return {0.0, 0.0};
    return {b.min_endpoint(), b.max_endpoint()};
}

double range_integral(const Barcode& b, const WeightFunction& u, const Range& r) {
    if (b.empty()) return 0.0;
    // With boundary the range is (min f, 0]; min f > 0 cannot occur for fields vanishing on it.
    return b.boundary ? u.integral(r.lo, std::max(r.lo, 0.0)) : u.integral(r.lo, r.hi);
}

}  // namespace

FunctionalReport phi_u(const Barcode& barcode, const WeightFunction& u) {
    FunctionalReport rep;
    const Range r = range_of(barcode);
    if (!barcode.empty()) u.check_nonnegative(r.lo, std::max(r.hi, barcode.boundary ? 0.0 : r.hi));
    rep.range_term = range_integral(barcode, u, r);
    rep.value = rep.range_term;
    for (int i = 0; i < static_cast<int>(barcode.bars.size()); ++i) {
        const auto& b = barcode.bars[i];
        if (b.infinite) continue;
        const double term = u.integral(b.birth, b.death);
        rep.bar_terms.push_back(term);
        rep.bar_indices.push_back(i);
        rep.value += term;
    }
    rep.finite_bars = rep.bar_terms.size();
    const double max_u = barcode.empty() ? 0.0 : u.max_on(r.lo, r.hi);
    const double n = static_cast<double>(rep.finite_bars);
    rep.lipschitz_constant = barcode.boundary ? (2.0 * n + 1.0) * max_u : 2.0 * (n + 1.0) * max_u;
    return rep;
}

double phi_u_k(const Barcode& barcode, const WeightFunction& u, std::size_t k) {
    const auto rep = phi_u(barcode, u);
    std::vector<std::size_t> order(rep.bar_terms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (rep.bar_terms[x] != rep.bar_terms[y]) return rep.bar_terms[x] > rep.bar_terms[y];
        const auto& bx = barcode.bars[rep.bar_indices[x]];
        const auto& by = barcode.bars[rep.bar_indices[y]];
        return std::pair(bx.birth, bx.death) < std::pair(by.birth, by.death);
    });
    double value = rep.range_term;
    for (std::size_t i = 0; i < std::min(k, order.size()); ++i) value += rep.bar_terms[order[i]];
    return value;
}

double truncated_lipschitz_constant(std::size_t k, bool boundary, double max_u) {
    const double kk = static_cast<double>(k);
    return (boundary ? 2.0 * kk + 1.0 : 2.0 * kk + 2.0) * max_u;
}

std::size_t n_delta(const Barcode& barcode, double delta) {
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    std::map<double, std::size_t> multiplicity;
    for (const auto& b : barcode.bars) {
        if (b.length() < delta) continue;
        ++multiplicity[b.birth];
        if (!b.infinite) ++multiplicity[b.death];
    }
    std::size_t total = 0;
    for (const auto& [alpha, m] : multiplicity) total += m;
    return total;
}

SortWitness sort_significant_bars(const Barcode& barcode, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    SortWitness w;
    for (const auto& b : barcode.bars) {
        ++w.scanned;
        if (!b.infinite && b.length() >= eps) w.lengths.push_back(b.length());
    }
    w.kept = w.lengths.size();
    std::size_t count = 0;
    std::stable_sort(w.lengths.begin(), w.lengths.end(), [&count](double a, double b) {
        ++count;
        return a > b;
    });
    w.comparisons = count;
    return w;
}

double approx_lower_bound(const Barcode& barcode, double lambda, double kappa) {
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
    const auto rep = phi_u(barcode, WeightFunction::one());
    const double n = static_cast<double>(rep.finite_bars);
    const double denom = barcode.boundary ? 2.0 * n + 1.0 : 2.0 * (n + 1.0);
    return (rep.value - kappa * (lambda + 1.0)) / denom;
}

double approx_lower_bound_circle(double total_variation, std::size_t critical_points, double lambda) {
    if (critical_points == 0) throw InvalidArgument("a circle function has at least two critical points");
    if (lambda < 0.0) throw InvalidArgument("lambda must be non-negative");
    return (0.5 * total_variation - std::sqrt(std::numbers::pi / 2.0) * std::sqrt(lambda)) /
           static_cast<double>(critical_points);
}

double eigenvalue_lower_bound(std::size_t bars, double length, double kappa) {
    if (!(length > 0.0)) throw InvalidArgument("bar length must be positive");
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
    return (static_cast<double>(bars) + 1.0) * length / kappa - 1.0;
}

NonMorseResult phi_nonmorse(const ScalarField& field, const WeightFunction& u, std::uint64_t seed, double tol) {
    const auto barcode = compute_barcode(perturb_to_simple(field, seed));
    NonMorseResult res;
    res.finite_bars = barcode.finite_count();
    double prev = phi_u_k(barcode, u, 0);
    res.value = prev;
    for (std::size_t k = 1; k <= res.finite_bars; ++k) {
        const double cur = phi_u_k(barcode, u, k);
        res.value = cur;
        res.k = k;
        if (cur - prev < tol) break;
        prev = cur;
    }
    return res;
}

}  // namespace eigenbar
