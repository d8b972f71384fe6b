#include "eigenbar/kunneth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

GradedBarcode::Key key_of(const Bar& b) { return {b.degree, b.infinite, b.birth, b.infinite ? 0.0 : b.death}; }

std::uint64_t ipow(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void check_nl(int n, int l) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    if (l < 1) throw InvalidArgument("l must be at least 1");
}

}  // namespace

void GradedBarcode::add(const Bar& bar, std::uint64_t multiplicity) {
    if (multiplicity == 0) return;
    if (!bar.infinite && !(bar.birth < bar.death)) throw InvalidArgument("bar needs birth < death");
    entries_[key_of(bar)] += multiplicity;
}

Bar GradedBarcode::bar_of(const Key& key) {
    const auto& [degree, infinite, birth, death] = key;
    return infinite ? Bar::essential(birth, degree) : Bar::finite(birth, death, degree);
}

GradedBarcode GradedBarcode::from_barcode(const Barcode& barcode) {
    GradedBarcode g;
    for (const auto& b : barcode.bars) g.add(b);
    return g;
}

Barcode GradedBarcode::to_barcode() const {
    Barcode out;
    for (const auto& [key, mult] : entries_)
        for (std::uint64_t i = 0; i < mult; ++i) out.bars.push_back(bar_of(key));
    return out;
}

std::uint64_t GradedBarcode::infinite_count() const {
    std::uint64_t n = 0;
    for (const auto& [key, mult] : entries_)
        if (std::get<1>(key)) n += mult;
    return n;
}

std::uint64_t GradedBarcode::finite_count() const {
    std::uint64_t n = 0;
    for (const auto& [key, mult] : entries_)
        if (!std::get<1>(key)) n += mult;
    return n;
}

std::uint64_t GradedBarcode::count(int degree, bool infinite) const {
    std::uint64_t n = 0;
    for (const auto& [key, mult] : entries_)
        if (std::get<0>(key) == degree && std::get<1>(key) == infinite) n += mult;
    return n;
}

int GradedBarcode::top_degree() const {
    int top = -1;
    for (const auto& [key, mult] : entries_) top = std::max(top, std::get<0>(key));
    return top;
}

GradedBarcode barcode_product(const GradedBarcode& a, const GradedBarcode& b) {
    GradedBarcode out;
    for (const auto& [ka, ma] : a.entries()) {
        const Bar x = GradedBarcode::bar_of(ka);
        for (const auto& [kb, mb] : b.entries()) {
            const Bar y = GradedBarcode::bar_of(kb);
            const std::uint64_t m = ma * mb;
            const int deg = x.degree + y.degree;
            if (x.infinite && y.infinite) {
                out.add(Bar::essential(x.birth + y.birth, deg), m);
            } else if (x.infinite) {
                out.add(Bar::finite(x.birth + y.birth, x.birth + y.death, deg), m);
            } else if (y.infinite) {
                out.add(Bar::finite(x.birth + y.birth, x.death + y.birth, deg), m);
            } else {
                const double lo = x.birth + y.birth;
                const double mid_a = std::min(x.birth + y.death, x.death + y.birth);
                const double mid_b = std::max(x.birth + y.death, x.death + y.birth);
                const double hi = x.death + y.death;
                // Both pieces are nonempty for nonempty factors; the guards keep the
                // half-open convention if a caller feeds degenerate input.
                if (lo < mid_a) out.add(Bar::finite(lo, mid_a, deg), m);
                if (mid_b < hi) out.add(Bar::finite(mid_b, hi, deg + 1), m);
            }
        }
    }
    return out;
}

GradedBarcode circle_sine_barcode(int l) {
    if (l < 1) throw InvalidArgument("l must be at least 1");
    GradedBarcode g;
    g.add(Bar::essential(-1.0, 0));
    g.add(Bar::finite(-1.0, 1.0, 0), static_cast<std::uint64_t>(l - 1));
    g.add(Bar::essential(1.0, 1));
    return g;
}

GradedBarcode torus_sum_barcode(int n, int l) {
    check_nl(n, l);
    const auto factor = circle_sine_barcode(l);
    GradedBarcode acc = factor;
    for (int i = 1; i < n; ++i) acc = barcode_product(acc, factor);
    return acc;
}

double torus_phi1(int n, int l) {
    check_nl(n, l);
    const std::uint64_t value = 2 * static_cast<std::uint64_t>(n) + ipow(2 * static_cast<std::uint64_t>(l), n) - ipow(2, n);
    return static_cast<double>(value);
}

TorusCensus torus_census(int n, int l) {
    check_nl(n, l);
    return {ipow(2, n), (ipow(2 * static_cast<std::uint64_t>(l), n) - ipow(2, n)) / 2};
}

double rescaled_phi1_leading(int n) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    return std::sqrt(2.0) * std::pow(2.0, n) / (n * std::pow(2.0 * std::numbers::pi, 0.5 * n));
}

double rescaled_phi1_constant(int n) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    return std::sqrt(2.0) * (2.0 * n - std::pow(2.0, n)) / (n * std::pow(2.0 * std::numbers::pi, 0.5 * n));
}

double rescaled_phi1(int n, int l) {
    check_nl(n, l);
    return std::sqrt(2.0) / (n * std::pow(2.0 * std::numbers::pi, 0.5 * n)) *
           (std::pow(2.0, n) * std::pow(static_cast<double>(l), n) + 2.0 * n - std::pow(2.0, n));
}

}  // namespace eigenbar
