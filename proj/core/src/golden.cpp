#include "eigenbar/golden.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "eigenbar/errors.hpp"
#include "eigenbar/functionals.hpp"
#include "eigenbar/korovkin.hpp"
#include "eigenbar/kunneth.hpp"
#include "eigenbar/trig_poly.hpp"
#include "json.hpp"

namespace eigenbar {

Barcode torus_eigenfunction_barcode(int n) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    const double a = 1.0 / std::numbers::pi;
    const int copies = 2 * n * n - 1;
    Barcode b;
    b.bars.push_back(Bar::essential(-a, 0));
    for (int i = 0; i < copies; ++i) b.bars.push_back(Bar::finite(-a, 0.0, 0));
    b.bars.push_back(Bar::essential(0.0, 1));
    b.bars.push_back(Bar::essential(0.0, 1));
    for (int i = 0; i < copies; ++i) b.bars.push_back(Bar::finite(0.0, a, 1));
    b.bars.push_back(Bar::essential(a, 2));
    return b;
}

bool GoldenReport::passed() const {
    for (const auto& e : entries)
        if (!e.passed) return false;
    return true;
}

std::string GoldenReport::to_json() const {
    nlohmann::json doc;
    doc["passed"] = passed();
    doc["entries"] = nlohmann::json::array();
    for (const auto& e : entries) doc["entries"].push_back({{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
    return doc.dump(2);
}

std::string GoldenReport::to_text() const {
    std::ostringstream out;
    for (const auto& e : entries) out << (e.passed ? "PASS " : "FAIL ") << e.name << ": " << e.detail << '\n';
    return out.str();
}

namespace {

GoldenEntry torus_entry(int n, const SurfacePtr& grid) {
    constexpr int kGrid = 256;
    const double h = 2.0 * std::numbers::pi / kGrid;
    const double a = 1.0 / std::numbers::pi;
    const auto field = torus_eigenfunction(n).to_field(grid);
    const auto b = compute_barcode(field);
    const std::size_t copies = static_cast<std::size_t>(2 * n * n - 1);
    bool ok = b.finite_count(0) == copies && b.finite_count(1) == copies && b.finite_count(2) == 0 &&
              b.infinite_count(0) == 1 && b.infinite_count(1) == 2 && b.infinite_count(2) == 1;
    double worst = 0.0;
    for (const auto& bar : b.bars) {
        const auto off = [&](double x) { return std::min({std::abs(x + a), std::abs(x), std::abs(x - a)}); };
        worst = std::max(worst, off(bar.birth));
        if (!bar.infinite) worst = std::max(worst, off(bar.death));
    }
    ok = ok && worst <= 5.0 * h;
    const double phi = phi_u(b, WeightFunction::one()).value;
    const double target = 4.0 / std::numbers::pi * n * n;
    const double rel = std::abs(phi - target) / target;
    ok = ok && rel <= 0.02;
    std::ostringstream d;
    d << "finite " << b.finite_count(0) << '/' << b.finite_count(1) << " (expected " << copies << "), infinite "
      << b.infinite_count(0) << ',' << b.infinite_count(1) << ',' << b.infinite_count(2) << ", endpoint error " << worst
      << " (limit " << 5.0 * h << "), Phi_1 " << phi << " vs " << target << " (rel " << rel << ")";
    return {"torus_eigenfunction_n" + std::to_string(n), ok, d.str()};
}

GoldenEntry kunneth_entry() {
    bool ok = true;
    std::ostringstream d;
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= 4; ++l) {
            const auto g = torus_sum_barcode(n, l);
            const auto census = torus_census(n, l);
            bool lengths = true;
            for (const auto& [key, mult] : g.entries()) {
                const Bar bar = GradedBarcode::bar_of(key);
                if (!bar.infinite && bar.length() != 2.0) lengths = false;
            }
            const double closed = torus_phi1(n, l);
            const double expected = 2.0 * n + std::pow(2.0 * l, n) - std::pow(2.0, n);
            const double phi = phi_u(g.to_barcode(), WeightFunction::one()).value;
            const bool here = closed == expected && phi == closed && g.infinite_count() == census.infinite &&
                              g.finite_count() == census.finite && lengths;
            if (!here) d << "mismatch at n=" << n << " l=" << l << "; ";
            ok = ok && here;
        }
    }
    if (ok) d << "n,l <= 4 exact";
    return {"kunneth_closed_form", ok, d.str()};
}

GoldenEntry circle_identity_entry() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(3, 60);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(size(rng)));
        for (auto& x : v) x = value(rng);
        const CircleField field(v);
        const double phi = phi_u(circle_barcode(field), WeightFunction::one()).value;
        const double var = field.total_variation();
        worst = std::max(worst, std::abs(phi - 0.5 * var) / std::max(1.0, var));
    }
    std::ostringstream d;
    d << "max relative |Phi_1 - Var/2| " << worst << " over 50 fields";
    return {"circle_variation_identity", worst <= 1e-12, d.str()};
}

GoldenEntry circle_bound_entry() {
    bool ok = true;
    double worst = 0.0;
    for (double lambda : {1.0, 4.0, 9.0, 25.0}) {
        const double bound = std::sqrt(std::numbers::pi / 2.0) * std::sqrt(lambda);
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto p = random_circle_poly(lambda, derive_seed(77, static_cast<std::uint64_t>(lambda), s));
            const double phi = 0.5 * p.total_variation();
            worst = std::max(worst, phi / bound);
            ok = ok && phi <= bound;
        }
    }
    std::ostringstream d;
    d << "max Phi_1 / (sqrt(pi/2) lambda^(1/2)) = " << worst << " over 200 polynomials";
    return {"circle_spectral_bound", ok, d.str()};
}

GoldenEntry kernel_entry() {
    const auto& k = shared_korovkin_kernel();
    constexpr double j01 = 2.404825557695773;  // tabulated value of the first zero of J0
    const bool ok = std::abs(k.j01() - j01) <= 1e-9 && std::abs(k.w(0.0) - 1.0) <= 1e-6 && k.w(1.0) == 0.0 &&
                    k.w(1.5) == 0.0 && std::abs(k.c0() - 2.0 * j01) <= 1e-8;
    std::ostringstream d;
    d << std::setprecision(16) << "j01 " << k.j01() << ", C0 " << k.c0() << ", W(0) " << k.w(0.0);
    return {"korovkin_kernel_constants", ok, d.str()};
}

GoldenEntry ndelta_entry() {
    const auto b = torus_eigenfunction_barcode(1);
    const auto small = n_delta(b, 0.1);
    const auto large = n_delta(b, 0.5);
    std::ostringstream d;
    d << "N_0.1 = " << small << ", N_0.5 = " << large;
    return {"significant_values_example", small == 8 && large == 4, d.str()};
}

GoldenEntry sort_entry() {
    const auto b = torus_eigenfunction_barcode(10);
    const auto w = sort_significant_bars(b, 0.1);
    const double k = static_cast<double>(w.kept);
    const double limit = static_cast<double>(w.scanned) + 4.0 * k * std::log2(k);
    const double t = static_cast<double>(w.scanned + w.comparisons);
    std::ostringstream d;
    d << "N " << w.scanned << ", K " << w.kept << ", T " << t << " <= " << limit;
    return {"sorting_witness", w.kept == 398 && t <= limit, d.str()};
}

GoldenEntry critical_entry(const SurfacePtr& grid) {
    bool ok = true;
    std::ostringstream d;
    for (int n = 1; n <= 3; ++n) {
        const auto field = perturb_to_simple(torus_eigenfunction(n).to_field(grid), 0);
        const auto b = compute_barcode(field);
        const auto crit = classify_critical_points(field);
        const std::size_t expected = 2 * b.finite_count() + 4;
        d << "n=" << n << ": " << crit.total << " vs " << expected << "; ";
        ok = ok && static_cast<std::size_t>(crit.total) == expected;
    }
    return {"critical_point_identity", ok, d.str()};
}

}  // namespace

GoldenReport run_golden_suite() {
    GoldenReport rep;
    const auto grid = build_flat_torus_grid(256);
    const auto guarded = [&rep](const std::string& name, auto&& fn) {
        try {
            rep.entries.push_back(fn());
        } catch (const std::exception& e) {
            rep.entries.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };
    for (int n = 1; n <= 3; ++n) guarded("torus_eigenfunction_n" + std::to_string(n), [&] { return torus_entry(n, grid); });
    guarded("kunneth_closed_form", kunneth_entry);
    guarded("circle_variation_identity", circle_identity_entry);
    guarded("circle_spectral_bound", circle_bound_entry);
    guarded("korovkin_kernel_constants", kernel_entry);
    guarded("significant_values_example", ndelta_entry);
    guarded("sorting_witness", sort_entry);
    guarded("critical_point_identity", [&] { return critical_entry(grid); });
    return rep;
}

}  // namespace eigenbar
