#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "eigenbar/bessel.hpp"
#include "eigenbar/errors.hpp"
#include "eigenbar/functionals.hpp"
#include "eigenbar/korovkin.hpp"
#include "eigenbar/modulus.hpp"
#include "eigenbar/quadrature.hpp"
#include "eigenbar/trig_poly.hpp"
#include "oracles.hpp"

using namespace eigenbar;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

TrigPoly sin_x() {
    TrigPoly f;
    f.set({1, 0}, {0.0, -0.5});
    return f;
}

// Order-1 modulus by checking every lattice shift in the disk.
double brute_first_modulus(const std::vector<double>& g, int n, double delta) {
    const double h = 2 * pi / n;
    const int reach = static_cast<int>(delta / h) + 1;
    double best = 0.0;
    for (int b = -reach; b <= reach; ++b)
        for (int a = -reach; a <= reach; ++a) {
            if ((a * h) * (a * h) + (b * h) * (b * h) > delta * delta * (1 + 1e-12)) continue;
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x)
                    best = std::max(best, std::abs(g[((y + b) % n + n) % n * n + ((x + a) % n + n) % n] - g[y * n + x]));
        }
    return best;
}

double sup_distance(const TrigPoly& f, const TrigPoly& h, int n) {
    const auto d = (f - h).sample_grid(n);
    double m = 0.0;
    for (double x : d) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("Parseval norms") {
    const auto s = sin_x();
    CHECK(s.evaluate(pi / 2, 0.3) == Approx(1.0));
    CHECK(l2_norm(s) == Approx(pi * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(laplacian_l2_norm(s) == Approx(l2_norm(s)).epsilon(1e-14));
    for (int n = 1; n <= 5; ++n) {
        const auto f = torus_eigenfunction(n);
        CHECK(l2_norm(f) == Approx(1.0).epsilon(1e-14));
        CHECK(laplacian_l2_norm(f) == Approx(2.0 * n * n).epsilon(1e-14));
        CHECK(f.evaluate(0.7, 1.1) == Approx(std::sin(n * 0.7) * std::cos(n * 1.1) / pi).epsilon(1e-14));
    }
}

TEST_CASE("Parseval matches grid integration") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto f = random_trig_poly(30, seed);
        const double grid = grid_l2_norm(f.sample_grid(64), 64);
        CHECK(std::abs(grid - l2_norm(f)) <= 1e-6 * l2_norm(f));
        f.check_symmetry();
    }
}

TEST_CASE("sampling F_lambda") {
    const auto one = sample_f_lambda(1.0, 8, 3);
    const std::set<TrigPoly::Freq> allowed{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::set<TrigPoly::Freq> seen;
    for (const auto& s : one)
        for (const auto& [v, c] : s.f.coefficients()) {
            CHECK(allowed.count(v) == 1);
            seen.insert(v);
        }
    CHECK(seen == allowed);
    CHECK(lattice_disk(1.0).size() == 5);
    CHECK(lattice_disk(2.0).size() == 9);

    for (double lambda : {1.0, 4.0, 10.0, 50.0}) {
        const auto samples = sample_f_lambda(lambda, 20, 11);
        for (const auto& s : samples) {
            CHECK(std::abs(s.norm - 1.0) <= 1e-12);
            CHECK(s.laplacian_norm <= lambda * (1 + 1e-12));
            CHECK(s.f.max_radius_sq() <= lambda);
            s.f.check_symmetry();
        }
        const auto again = sample_f_lambda(lambda, 20, 11);
        for (std::size_t i = 0; i < samples.size(); ++i)
            CHECK(samples[i].f.coefficients() == again[i].f.coefficients());
    }
    CHECK_THROWS_AS(sample_f_lambda(0.5, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(random_trig_poly(-1.0, 0), InvalidArgument);
}

TEST_CASE("discrete Fourier coefficients recover a polynomial") {
    const auto f = random_trig_poly(20, 4);
    const auto g = dft_coefficients(f.sample_grid(32), 32, 20);
    for (const auto& [v, c] : f.coefficients()) CHECK(std::abs(g.coefficient(v) - c) <= 1e-13);
    CHECK_THROWS_AS(dft_coefficients(std::vector<double>(10), 4, 2), InvalidArgument);
}

TEST_CASE("Bessel zero and kernel constants") {
    const double want = oracle::bisect_j01();
    CHECK(std::abs(bessel_j0_first_zero() - want) <= 1e-9);
    CHECK(std::abs(bessel_j0_first_zero() - 2.404825557695773) <= 1e-9);
    for (double x : {0.0, 0.5, 1.7, 4.0, 7.9})
        CHECK(std::abs(bessel_j0(x) - static_cast<double>(oracle::series_j0(x))) <= 1e-13);
    const auto& k = shared_korovkin_kernel();
    CHECK(std::abs(k.c0() - 4.809651115) <= 1e-8);
    CHECK(std::abs(k.w(0.0) - 1.0) <= 1e-6);
    CHECK_THROWS_AS(KorovkinKernel::create(100), InvalidArgument);
}

TEST_CASE("U is a non-negative unit eigenfunction on the disk of radius 1/2") {
    const auto& k = shared_korovkin_kernel();
    for (double r = 0.0; r <= 0.5; r += 0.01) CHECK(k.u(r) >= 0.0);
    CHECK(std::abs(k.u(0.5)) <= 1e-12);
    CHECK(k.u(0.6) == 0.0);
    const double mass = adaptive_simpson([&](double r) { return k.u(r) * k.u(r) * 2 * pi * r; }, 0.0, 0.5, 1e-13);
    CHECK(mass == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("W matches a Cartesian convolution") {
    const auto& k = shared_korovkin_kernel();
    const std::vector<int> steps{0, 40, 100, 200, 300, 380};
    const auto raw = oracle::cartesian_w(400, steps);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double rho = steps[i] / 400.0;
        CHECK(std::abs(k.w(rho) - raw[i] / raw[0]) <= 1e-3);
        CHECK(std::abs(k.w(rho) - k.w_direct(rho)) <= 1e-6);
    }
    for (double rho = 0.0; rho <= 1.5; rho += 0.003) {
        CHECK(std::abs(k.w(rho)) <= 1.0 + 1e-12);
        if (rho >= 1.0) CHECK(k.w(rho) == 0.0);
    }
}

TEST_CASE("Korovkin mean") {
    const auto& k = shared_korovkin_kernel();
    TrigPoly c;
    c.set({0, 0}, 2.5);
    const auto hc = korovkin_mean(c, 9.0, k);
    CHECK(std::abs(hc.coefficient({0, 0}).real() - 2.5) <= 2.5e-6);

    const auto f = random_trig_poly(60, 8);
    for (double lambda : {4.0, 16.0, 30.0}) {
        const auto h = korovkin_mean(f, lambda, k);
        for (const auto& [v, coef] : h.coefficients()) {
            if (v.first * v.first + v.second * v.second > lambda) CHECK(std::abs(coef) == 0.0);
        }
        CHECK(l2_norm(h) <= l2_norm(f));
        const auto from_grid = korovkin_mean(f.sample_grid(64), 64, lambda, k);
        for (const auto& [v, coef] : h.coefficients()) CHECK(std::abs(from_grid.coefficient(v) - coef) <= 1e-12);
    }

    const auto f1 = torus_eigenfunction(1);
    const auto h1 = korovkin_mean(f1, 8.0, k);
    const double w2 = modulus(f1.sample_grid(256), 256, k.c0() / std::sqrt(8.0), 2);
    CHECK(sup_distance(f1, h1, 256) <= 2 * w2);

    CHECK_THROWS_AS(korovkin_mean(f, 4.0, KorovkinKernel{}), StateError);
    CHECK_THROWS_AS(korovkin_mean(f, 0.0, k), InvalidArgument);
}

TEST_CASE("approximation inequality on random polynomials") {
    const auto& k = shared_korovkin_kernel();
    for (double lambda : {4.0, 16.0, 64.0})
        for (std::uint64_t s = 0; s < 4; ++s) {
            const auto f = random_trig_poly(lambda, s + 100);
            const auto h = korovkin_mean(f, lambda, k);
            CHECK(l2_norm(h) <= l2_norm(f));
            const double w2 = modulus(f.sample_grid(128), 128, k.c0() / std::sqrt(lambda), 2);
            CHECK(sup_distance(f, h, 128) <= 2 * w2);
        }
}

TEST_CASE("moduli of continuity and smoothness") {
    const auto g = build_flat_torus_grid(64);
    const auto s = sample_field(g, [](double x, double) { return std::sin(x); });
    CHECK(modulus(s, 0.0, 1) == 0.0);
    CHECK(modulus(s, pi, 1) == Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(modulus(s, 0.1, 1), InvalidArgument);
    CHECK_THROWS_AS(modulus(s, -1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(modulus(s, 1.0, 0), InvalidArgument);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto small = random_trig_poly(12, seed).sample_grid(20);
        for (double d : {1.3, 2.0, 3.3, 5.0, 9.0}) CHECK(modulus(small, 20, d, 1) == brute_first_modulus(small, 20, d));
    }

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto grid = random_trig_poly(25, seed).sample_grid(96);
        double prev1 = 0.0, prev2 = 0.0;
        for (double d = 0.3; d <= 3.0; d += 0.3) {
            const double w1 = modulus(grid, 96, d, 1);
            const double w2 = modulus(grid, 96, d, 2);
            CHECK(w2 <= 2 * w1 * (1 + 1e-12));
            CHECK(w1 >= prev1);
            CHECK(w2 >= prev2);
            CHECK(modulus(grid, 96, d, 4) <= 4 * w2 * (1 + 1e-12));
            prev1 = w1;
            prev2 = w2;
        }
    }
}

TEST_CASE("average bar length check") {
    const auto& k = shared_korovkin_kernel();
    const auto g = build_flat_torus_grid(256);
    const auto f2 = torus_eigenfunction(2).to_field(g);
    const auto rep = average_bar_length_check(f2, compute_barcode(f2), 0.1, k);
    CHECK(rep.finite_bars == 14);
    CHECK(rep.full.lhs == Approx(16 / (15 * pi)).epsilon(1e-6));
    CHECK(rep.full.satisfied);
    REQUIRE(rep.truncated.size() == 4);
    CHECK(rep.truncated[0].k == 1);
    CHECK(rep.truncated[0].lhs == Approx((2 / pi + 1 / pi) / 2).epsilon(1e-6));
    for (const auto& t : rep.truncated) CHECK(t.satisfied);

    const auto flat = torus_eigenfunction(1).scaled(1e-9).to_field(g);
    const auto r = average_bar_length_check(flat, compute_barcode(flat), 0.1, k);
    CHECK(r.full.lhs <= 1e-9);
    CHECK(r.full.resolved);
    CHECK(r.full.satisfied);

    const auto c = average_bar_length_check(f2, compute_barcode(f2), 0.1, k, {});
    CHECK(c.truncated.empty());
    CHECK_THROWS_AS(average_bar_length_check(f2, compute_barcode(f2), 0.1, k, {0}), InvalidArgument);
}

TEST_CASE("circle polynomials satisfy the one-dimensional bound") {
    for (double lambda : {1.0, 4.0, 9.0, 25.0})
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto p = random_circle_poly(lambda, s);
            CHECK(p.l2_norm() == Approx(1.0).epsilon(1e-12));
            const double var = p.total_variation();
            CHECK(var / 2 <= std::sqrt(pi / 2) * std::sqrt(lambda) * (1 + 1e-12));
            const auto b = circle_barcode(p.sample(4000));
            CHECK(phi_u(b, WeightFunction::one()).value == Approx(var / 2).epsilon(1e-4));
        }
}
