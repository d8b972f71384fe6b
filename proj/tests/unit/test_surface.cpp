#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "eigenbar/errors.hpp"
#include "eigenbar/persistence.hpp"
#include "eigenbar/surface.hpp"
#include "eigenbar/trig_poly.hpp"

using namespace eigenbar;

namespace {

int euler_of(const SimplicialSurface& s) {
    return static_cast<int>(s.vertex_count()) - static_cast<int>(s.edge_count()) + static_cast<int>(s.triangle_count());
}

}  // namespace

TEST_CASE("torus grid has the periodic vertex/edge/triangle counts") {
    const auto g3 = build_flat_torus_grid(3);
    CHECK(g3->vertex_count() == 9);
    CHECK(g3->edge_count() == 27);
    CHECK(g3->triangle_count() == 18);
    CHECK(euler_of(*g3) == 0);
    const auto g4 = build_flat_torus_grid(4);
    CHECK(g4->vertex_count() == 16);
    CHECK(g4->edge_count() == 48);
    CHECK(g4->triangle_count() == 32);
    CHECK(g4->betti() == Betti{1, 2, 1});
    CHECK_FALSE(g4->has_boundary());
    CHECK_THROWS_AS(build_flat_torus_grid(2), InvalidArgument);
}

TEST_CASE("torus grid chart coordinates") {
    const auto g = build_flat_torus_grid(8);
    const auto chart = g->chart();
    const int v = 3 * 8 + 5;  // (i, j) = (5, 3)
    CHECK(chart[v][0] == doctest::Approx(2 * std::numbers::pi * 5 / 8));
    CHECK(chart[v][1] == doctest::Approx(2 * std::numbers::pi * 3 / 8));
}

TEST_CASE("Euler formula matches declared Betti numbers on every builder") {
    std::vector<SurfacePtr> surfaces{build_flat_torus_grid(5), build_flat_torus_grid(17), build_disk_mesh(1, 3),
                                     build_disk_mesh(4, 9),    build_annulus_mesh(2, 3),  build_annulus_mesh(5, 11),
                                     build_octahedral_sphere(0), build_octahedral_sphere(3)};
    for (const auto& s : surfaces) CHECK(euler_of(*s) == s->betti().euler());
    CHECK(build_disk_mesh(3, 6)->betti() == Betti{1, 0, 0});
    CHECK(build_annulus_mesh(3, 6)->betti() == Betti{1, 1, 0});
    CHECK(build_octahedral_sphere(2)->betti() == Betti{1, 0, 1});
}

TEST_CASE("edges lie in two triangles, or one on the boundary") {
    for (const auto& s : {build_flat_torus_grid(6), build_disk_mesh(3, 7), build_annulus_mesh(3, 5)}) {
        std::vector<int> uses(s->edge_count(), 0);
        for (const auto& te : s->triangle_edges())
            for (int e : te) ++uses[e];
        for (int e = 0; e < static_cast<int>(s->edge_count()); ++e)
            CHECK(uses[e] == (s->is_boundary_edge(e) ? 1 : 2));
    }
}

TEST_CASE("from_triangles rejects non-manifold input") {
    // Three triangles on one edge.
    CHECK_THROWS_AS(SimplicialSurface::from_triangles(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), InvalidArgument);
    CHECK_THROWS_AS(SimplicialSurface::from_triangles(3, {{0, 1, 5}}), InvalidArgument);
    CHECK_THROWS_AS(SimplicialSurface::from_triangles(3, {{0, 1, 2}, {0, 1, 2}}), InvalidArgument);
    // Two triangles touching at a vertex only: link of vertex 0 is two paths.
    CHECK_THROWS_AS(SimplicialSurface::from_triangles(5, {{0, 1, 2}, {0, 3, 4}}), InvalidArgument);
}

TEST_CASE("minimal 7-vertex torus is accepted with torus Betti numbers") {
    std::vector<Triangle> tris;
    for (int i = 0; i < 7; ++i) {
        Triangle a{i, (i + 1) % 7, (i + 3) % 7};
        Triangle b{i, (i + 2) % 7, (i + 3) % 7};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        tris.push_back(a);
        tris.push_back(b);
    }
    const auto s = SimplicialSurface::from_triangles(7, tris);
    CHECK(s.edge_count() == 21);
    CHECK(s.betti() == Betti{1, 2, 1});
}

TEST_CASE("sample_field evaluates at chart coordinates") {
    const auto g = build_flat_torus_grid(4);
    const auto f = sample_field(g, [](double x, double) { return std::sin(x); });
    for (int j = 0; j < 4; ++j) {
        CHECK(f.value(j * 4 + 0) == doctest::Approx(0.0));
        CHECK(f.value(j * 4 + 1) == doctest::Approx(1.0));
        CHECK(f.value(j * 4 + 2) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
        CHECK(f.value(j * 4 + 3) == doctest::Approx(-1.0));
    }
    const auto c = sample_field(g, [](double, double) { return 5.0; });
    for (double v : c.values()) CHECK(v == 5.0);
}

TEST_CASE("sample_field forces boundary vertices to zero and needs a chart") {
    const auto d = build_disk_mesh(3, 8);
    const auto f = sample_field(d, [](double, double) { return 7.0; });
    for (int v = 0; v < static_cast<int>(d->vertex_count()); ++v)
        CHECK(f.value(v) == (d->is_boundary_vertex(v) ? 0.0 : 7.0));
    CHECK_THROWS_AS(sample_field(build_octahedral_sphere(1), [](double, double) { return 0.0; }), Unsupported);
}

TEST_CASE("ScalarField validates length, finiteness and the boundary convention") {
    const auto d = build_disk_mesh(2, 5);
    CHECK_THROWS_AS(ScalarField(d, std::vector<double>(3, 0.0)), InvalidArgument);
    std::vector<double> v(d->vertex_count(), 0.0);
    v[0] = NAN;
    CHECK_THROWS_AS(ScalarField(d, v), InvalidArgument);
    v.assign(d->vertex_count(), 1.0);
    CHECK_THROWS_AS(ScalarField(d, v), InvalidArgument);
    CHECK_THROWS_AS(CircleField({1.0, 2.0}), InvalidArgument);
}

TEST_CASE("perturb_to_simple leaves distinct values unchanged") {
    const auto g = build_flat_torus_grid(16);
    const auto f = random_trig_poly(8, 3).to_field(g);
    REQUIRE_FALSE(f.has_ties());
    const auto p = perturb_to_simple(f, 17);
    CHECK(std::equal(p.values().begin(), p.values().end(), f.values().begin()));
}

TEST_CASE("perturb_to_simple on a constant field gives distinct values near the constant") {
    const auto g = build_flat_torus_grid(10);
    const ScalarField f(g, std::vector<double>(g->vertex_count(), 3.0));
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const auto p = perturb_to_simple(f, seed);
        CHECK_FALSE(p.has_ties());
        for (double x : p.values()) CHECK(std::abs(x - 3.0) < 3e-9);
    }
}

TEST_CASE("perturb_to_simple separates a tied pair within half the gap") {
    const auto g = build_flat_torus_grid(3);
    std::vector<double> v{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    v[4] = 2.0;  // tie with vertex 2; minimal nonzero gap 1
    const ScalarField f(g, v);
    const auto p = perturb_to_simple(f, 5);
    CHECK(p.value(2) != p.value(4));
    CHECK(std::abs(p.value(2) - 2.0) < 0.5);
    CHECK(std::abs(p.value(4) - 2.0) < 0.5);
    CHECK_FALSE(p.has_ties());
}

TEST_CASE("perturb_to_simple preserves strict order, is deterministic and idempotent") {
    const auto g = build_flat_torus_grid(24);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> level(0, 9);
    std::vector<double> v(g->vertex_count());
    for (auto& x : v) x = 0.1 * level(rng);
    const ScalarField f(g, v);
    for (std::uint64_t seed : {0ULL, 8ULL}) {
        const auto p = perturb_to_simple(f, seed);
        CHECK_FALSE(p.has_ties());
        for (std::size_t a = 0; a < v.size(); a += 7)
            for (std::size_t b = 0; b < v.size(); b += 11)
                if (v[a] < v[b]) CHECK(p.value(static_cast<int>(a)) < p.value(static_cast<int>(b)));
        const auto again = perturb_to_simple(f, seed);
        CHECK(std::equal(p.values().begin(), p.values().end(), again.values().begin()));
        const auto twice = perturb_to_simple(p, seed);
        CHECK(std::equal(p.values().begin(), p.values().end(), twice.values().begin()));
    }
}

TEST_CASE("perturb_to_simple with seed 0 follows the field's tiebreak order") {
    const auto g = build_flat_torus_grid(12);
    const ScalarField f(g, std::vector<double>(g->vertex_count(), 0.0));
    const auto p = perturb_to_simple(f, 0);
    for (int v = 1; v < static_cast<int>(g->vertex_count()); ++v) CHECK(p.value(v - 1) < p.value(v));
}

TEST_CASE("perturb_to_simple keeps boundary vertices at zero") {
    const auto d = build_disk_mesh(3, 6);
    const ScalarField f(d, std::vector<double>(d->vertex_count(), 0.0));
    const auto p = perturb_to_simple(f, 3);
    std::set<double> interior;
    for (int v = 0; v < static_cast<int>(d->vertex_count()); ++v) {
        if (d->is_boundary_vertex(v))
            CHECK(p.value(v) == 0.0);
        else
            interior.insert(p.value(v));
    }
    CHECK(interior.size() == d->vertex_count() - 6);
}

TEST_CASE("f_1 on the 256 grid has 8 PL critical points, 2|B'| + 4") {
    const auto g = build_flat_torus_grid(256);
    const auto f = perturb_to_simple(torus_eigenfunction(1).to_field(g), 0);
    const auto crit = classify_critical_points(f);
    CHECK(crit.minima.size() == 2);
    CHECK(crit.maxima.size() == 2);
    CHECK(crit.saddle_multiplicity() == 4);
    CHECK(crit.total == 8);
    CHECK(static_cast<std::size_t>(crit.total) == 2 * compute_barcode(f).finite_count() + 4);
}

TEST_CASE("radial field on a disk has a single interior minimum") {
    const auto d = build_disk_mesh(6, 12);
    const auto f = sample_field(d, [](double x, double y) { return x * x + y * y - 1.0; });
    const auto crit = classify_critical_points(perturb_to_simple(f, 0));
    CHECK(crit.minima.size() == 1);
    CHECK(crit.maxima.empty());
    CHECK(crit.saddles.empty());
}

TEST_CASE("sin x has critical circles: perturbation leaves non-isolated critical vertices") {
    const auto g = build_flat_torus_grid(32);
    const auto f = sample_field(g, [](double x, double) { return std::sin(x); });
    CHECK_THROWS_AS(classify_critical_points(f), PreconditionViolation);
    const auto crit = classify_critical_points(perturb_to_simple(f, 0));
    CHECK(crit.non_isolated);
}

TEST_CASE("PL Morse relation: minima - saddles + maxima = Euler characteristic") {
    const auto g = build_flat_torus_grid(48);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto f = random_trig_poly(18, s).to_field(g);
        const auto crit = classify_critical_points(perturb_to_simple(f, 0));
        CHECK(static_cast<int>(crit.minima.size()) - crit.saddle_multiplicity() + static_cast<int>(crit.maxima.size()) ==
              0);
    }
    const auto sphere = build_octahedral_sphere(4);
    const auto h = sample_field_embedded(sphere, [](double x, double y, double z) { return x * y + 0.3 * z * z * z; });
    const auto crit = classify_critical_points(perturb_to_simple(h, 2));
    CHECK(static_cast<int>(crit.minima.size()) - crit.saddle_multiplicity() + static_cast<int>(crit.maxima.size()) == 2);
}
