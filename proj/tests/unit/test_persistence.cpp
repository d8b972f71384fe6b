#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "eigenbar/bottleneck.hpp"
#include "eigenbar/errors.hpp"
#include "eigenbar/golden.hpp"
#include "eigenbar/persistence.hpp"
#include "eigenbar/trig_poly.hpp"
#include "oracles.hpp"

using namespace eigenbar;

namespace {

SurfacePtr tetrahedron() {
    return share(SimplicialSurface::from_triangles(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
}

ScalarField random_field(const SurfacePtr& s, std::uint64_t seed, bool coarse) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    std::uniform_int_distribution<int> level(-2, 2);
    std::vector<double> v(s->vertex_count());
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        v[i] = s->is_boundary_vertex(i) ? 0.0 : (coarse ? level(rng) : real(rng));
    return ScalarField(s, v);
}

}  // namespace

TEST_CASE("lower-star filtration orders a tetrahedron by highest vertex, then dimension") {
    const ScalarField f(tetrahedron(), {1.0, 2.0, 3.0, 4.0});
    const auto filt = lower_star_filtration(f);
    REQUIRE(filt.entries.size() == 14);
    const auto& s = f.surface();
    std::vector<std::string> names;
    for (const auto& e : filt.entries) {
        std::string n;
        if (e.dim == 0) n = "v" + std::to_string(e.id + 1);
        if (e.dim == 1) n = "e" + std::to_string(s.edges()[e.id][0] + 1) + std::to_string(s.edges()[e.id][1] + 1);
        if (e.dim == 2) {
            const auto t = s.triangles()[e.id];
            n = "t" + std::to_string(t[0] + 1) + std::to_string(t[1] + 1) + std::to_string(t[2] + 1);
        }
        names.push_back(n);
    }
    const std::vector<std::string> first{"v1", "v2", "e12", "v3", "e13", "e23", "t123"};
    CHECK(std::vector<std::string>(names.begin(), names.begin() + 7) == first);
    for (std::size_t i = 1; i < filt.entries.size(); ++i) CHECK(filt.entries[i - 1].value <= filt.entries[i].value);
}

TEST_CASE("filtration puts faces before cofaces") {
    const auto g = build_flat_torus_grid(12);
    const auto f = random_trig_poly(8, 1).to_field(g);
    const auto filt = lower_star_filtration(f);
    std::vector<int> vpos(g->vertex_count()), epos(g->edge_count());
    for (int i = 0; i < static_cast<int>(filt.entries.size()); ++i) {
        const auto& e = filt.entries[i];
        if (e.dim == 0) vpos[e.id] = i;
        if (e.dim == 1) epos[e.id] = i;
    }
    for (int i = 0; i < static_cast<int>(filt.entries.size()); ++i) {
        const auto& e = filt.entries[i];
        if (e.dim == 1)
            for (int v : g->edges()[e.id]) CHECK(vpos[v] < i);
        if (e.dim == 2)
            for (int ed : g->triangle_edges()[e.id]) CHECK(epos[ed] < i);
    }
}

TEST_CASE("f_1 and f_2 on the 256 grid reproduce the eigenfunction barcodes") {
    const auto g = build_flat_torus_grid(256);
    const double h = 2 * std::numbers::pi / 256;
    for (int n : {1, 2}) {
        const auto b = compute_barcode(torus_eigenfunction(n).to_field(g));
        const std::size_t copies = 2 * n * n - 1;
        CHECK(b.finite_count(0) == copies);
        CHECK(b.finite_count(1) == copies);
        CHECK(b.finite_count(2) == 0);
        CHECK(b.infinite_count(0) == 1);
        CHECK(b.infinite_count(1) == 2);
        CHECK(b.infinite_count(2) == 1);
        CHECK(bottleneck_distance(b, torus_eigenfunction_barcode(n)) <= 5 * h);
        validate_barcode(b, g->betti());
    }
}

TEST_CASE("radial field on a disk: one essential class, nothing else") {
    const auto d = build_disk_mesh(8, 16);
    const auto f = sample_field(d, [](double x, double y) { return x * x + y * y - 1.0; });
    const auto b = compute_barcode(f);
    REQUIRE(b.bars.size() == 1);
    CHECK(b.bars[0] == Bar::essential(-1.0, 0));
    CHECK(b.boundary);
    CHECK(spectral_invariants(b)[2].empty());
}

TEST_CASE("circle barcodes") {
    const auto b = circle_barcode(CircleField({0, 2, 1, 3})).canonical();
    REQUIRE(b.bars.size() == 3);
    CHECK(b.bars[0] == Bar::finite(1, 2, 0));
    CHECK(b.bars[1] == Bar::essential(0, 0));
    CHECK(b.bars[2] == Bar::essential(3, 1));

    const auto m = circle_barcode(CircleField({0, 1, 2, 3})).canonical();
    REQUIRE(m.bars.size() == 2);
    CHECK(m.bars[0] == Bar::essential(0, 0));
    CHECK(m.bars[1] == Bar::essential(3, 1));

    std::vector<double> v(300);
    for (int i = 0; i < 300; ++i) v[i] = std::sin(3 * 2 * std::numbers::pi * i / 300.0);
    Barcode expected;
    expected.bars = {Bar::essential(-1, 0), Bar::finite(-1, 1, 0), Bar::finite(-1, 1, 0), Bar::essential(1, 1)};
    const auto s = circle_barcode(CircleField(v));
    CHECK(s.finite_count() == 2);
    CHECK(bottleneck_distance(s, expected) <= 1e-3);
}

TEST_CASE("spectral invariants") {
    const auto inv = spectral_invariants(torus_eigenfunction_barcode(1));
    REQUIRE(inv.size() == 3);
    CHECK(inv[0] == std::vector<double>{-1 / std::numbers::pi});
    CHECK(inv[1] == std::vector<double>{0.0, 0.0});
    CHECK(inv[2] == std::vector<double>{1 / std::numbers::pi});
    const auto c = spectral_invariants(circle_barcode(CircleField({0, 2, 1, 3})));
    CHECK(c[0] == std::vector<double>{0.0});
    CHECK(c[1] == std::vector<double>{3.0});
}

TEST_CASE("small meshes match the rational sublevel-homology oracle") {
    const std::vector<SurfacePtr> meshes{oracle::seven_vertex_torus(), build_flat_torus_grid(3), build_disk_mesh(2, 5),
                                         build_annulus_mesh(3, 4), tetrahedron(), build_octahedral_sphere(0)};
    for (const auto& m : meshes)
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const auto f = random_field(m, seed, seed % 2 == 1);
            const auto got = compute_barcode(f).canonical();
            const auto want = oracle::rational_sublevel_barcode(oracle::complex_of(f));
            CHECK(got.bars == want.bars);
            validate_barcode(got, m->betti());
        }
}

TEST_CASE("circle barcodes match the oracle, ties included") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> len(3, 11), level(0, 4);
        std::uniform_real_distribution<double> real(-1, 1);
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        for (auto& x : v) x = trial % 2 ? level(rng) : real(rng);
        const auto got = circle_barcode(CircleField(v)).canonical();
        const auto want = oracle::rational_sublevel_barcode(oracle::circle_complex(v));
        CHECK(got.bars == want.bars);
    }
}

TEST_CASE("constant field: only essential bars at the constant") {
    const auto g = build_flat_torus_grid(6);
    const auto b = compute_barcode(ScalarField(g, std::vector<double>(36, 2.5))).canonical();
    CHECK(b.finite_count() == 0);
    CHECK(b.infinite_count() == 4);
    for (const auto& bar : b.bars) CHECK(bar.birth == 2.5);
}

TEST_CASE("validate_barcode rejects wrong essential counts and escaping bars") {
    Barcode b = torus_eigenfunction_barcode(1);
    CHECK_NOTHROW(validate_barcode(b, Betti{1, 2, 1}));
    CHECK_THROWS_AS(validate_barcode(b, Betti{1, 0, 1}), InternalError);
    b.bars.push_back(Bar::finite(-5.0, 0.0, 0));
    b.bars.push_back(Bar::finite(-5.0, 0.0, 0));
    CHECK_NOTHROW(validate_barcode(b, Betti{1, 2, 1}));
    Barcode d;
    d.boundary = true;
    d.bars = {Bar::essential(-1, 0), Bar::finite(-0.5, 0.2, 2)};
    CHECK_THROWS_AS(validate_barcode(d, Betti{1, 0, 0}), InternalError);
}

TEST_CASE("Bar interval convention is (birth, death]") {
    const auto b = Bar::finite(0.0, 1.0, 0);
    CHECK_FALSE(b.contains(0.0));
    CHECK(b.contains(1.0));
    CHECK(b.length() == 1.0);
    CHECK(Bar::essential(0.0, 1).contains(1e300));
    CHECK(std::isinf(Bar::essential(0.0, 1).length()));
}
