#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "eigenbar/surface.hpp"

namespace eigenbar {

/// One interval (birth, death] or (birth, +inf) of a sublevel persistence module.
struct Bar {
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();  // meaningful only when !infinite
    bool infinite = true;
    int degree = 0;

    static Bar finite(double birth, double death, int degree) { return Bar{birth, death, false, degree}; }
    static Bar essential(double birth, int degree) {
        return Bar{birth, std::numeric_limits<double>::infinity(), true, degree};
    }

    double length() const { return infinite ? std::numeric_limits<double>::infinity() : death - birth; }
    // t in (birth, death] for finite bars, t in (birth, inf) otherwise.
    bool contains(double t) const { return t > birth && (infinite || t <= death); }

    bool operator==(const Bar&) const = default;
};

// Orders by (degree, infinite, birth, death).
bool bar_less(const Bar& a, const Bar& b);

struct Barcode {
    std::vector<Bar> bars;
    bool boundary = false;

    std::size_t finite_count() const;
    std::size_t infinite_count() const;
    std::size_t finite_count(int degree) const;
    std::size_t infinite_count(int degree) const;
    std::vector<Bar> of_degree(int degree) const;
    std::vector<Bar> finite_bars() const;
    // Smallest / largest endpoint over all bars (stand-ins for min f / max f).
    double min_endpoint() const;
    double max_endpoint() const;
    bool empty() const { return bars.empty(); }

    // Bars sorted by bar_less; convenient for exact comparisons in tests.
    Barcode canonical() const;
    Barcode scaled(double factor) const;
    Barcode shifted(double offset) const;
};

/// Checks the structural barcode invariants against the Betti numbers of the source
/// surface: infinite-bar counts per degree, no degree-2 bars with boundary, finite bars
/// inside (min endpoint, max endpoint]. Throws InternalError with a diagnostic.
void validate_barcode(const Barcode& barcode, const Betti& betti);

struct FiltrationEntry {
    int dim = 0;  // 0 vertex, 1 edge, 2 triangle
    int id = 0;   // vertex / edge / triangle id in the surface
    double value = 0.0;
};

/// Lower-star filtration of a scalar field on a surface.
///
/// Simplices are ordered by (rank of their highest vertex, dimension, ranks of the
/// remaining vertices from high to low), where vertex ranks come from the field's
/// (value, tiebreak) order. Each simplex carries the value of its highest vertex.
struct Filtration {
    SurfacePtr surface;
    std::vector<FiltrationEntry> entries;

    bool boundary() const { return surface->has_boundary(); }
};

Filtration lower_star_filtration(const ScalarField& field);

/// Sublevel barcode in degrees 0, 1, 2 of a filtration, bars with equal endpoints dropped.
///
/// Degree 0 is paired by union-find under the elder rule, which also classifies every
/// edge as negative (merging) or positive (cycle-creating). Triangle columns are then
/// reduced over the two-element field against positive edges only, so edge columns are
/// never reduced (the clearing step is implicit).
Barcode compute_barcode(const Filtration& filtration);

inline Barcode compute_barcode(const ScalarField& field) { return compute_barcode(lower_star_filtration(field)); }

/// Barcode of a PL function on the circle: degree 0 by the elder rule, plus the degree-1
/// essential class born at the global maximum.
Barcode circle_barcode(const CircleField& field);

/// Ascending births of the infinite bars, one list per degree 0..max(2, top degree).
std::vector<std::vector<double>> spectral_invariants(const Barcode& barcode);

}  // namespace eigenbar
