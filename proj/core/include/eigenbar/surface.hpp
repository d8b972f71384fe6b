#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace eigenbar {

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;
using Edge = std::array<int, 2>;      // sorted vertex pair
using Triangle = std::array<int, 3>;  // sorted vertex triple

struct Betti {
    int b0 = 0;
    int b1 = 0;
    int b2 = 0;

    int euler() const { return b0 - b1 + b2; }
    int total() const { return b0 + b1 + b2; }
    bool operator==(const Betti&) const = default;
};

/// A triangulated orientable surface, closed or with boundary.
///
/// Construction validates the combinatorial manifold conditions (every edge in one or
/// two triangles, every vertex link a single cycle or path) and computes the real Betti
/// numbers from the triangulation. Instances are immutable once built.
class SimplicialSurface {
public:
    static SimplicialSurface from_triangles(std::size_t vertex_count,
                                            std::vector<Triangle> triangles,
                                            std::vector<Point2> chart = {},
                                            std::vector<Point3> embedding = {});

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t triangle_count() const { return triangles_.size(); }

    std::span<const Edge> edges() const { return edges_; }
    std::span<const Triangle> triangles() const { return triangles_; }
    // Edge ids of each triangle, in the order {v0v1, v0v2, v1v2}.
    std::span<const std::array<int, 3>> triangle_edges() const { return triangle_edges_; }
    // Triangles incident to an edge; the second slot is -1 for boundary edges.
    std::array<int, 2> edge_triangles(int edge) const { return edge_triangles_[edge]; }

    // Link of a vertex in cyclic order. For boundary vertices this is a path whose
    // endpoints are the boundary neighbours.
    std::span<const int> link(int vertex) const;
    // Edge ids incident to a vertex.
    std::span<const int> incident_edges(int vertex) const;
    int find_edge(int a, int b) const;

    bool has_boundary() const { return has_boundary_; }
    bool is_boundary_vertex(int vertex) const { return boundary_vertex_[vertex] != 0; }
    bool is_boundary_edge(int edge) const { return edge_triangles_[edge][1] < 0; }

    const Betti& betti() const { return betti_; }
    int euler_characteristic() const;

    bool has_chart() const { return !chart_.empty(); }
    std::span<const Point2> chart() const { return chart_; }
    bool has_embedding() const { return !embedding_.empty(); }
    std::span<const Point3> embedding() const { return embedding_; }

private:
    SimplicialSurface() = default;

    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<std::array<int, 3>> triangle_edges_;
    std::vector<std::array<int, 2>> edge_triangles_;
    std::vector<int> link_offsets_;
    std::vector<int> links_;
    std::vector<int> incident_offsets_;
    std::vector<int> incident_;
    std::vector<std::uint8_t> boundary_vertex_;
    bool has_boundary_ = false;
    Betti betti_;
    std::vector<Point2> chart_;
    std::vector<Point3> embedding_;
};

using SurfacePtr = std::shared_ptr<const SimplicialSurface>;

/// Periodic n x n grid on [0, 2pi)^2, squares split along the (+1,+1) diagonal.
/// Vertex (i, j) has id j * n + i and chart coordinates (2 pi i / n, 2 pi j / n).
SurfacePtr build_flat_torus_grid(int n);

/// Disk of radius 1: a centre vertex plus `rings` concentric rings of `sectors`
/// vertices each. The outermost ring is the boundary.
SurfacePtr build_disk_mesh(int rings, int sectors);

/// Annulus between radii 1 and 2 made of `rings` >= 2 rings of `sectors` vertices.
SurfacePtr build_annulus_mesh(int rings, int sectors);

/// Unit sphere from a subdivided octahedron, with 3-D embedding and no chart.
SurfacePtr build_octahedral_sphere(int subdivisions);

/// Real-valued PL function on the vertices of a surface.
///
/// Vertices are totally ordered by (value, tiebreak); the default tiebreak is the vertex
/// id. On surfaces with boundary every boundary vertex must carry exactly 0.
class ScalarField {
public:
    ScalarField(SurfacePtr surface, std::vector<double> values);
    ScalarField(SurfacePtr surface, std::vector<double> values, std::vector<int> tiebreak);

    const SimplicialSurface& surface() const { return *surface_; }
    const SurfacePtr& surface_ptr() const { return surface_; }
    std::span<const double> values() const { return values_; }
    double value(int v) const { return values_[v]; }
    std::span<const int> tiebreak() const { return tiebreak_; }

    // Strict total order used wherever vertices must be compared.
    bool precedes(int a, int b) const {
        return values_[a] < values_[b] || (values_[a] == values_[b] && tiebreak_[a] < tiebreak_[b]);
    }
    // rank[v] = position of v in the (value, tiebreak) order.
    std::vector<int> vertex_ranks() const;

    double min_value() const;
    double max_value() const;
    bool has_ties() const;

private:
    SurfacePtr surface_;
    std::vector<double> values_;
    std::vector<int> tiebreak_;
};

/// Samples on an equispaced cyclic 1-complex, read as a PL function on R / 2pi Z.
class CircleField {
public:
    explicit CircleField(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double value(std::size_t i) const { return values_[i]; }
    bool precedes(std::size_t a, std::size_t b) const {
        return values_[a] < values_[b] || (values_[a] == values_[b] && a < b);
    }
    // Total variation of the PL interpolant.
    double total_variation() const;

private:
    std::vector<double> values_;
};

struct CriticalPoint {
    int vertex = -1;
    double value = 0.0;
    // 1 for extrema; m - 1 for a saddle whose link shows 2m sign changes.
    int multiplicity = 1;
};

struct CriticalReport {
    std::vector<CriticalPoint> minima;
    std::vector<CriticalPoint> maxima;
    std::vector<CriticalPoint> saddles;
    // Sum of multiplicities over all critical vertices.
    int total = 0;
    // Some pair of adjacent vertices are both critical: the critical set is not a set of
    // isolated points at mesh resolution (typically a perturbed critical curve).
    bool non_isolated = false;

    int saddle_multiplicity() const;
};

SurfacePtr share(SimplicialSurface surface);

ScalarField sample_field(const SurfacePtr& surface, const std::function<double(double, double)>& evaluator);
ScalarField sample_field_embedded(const SurfacePtr& surface,
                                  const std::function<double(double, double, double)>& evaluator);

/// Breaks ties so that all values are pairwise distinct.
///
/// Strictly ordered pairs keep their order, each value moves by less than half the
/// smallest nonzero gap between distinct input values. Seed 0 keeps the field's own
/// (value, tiebreak) order inside tie groups, so the perturbed field has the same
/// filtration order; any other seed draws a random order per tie group. A field with a
/// single distinct value uses the scale 1e-9 * max(1, |value|) in place of the gap. Boundary vertices stay at 0, so on
/// surfaces with boundary only interior values become distinct.
ScalarField perturb_to_simple(const ScalarField& field, std::uint64_t seed);

/// PL critical points of interior vertices, classified by sign changes of
/// (neighbour - vertex) around the link. Throws PreconditionViolation when an interior
/// vertex ties with a neighbour.
CriticalReport classify_critical_points(const ScalarField& field);

}  // namespace eigenbar
