#include "eigenbar/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Orientation sign of each edge slot {v0v1, v0v2, v1v2} relative to the boundary
// cycle v0 -> v1 -> v2 -> v0 of a sorted triangle.
constexpr std::array<int, 3> kSlotDirection{+1, -1, +1};

}  // namespace

SimplicialSurface SimplicialSurface::from_triangles(std::size_t vertex_count,
                                                    std::vector<Triangle> triangles,
                                                    std::vector<Point2> chart,
                                                    std::vector<Point3> embedding) {
    if (vertex_count == 0 || triangles.empty()) throw InvalidArgument("surface needs vertices and triangles");
    if (!chart.empty() && chart.size() != vertex_count)
        throw InvalidArgument("chart size does not match vertex count");
    if (!embedding.empty() && embedding.size() != vertex_count)
        throw InvalidArgument("embedding size does not match vertex count");

    const int nv = static_cast<int>(vertex_count);
    for (auto& t : triangles) {
        for (int v : t)
            if (v < 0 || v >= nv) throw InvalidArgument("triangle references vertex out of range");
        std::sort(t.begin(), t.end());
        if (t[0] == t[1] || t[1] == t[2]) throw InvalidArgument("degenerate triangle");
    }
    {
        auto sorted = triangles;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("duplicate triangle");
    }

    SimplicialSurface s;
    s.vertex_count_ = vertex_count;
    s.triangles_ = std::move(triangles);
    s.chart_ = std::move(chart);
    s.embedding_ = std::move(embedding);
    const std::size_t nt = s.triangles_.size();

    // Edges: sort (key, triangle, slot) records and group equal keys.
    struct Record {
        std::uint64_t key;
        int tri;
        int slot;
    };
    std::vector<Record> records;
    records.reserve(3 * nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = s.triangles_[t];
        records.push_back({edge_key(tri[0], tri[1]), static_cast<int>(t), 0});
        records.push_back({edge_key(tri[0], tri[2]), static_cast<int>(t), 1});
        records.push_back({edge_key(tri[1], tri[2]), static_cast<int>(t), 2});
    }
    std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        return a.key < b.key || (a.key == b.key && a.tri < b.tri);
    });
    s.triangle_edges_.assign(nt, {-1, -1, -1});
    for (std::size_t i = 0; i < records.size();) {
        std::size_t j = i;
        while (j < records.size() && records[j].key == records[i].key) ++j;
        if (j - i > 2) throw InvalidArgument("edge shared by more than two triangles");
        const int id = static_cast<int>(s.edges_.size());
        s.edges_.push_back({static_cast<int>(records[i].key >> 32), static_cast<int>(records[i].key & 0xffffffffu)});
        std::array<int, 2> adj{records[i].tri, -1};
        if (j - i == 2) adj[1] = records[i + 1].tri;
        s.edge_triangles_.push_back(adj);
        for (std::size_t k = i; k < j; ++k) s.triangle_edges_[records[k].tri][records[k].slot] = id;
        i = j;
    }

    // Incident edges (CSR).
    s.incident_offsets_.assign(vertex_count + 1, 0);
    for (const auto& e : s.edges_) {
        ++s.incident_offsets_[e[0] + 1];
        ++s.incident_offsets_[e[1] + 1];
    }
    std::partial_sum(s.incident_offsets_.begin(), s.incident_offsets_.end(), s.incident_offsets_.begin());
    s.incident_.resize(s.incident_offsets_.back());
    {
        std::vector<int> fill(s.incident_offsets_.begin(), s.incident_offsets_.end() - 1);
        for (std::size_t e = 0; e < s.edges_.size(); ++e) {
            s.incident_[fill[s.edges_[e][0]]++] = static_cast<int>(e);
            s.incident_[fill[s.edges_[e][1]]++] = static_cast<int>(e);
        }
    }

    s.boundary_vertex_.assign(vertex_count, 0);
    for (std::size_t e = 0; e < s.edges_.size(); ++e) {
        if (s.edge_triangles_[e][1] < 0) {
            s.has_boundary_ = true;
            s.boundary_vertex_[s.edges_[e][0]] = 1;
            s.boundary_vertex_[s.edges_[e][1]] = 1;
        }
    }

    // Vertex -> triangles, then ordered links.
    std::vector<int> tri_offsets(vertex_count + 1, 0);
    for (const auto& t : s.triangles_)
        for (int v : t) ++tri_offsets[v + 1];
    std::partial_sum(tri_offsets.begin(), tri_offsets.end(), tri_offsets.begin());
    std::vector<int> vertex_tris(tri_offsets.back());
    {
        std::vector<int> fill(tri_offsets.begin(), tri_offsets.end() - 1);
        for (std::size_t t = 0; t < nt; ++t)
            for (int v : s.triangles_[t]) vertex_tris[fill[v]++] = static_cast<int>(t);
    }

    s.link_offsets_.assign(vertex_count + 1, 0);
    s.links_.reserve(6 * vertex_count);
    std::map<int, std::vector<int>> adjacency;
    for (int v = 0; v < nv; ++v) {
        s.link_offsets_[v] = static_cast<int>(s.links_.size());
        if (tri_offsets[v] == tri_offsets[v + 1])
            throw InvalidArgument("vertex " + std::to_string(v) + " belongs to no triangle");
        adjacency.clear();
        for (int k = tri_offsets[v]; k < tri_offsets[v + 1]; ++k) {
            const auto& t = s.triangles_[vertex_tris[k]];
            std::array<int, 2> opposite{};
            int m = 0;
            for (int w : t)
                if (w != v) opposite[m++] = w;
            adjacency[opposite[0]].push_back(opposite[1]);
            adjacency[opposite[1]].push_back(opposite[0]);
        }
        int start = -1;
        int ends = 0;
        for (const auto& [w, nbrs] : adjacency) {
            if (nbrs.size() > 2) throw InvalidArgument("link of vertex " + std::to_string(v) + " is not a 1-manifold");
            if (nbrs.size() == 1) {
                ++ends;
                if (start < 0) start = w;
            }
        }
        const bool boundary = s.boundary_vertex_[v] != 0;
        if ((boundary && ends != 2) || (!boundary && ends != 0))
            throw InvalidArgument("link of vertex " + std::to_string(v) + " is neither a cycle nor a path");
        if (start < 0) start = adjacency.begin()->first;
        int prev = -1;
        int cur = start;
        std::size_t walked = 0;
        while (true) {
            s.links_.push_back(cur);
            ++walked;
            const auto& nbrs = adjacency[cur];
            int next = -1;
            for (int w : nbrs)
                if (w != prev) {
                    next = w;
                    break;
                }
            if (nbrs.size() == 2 && nbrs[0] == nbrs[1]) throw InvalidArgument("degenerate link");
            if (next < 0 || next == start) break;
            prev = cur;
            cur = next;
            if (walked > adjacency.size()) break;
        }
        if (walked != adjacency.size())
            throw InvalidArgument("link of vertex " + std::to_string(v) + " is disconnected");
    }
    s.link_offsets_[vertex_count] = static_cast<int>(s.links_.size());

    // Components, orientability and real Betti numbers.
    std::vector<int> sign(nt, 0);
    int components = 0;
    int closed_components = 0;
    for (std::size_t seed = 0; seed < nt; ++seed) {
        if (sign[seed] != 0) continue;
        ++components;
        bool closed = true;
        std::queue<int> queue;
        sign[seed] = 1;
        queue.push(static_cast<int>(seed));
        while (!queue.empty()) {
            const int t = queue.front();
            queue.pop();
            for (int slot = 0; slot < 3; ++slot) {
                const int e = s.triangle_edges_[t][slot];
                const auto adj = s.edge_triangles_[e];
                if (adj[1] < 0) {
                    closed = false;
                    continue;
                }
                const int other = adj[0] == t ? adj[1] : adj[0];
                int other_slot = 0;
                while (s.triangle_edges_[other][other_slot] != e) ++other_slot;
                const int required = -sign[t] * kSlotDirection[slot] * kSlotDirection[other_slot];
                if (sign[other] == 0) {
                    sign[other] = required;
                    queue.push(other);
                } else if (sign[other] != required) {
                    throw Unsupported("non-orientable surfaces are not supported");
                }
            }
        }
        if (closed) ++closed_components;
    }
    s.betti_.b0 = components;
    s.betti_.b2 = closed_components;
    s.betti_.b1 = s.betti_.b0 + s.betti_.b2 - s.euler_characteristic();
    return s;
}

std::span<const int> SimplicialSurface::link(int vertex) const {
    return std::span<const int>(links_).subspan(link_offsets_[vertex], link_offsets_[vertex + 1] - link_offsets_[vertex]);
}

std::span<const int> SimplicialSurface::incident_edges(int vertex) const {
    return std::span<const int>(incident_).subspan(incident_offsets_[vertex],
                                                   incident_offsets_[vertex + 1] - incident_offsets_[vertex]);
}

int SimplicialSurface::find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (int e : incident_edges(a))
        if (edges_[e][0] == a && edges_[e][1] == b) return e;
    return -1;
}

int SimplicialSurface::euler_characteristic() const {
    return static_cast<int>(vertex_count_) - static_cast<int>(edges_.size()) + static_cast<int>(triangles_.size());
}

SurfacePtr share(SimplicialSurface surface) { return std::make_shared<const SimplicialSurface>(std::move(surface)); }

SurfacePtr build_flat_torus_grid(int n) {
    if (n < 3) throw InvalidArgument("torus grid needs n >= 3");
    const auto id = [n](int i, int j) { return ((j + n) % n) * n + ((i + n) % n); };
    std::vector<Triangle> tris;
    tris.reserve(2 * static_cast<std::size_t>(n) * n);
    std::vector<Point2> chart(static_cast<std::size_t>(n) * n);
    const double h = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            chart[id(i, j)] = {h * i, h * j};
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    auto surface = SimplicialSurface::from_triangles(static_cast<std::size_t>(n) * n, std::move(tris), std::move(chart));
    if (!(surface.betti() == Betti{1, 2, 1})) throw InternalError("torus grid has unexpected Betti numbers");
    return share(std::move(surface));
}

SurfacePtr build_disk_mesh(int rings, int sectors) {
    if (rings < 1 || sectors < 3) throw InvalidArgument("disk mesh needs rings >= 1 and sectors >= 3");
    const auto id = [sectors](int ring, int s) { return 1 + (ring - 1) * sectors + ((s + sectors) % sectors); };
    std::vector<Point2> chart(1 + static_cast<std::size_t>(rings) * sectors);
    chart[0] = {0.0, 0.0};
    std::vector<Triangle> tris;
    for (int k = 1; k <= rings; ++k) {
        const double r = static_cast<double>(k) / rings;
        for (int s = 0; s < sectors; ++s) {
            const double theta = 2.0 * std::numbers::pi * s / sectors;
            chart[id(k, s)] = {r * std::cos(theta), r * std::sin(theta)};
        }
    }
    for (int s = 0; s < sectors; ++s) tris.push_back({0, id(1, s), id(1, s + 1)});
    for (int k = 1; k < rings; ++k)
        for (int s = 0; s < sectors; ++s) {
            tris.push_back({id(k, s), id(k + 1, s), id(k + 1, s + 1)});
            tris.push_back({id(k, s), id(k + 1, s + 1), id(k, s + 1)});
        }
    const std::size_t nv = chart.size();
    return share(SimplicialSurface::from_triangles(nv, std::move(tris), std::move(chart)));
}

SurfacePtr build_annulus_mesh(int rings, int sectors) {
    if (rings < 2 || sectors < 3) throw InvalidArgument("annulus mesh needs rings >= 2 and sectors >= 3");
    const auto id = [sectors](int ring, int s) { return ring * sectors + ((s + sectors) % sectors); };
    std::vector<Point2> chart(static_cast<std::size_t>(rings) * sectors);
    for (int k = 0; k < rings; ++k) {
        const double r = 1.0 + static_cast<double>(k) / (rings - 1);
        for (int s = 0; s < sectors; ++s) {
            const double theta = 2.0 * std::numbers::pi * s / sectors;
            chart[id(k, s)] = {r * std::cos(theta), r * std::sin(theta)};
        }
    }
    std::vector<Triangle> tris;
    for (int k = 0; k + 1 < rings; ++k)
        for (int s = 0; s < sectors; ++s) {
            tris.push_back({id(k, s), id(k + 1, s), id(k + 1, s + 1)});
            tris.push_back({id(k, s), id(k + 1, s + 1), id(k, s + 1)});
        }
    const std::size_t nv = chart.size();
    return share(SimplicialSurface::from_triangles(nv, std::move(tris), std::move(chart)));
}

SurfacePtr build_octahedral_sphere(int subdivisions) {
    if (subdivisions < 0) throw InvalidArgument("subdivisions must be non-negative");
    std::vector<Point3> pts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<Triangle> tris{{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::uint64_t, int> midpoints;
        const auto midpoint = [&](int a, int b) {
            const auto key = edge_key(std::min(a, b), std::max(a, b));
            if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
            Point3 m{(pts[a][0] + pts[b][0]) / 2, (pts[a][1] + pts[b][1]) / 2, (pts[a][2] + pts[b][2]) / 2};
            const double r = std::hypot(m[0], m[1], m[2]);
            pts.push_back({m[0] / r, m[1] / r, m[2] / r});
            midpoints.emplace(key, static_cast<int>(pts.size() - 1));
            return static_cast<int>(pts.size() - 1);
        };
        std::vector<Triangle> next;
        next.reserve(4 * tris.size());
        for (const auto& t : tris) {
            const int ab = midpoint(t[0], t[1]);
            const int bc = midpoint(t[1], t[2]);
            const int ca = midpoint(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({ab, t[1], bc});
            next.push_back({ca, bc, t[2]});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }
    const std::size_t count = pts.size();
    return share(SimplicialSurface::from_triangles(count, std::move(tris), {}, std::move(pts)));
}

// ---------------------------------------------------------------------------------------

ScalarField::ScalarField(SurfacePtr surface, std::vector<double> values)
    : ScalarField(surface, std::move(values), {}) {}

ScalarField::ScalarField(SurfacePtr surface, std::vector<double> values, std::vector<int> tiebreak)
    : surface_(std::move(surface)), values_(std::move(values)), tiebreak_(std::move(tiebreak)) {
    if (!surface_) throw InvalidArgument("field needs a surface");
    if (values_.size() != surface_->vertex_count()) throw InvalidArgument("field length does not match vertex count");
    if (tiebreak_.empty()) {
        tiebreak_.resize(values_.size());
        std::iota(tiebreak_.begin(), tiebreak_.end(), 0);
    } else if (tiebreak_.size() != values_.size()) {
        throw InvalidArgument("tiebreak length does not match vertex count");
    }
    for (std::size_t v = 0; v < values_.size(); ++v) {
        if (!std::isfinite(values_[v])) throw InvalidArgument("field values must be finite");
        if (surface_->is_boundary_vertex(static_cast<int>(v)) && values_[v] != 0.0)
            throw InvalidArgument("field must vanish on boundary vertices");
    }
}

std::vector<int> ScalarField::vertex_ranks() const {
    std::vector<int> order(values_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](int a, int b) { return precedes(a, b); });
    std::vector<int> rank(values_.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    return rank;
}

double ScalarField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::has_ties() const {
    auto sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

CircleField::CircleField(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 3) throw InvalidArgument("circle field needs at least 3 samples");
    for (double v : values_)
        if (!std::isfinite(v)) throw InvalidArgument("circle field values must be finite");
}

double CircleField::total_variation() const {
    double var = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) var += std::abs(values_[(i + 1) % values_.size()] - values_[i]);
    return var;
}

int CriticalReport::saddle_multiplicity() const {
    int m = 0;
    for (const auto& s : saddles) m += s.multiplicity;
    return m;
}

ScalarField sample_field(const SurfacePtr& surface, const std::function<double(double, double)>& evaluator) {
    if (!surface->has_chart()) throw Unsupported("surface has no chart coordinates");
    const auto chart = surface->chart();
    std::vector<double> values(surface->vertex_count());
    for (std::size_t v = 0; v < values.size(); ++v)
        values[v] = surface->is_boundary_vertex(static_cast<int>(v)) ? 0.0 : evaluator(chart[v][0], chart[v][1]);
    return ScalarField(surface, std::move(values));
}

ScalarField sample_field_embedded(const SurfacePtr& surface,
                                  const std::function<double(double, double, double)>& evaluator) {
    if (!surface->has_embedding()) throw Unsupported("surface has no embedding");
    const auto pts = surface->embedding();
    std::vector<double> values(surface->vertex_count());
    for (std::size_t v = 0; v < values.size(); ++v)
        values[v] = surface->is_boundary_vertex(static_cast<int>(v)) ? 0.0 : evaluator(pts[v][0], pts[v][1], pts[v][2]);
    return ScalarField(surface, std::move(values));
}

ScalarField perturb_to_simple(const ScalarField& field, std::uint64_t seed) {
    const auto values = field.values();
    const std::size_t n = values.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return field.precedes(a, b); });

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n; ++i) {
        const double d = values[order[i]] - values[order[i - 1]];
        if (d > 0.0) gap = std::min(gap, d);
    }
    if (!std::isfinite(gap)) gap = 1e-9 * std::max(1.0, std::abs(values[order[0]]));

    std::vector<double> out(values.begin(), values.end());
    std::mt19937_64 rng(seed);
    const auto& surface = field.surface();
    std::vector<double> offset(n, 0.0);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const std::size_t size = j - i;
        if (size > 1) {
            const auto first = order.begin() + static_cast<std::ptrdiff_t>(i);
            const auto last = order.begin() + static_cast<std::ptrdiff_t>(j);
            if (seed != 0) std::shuffle(first, last, rng);
            // Boundary vertices keep 0, so they go first.
            std::stable_partition(first, last, [&](int v) { return surface.is_boundary_vertex(v); });
            const double step = 0.5 * gap / static_cast<double>(size);
            for (std::size_t p = i; p < j; ++p) offset[p] = static_cast<double>(p - i) * step;
        }
        i = j;
    }
    // Monotone sweep. Only when two inputs sit a few ulps apart can the nextafter
    // fallback push a value past the half-gap bound.
    for (std::size_t p = 0; p < n; ++p) {
        const int v = order[p];
        if (surface.is_boundary_vertex(v)) continue;
        double candidate = values[v] + offset[p];
        if (p > 0 && candidate <= out[order[p - 1]])
            candidate = std::nextafter(out[order[p - 1]], std::numeric_limits<double>::infinity());
        out[v] = candidate;
    }
    return ScalarField(field.surface_ptr(), std::move(out));
}

CriticalReport classify_critical_points(const ScalarField& field) {
    const auto& surface = field.surface();
    CriticalReport report;
    std::vector<std::uint8_t> critical(surface.vertex_count(), 0);
    for (int v = 0; v < static_cast<int>(surface.vertex_count()); ++v) {
        if (surface.is_boundary_vertex(v)) continue;
        const auto link = surface.link(v);
        int changes = 0;
        bool any_higher = false;
        const auto higher = [&](int w) {
            if (field.value(w) == field.value(v))
                throw PreconditionViolation("vertex " + std::to_string(v) + " ties with neighbour " + std::to_string(w));
            return field.value(w) > field.value(v);
        };
        bool prev = higher(link.back());
        for (int w : link) {
            const bool cur = higher(w);
            if (cur != prev) ++changes;
            any_higher = any_higher || cur;
            prev = cur;
        }
        const CriticalPoint point{v, field.value(v), 1};
        if (changes == 0) {
            (any_higher ? report.minima : report.maxima).push_back(point);
            critical[v] = 1;
            report.total += 1;
        } else if (changes >= 4) {
            report.saddles.push_back({v, field.value(v), changes / 2 - 1});
            critical[v] = 1;
            report.total += changes / 2 - 1;
        }
    }
    for (const auto& e : surface.edges())
        if (critical[e[0]] && critical[e[1]]) {
            report.non_isolated = true;
            break;
        }
    return report;
}

}  // namespace eigenbar
