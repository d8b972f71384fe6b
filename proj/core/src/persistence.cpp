#include "eigenbar/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "eigenbar/errors.hpp"

namespace eigenbar {

bool bar_less(const Bar& a, const Bar& b) {
    const double da = a.infinite ? 0.0 : a.death;
    const double db = b.infinite ? 0.0 : b.death;
    return std::tie(a.degree, a.infinite, a.birth, da) < std::tie(b.degree, b.infinite, b.birth, db);
}

std::size_t Barcode::finite_count() const {
    return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [](const Bar& b) { return !b.infinite; }));
}

std::size_t Barcode::infinite_count() const { return bars.size() - finite_count(); }

std::size_t Barcode::finite_count(int degree) const {
    return static_cast<std::size_t>(
        std::count_if(bars.begin(), bars.end(), [degree](const Bar& b) { return !b.infinite && b.degree == degree; }));
}

std::size_t Barcode::infinite_count(int degree) const {
    return static_cast<std::size_t>(
        std::count_if(bars.begin(), bars.end(), [degree](const Bar& b) { return b.infinite && b.degree == degree; }));
}

std::vector<Bar> Barcode::of_degree(int degree) const {
    std::vector<Bar> out;
    std::copy_if(bars.begin(), bars.end(), std::back_inserter(out), [degree](const Bar& b) { return b.degree == degree; });
    return out;
}

std::vector<Bar> Barcode::finite_bars() const {
    std::vector<Bar> out;
    std::copy_if(bars.begin(), bars.end(), std::back_inserter(out), [](const Bar& b) { return !b.infinite; });
    return out;
}

double Barcode::min_endpoint() const {
    if (bars.empty()) throw InvalidArgument("empty barcode has no endpoints");
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : bars) m = std::min(m, b.birth);
    return m;
}

double Barcode::max_endpoint() const {
    if (bars.empty()) throw InvalidArgument("empty barcode has no endpoints");
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& b : bars) m = std::max(m, b.infinite ? b.birth : b.death);
    return m;
}

Barcode Barcode::canonical() const {
    Barcode out = *this;
    std::sort(out.bars.begin(), out.bars.end(), bar_less);
    return out;
}

Barcode Barcode::scaled(double factor) const {
    if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
    Barcode out = *this;
    for (auto& b : out.bars) {
        b.birth *= factor;
        if (!b.infinite) b.death *= factor;
    }
    return out;
}

Barcode Barcode::shifted(double offset) const {
    Barcode out = *this;
    for (auto& b : out.bars) {
        b.birth += offset;
        if (!b.infinite) b.death += offset;
    }
    return out;
}

void validate_barcode(const Barcode& barcode, const Betti& betti) {
    std::ostringstream problems;
    const int expected[3] = {betti.b0, betti.b1, betti.b2};
    for (int k = 0; k < 3; ++k) {
        const auto got = barcode.infinite_count(k);
        if (got != static_cast<std::size_t>(expected[k]))
            problems << "degree " << k << " has " << got << " infinite bars, expected " << expected[k] << "; ";
    }
    if (barcode.boundary && (barcode.finite_count(2) != 0 || barcode.infinite_count(2) != 0))
        problems << "degree-2 bars on a surface with boundary; ";
    for (const auto& b : barcode.bars) {
        if (b.degree < 0) problems << "negative degree; ";
        if (!b.infinite && !(b.birth < b.death)) problems << "bar with birth >= death; ";
    }
    if (!barcode.empty()) {
        const double lo = barcode.min_endpoint();
        const double hi = barcode.max_endpoint();
        for (const auto& b : barcode.bars)
            if (!b.infinite && (b.birth < lo || b.death > hi)) problems << "finite bar outside the range; ";
    }
    const auto text = problems.str();
    if (!text.empty()) throw InternalError("invalid barcode: " + text);
}

Filtration lower_star_filtration(const ScalarField& field) {
    const auto& s = field.surface();
    const auto rank = field.vertex_ranks();
    struct Keyed {
        int r0, dim, r1, r2;
        int id;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(s.vertex_count() + s.edge_count() + s.triangle_count());
    for (int v = 0; v < static_cast<int>(s.vertex_count()); ++v) keyed.push_back({rank[v], 0, -1, -1, v});
    const auto edges = s.edges();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        int a = rank[edges[e][0]];
        int b = rank[edges[e][1]];
        if (a < b) std::swap(a, b);
        keyed.push_back({a, 1, b, -1, e});
    }
    const auto tris = s.triangles();
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        std::array<int, 3> r{rank[tris[t][0]], rank[tris[t][1]], rank[tris[t][2]]};
        std::sort(r.begin(), r.end(), std::greater<>());
        keyed.push_back({r[0], 2, r[1], r[2], t});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.r0, a.dim, a.r1, a.r2) < std::tie(b.r0, b.dim, b.r1, b.r2);
    });

    std::vector<int> by_rank(s.vertex_count());
    for (std::size_t v = 0; v < by_rank.size(); ++v) by_rank[rank[v]] = static_cast<int>(v);

    Filtration f;
    f.surface = field.surface_ptr();
    f.entries.reserve(keyed.size());
    for (const auto& k : keyed) f.entries.push_back({k.dim, k.id, field.value(by_rank[k.r0])});
    return f;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), oldest_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
        std::iota(oldest_.begin(), oldest_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    // Root `child` joins root `keep`; `keep` retains its oldest member.
    void attach(int child, int keep) { parent_[child] = keep; }
    int oldest(int root) const { return oldest_[root]; }
    void set_oldest(int root, int member) { oldest_[root] = member; }

private:
    std::vector<int> parent_;
    std::vector<int> oldest_;
};

[[noreturn]] void inconsistent(const std::string& what, std::size_t position) {
    throw InternalError("inconsistent filtration at position " + std::to_string(position) + ": " + what);
}

}  // namespace

Barcode compute_barcode(const Filtration& filtration) {
    const auto& s = *filtration.surface;
    const auto& entries = filtration.entries;
    const std::size_t nv = s.vertex_count();
    const std::size_t ne = s.edge_count();
    const std::size_t nt = s.triangle_count();
    if (entries.size() != nv + ne + nt) inconsistent("simplex count does not match the surface", 0);

    constexpr int kAbsent = -1;
    std::vector<int> vpos(nv, kAbsent);
    std::vector<int> epos(ne, kAbsent);
    std::vector<int> tpos(nt, kAbsent);
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const auto& en = entries[p];
        auto& slot = en.dim == 0 ? vpos.at(en.id) : en.dim == 1 ? epos.at(en.id) : tpos.at(en.id);
        if (slot != kAbsent) inconsistent("simplex listed twice", p);
        slot = static_cast<int>(p);
        if (p > 0 && en.value < entries[p - 1].value) inconsistent("filtration values decrease", p);
    }

    Barcode barcode;
    barcode.boundary = s.has_boundary();

    // Degree 0 and edge classification.
    UnionFind uf(nv);
    std::vector<char> positive_edge(ne, 0);
    const auto edges = s.edges();
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const auto& en = entries[p];
        if (en.dim != 1) continue;
        const auto& e = edges[en.id];
        if (vpos[e[0]] > static_cast<int>(p) || vpos[e[1]] > static_cast<int>(p)) inconsistent("edge before its vertex", p);
        int ra = uf.find(e[0]);
        int rb = uf.find(e[1]);
        if (ra == rb) {
            positive_edge[en.id] = 1;
            continue;
        }
        // Elder rule: the component whose oldest vertex entered later dies.
        if (vpos[uf.oldest(ra)] > vpos[uf.oldest(rb)]) std::swap(ra, rb);
        const double birth = entries[vpos[uf.oldest(rb)]].value;
        if (birth != en.value) barcode.bars.push_back(Bar::finite(birth, en.value, 0));
        uf.attach(rb, ra);
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (uf.find(static_cast<int>(v)) == static_cast<int>(v))
            barcode.bars.push_back(Bar::essential(entries[vpos[uf.oldest(static_cast<int>(v))]].value, 0));

    // Triangle columns over Z/2, entries are filtration positions of edges.
    std::vector<int> pivot_owner(entries.size(), kAbsent);
    std::vector<std::vector<int>> reduced(nt);
    std::vector<int> column;
    std::vector<int> scratch;
    const auto tri_edges = s.triangle_edges();
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const auto& en = entries[p];
        if (en.dim != 2) continue;
        column.clear();
        for (int e : tri_edges[en.id]) {
            if (epos[e] > static_cast<int>(p)) inconsistent("triangle before its edge", p);
            column.push_back(epos[e]);
        }
        std::sort(column.begin(), column.end());
        while (!column.empty()) {
            const int low = column.back();
            const int owner = pivot_owner[low];
            if (owner == kAbsent) break;
            const auto& other = reduced[owner];
            scratch.clear();
            std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            column.swap(scratch);
        }
        if (column.empty()) {
            barcode.bars.push_back(Bar::essential(en.value, 2));
            continue;
        }
        const int low = column.back();
        const int edge_id = entries[low].id;
        if (!positive_edge[edge_id]) inconsistent("triangle column reduced to a negative edge", p);
        pivot_owner[low] = en.id;
        positive_edge[edge_id] = 2;  // paired
        if (entries[low].value != en.value) barcode.bars.push_back(Bar::finite(entries[low].value, en.value, 1));
        reduced[en.id] = column;
    }
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const auto& en = entries[p];
        if (en.dim == 1 && positive_edge[en.id] == 1) barcode.bars.push_back(Bar::essential(en.value, 1));
    }
    return barcode;
}

Barcode circle_barcode(const CircleField& field) {
    const std::size_t n = field.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return field.precedes(a, b); });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

    Barcode barcode;
    UnionFind uf(n);
    bool cycle_closed = false;
    for (std::size_t idx : order) {
        const double t = field.value(idx);
        // Edges to already-present neighbours, lower-ranked neighbour first.
        std::array<std::size_t, 2> nbrs{(idx + n - 1) % n, (idx + 1) % n};
        if (rank[nbrs[0]] > rank[nbrs[1]]) std::swap(nbrs[0], nbrs[1]);
        for (std::size_t w : nbrs) {
            if (rank[w] > rank[idx]) continue;
            int ra = uf.find(static_cast<int>(idx));
            int rb = uf.find(static_cast<int>(w));
            if (ra == rb) {
                barcode.bars.push_back(Bar::essential(t, 1));
                cycle_closed = true;
                continue;
            }
            if (rank[uf.oldest(ra)] > rank[uf.oldest(rb)]) std::swap(ra, rb);
            const double birth = field.value(uf.oldest(rb));
            if (birth != t) barcode.bars.push_back(Bar::finite(birth, t, 0));
            uf.attach(rb, ra);
        }
    }
    if (!cycle_closed) throw InternalError("circle filtration never closed its cycle");
    barcode.bars.push_back(Bar::essential(field.value(order.front()), 0));
    return barcode;
}

std::vector<std::vector<double>> spectral_invariants(const Barcode& barcode) {
    int top = 2;
    for (const auto& b : barcode.bars) top = std::max(top, b.degree);
    std::vector<std::vector<double>> out(static_cast<std::size_t>(top) + 1);
    for (const auto& b : barcode.bars)
        if (b.infinite) out[b.degree].push_back(b.birth);
    for (auto& list : out) std::sort(list.begin(), list.end());
    return out;
}

}  // namespace eigenbar
