#include "eigenbar/indicatrix.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

class LocalUnionFind {
public:
    void reset(std::size_t n) {
        parent_.resize(n);
        std::iota(parent_.begin(), parent_.end(), 0);
        roots_ = n;
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        parent_[std::max(a, b)] = std::min(a, b);
        --roots_;
    }
    std::size_t roots() const { return roots_; }

private:
    std::vector<int> parent_;
    std::size_t roots_ = 0;
};

// Components of the level set through the given crossing edges. `local[e]` must be
// -1 for non-crossing edges and is restored on exit.
std::size_t count_components(const SimplicialSurface& s, const std::vector<int>& crossing, std::vector<int>& local,
                             LocalUnionFind& uf) {
    for (std::size_t i = 0; i < crossing.size(); ++i) local[crossing[i]] = static_cast<int>(i);
    uf.reset(crossing.size());
    const auto tri_edges = s.triangle_edges();
    for (std::size_t i = 0; i < crossing.size(); ++i) {
        for (int t : s.edge_triangles(crossing[i])) {
            if (t < 0) continue;
            for (int e : tri_edges[t])
                if (e != crossing[i] && local[e] >= 0) uf.unite(static_cast<int>(i), local[e]);
        }
    }
    for (int e : crossing) local[e] = -1;
    return uf.roots();
}

}  // namespace

std::size_t banach_indicatrix(const ScalarField& field, double t) {
    const auto& s = field.surface();
    const auto values = field.values();
    for (double v : values)
        if (v == t) throw RegularValueViolation("t = " + std::to_string(t) + " is a vertex value");
    std::vector<int> crossing;
    const auto edges = s.edges();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const double a = values[edges[e][0]];
        const double b = values[edges[e][1]];
        if ((a < t) != (b < t)) crossing.push_back(e);
    }
    std::vector<int> local(edges.size(), -1);
    LocalUnionFind uf;
    return count_components(s, crossing, local, uf);
}

std::size_t IndicatrixProfile::at(double t) const {
    if (breakpoints.empty() || t < breakpoints.front() || t > breakpoints.back()) return 0;
    const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
    if (*it == t) throw RegularValueViolation("t is a breakpoint of the indicatrix profile");
    return counts[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

IndicatrixProfile indicatrix_profile(const ScalarField& field) {
    const auto& s = field.surface();
    const auto values = field.values();
    IndicatrixProfile prof;
    prof.breakpoints.assign(values.begin(), values.end());
    std::sort(prof.breakpoints.begin(), prof.breakpoints.end());
    prof.breakpoints.erase(std::unique(prof.breakpoints.begin(), prof.breakpoints.end()), prof.breakpoints.end());
    const std::size_t gaps = prof.breakpoints.empty() ? 0 : prof.breakpoints.size() - 1;
    prof.counts.assign(gaps, 0);
    if (gaps == 0) return prof;

    const auto level = [&](int v) {
        return static_cast<int>(std::lower_bound(prof.breakpoints.begin(), prof.breakpoints.end(), values[v]) -
                                prof.breakpoints.begin());
    };
    // Edge e crosses gap i iff lo[e] <= i < hi[e].
    const auto edges = s.edges();
    std::vector<int> lo(edges.size());
    std::vector<int> hi(edges.size());
    std::vector<int> by_lo;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        lo[e] = level(edges[e][0]);
        hi[e] = level(edges[e][1]);
        if (lo[e] > hi[e]) std::swap(lo[e], hi[e]);
        if (lo[e] < hi[e]) by_lo.push_back(e);
    }
    std::stable_sort(by_lo.begin(), by_lo.end(), [&](int a, int b) { return lo[a] < lo[b]; });

    // Sweeping past a regular interior vertex (one lower arc, no ties) moves the level
    // curve by an isotopy, so only breakpoints holding some other vertex need a recount.
    std::vector<std::uint8_t> recount(prof.breakpoints.size(), 0);
    for (int v = 0; v < static_cast<int>(s.vertex_count()); ++v) {
        bool regular = !s.is_boundary_vertex(v);
        if (regular) {
            const auto link = s.link(v);
            int changes = 0;
            bool prev = values[link.back()] > values[v];
            for (int w : link) {
                if (values[w] == values[v]) regular = false;
                const bool cur = values[w] > values[v];
                if (cur != prev) ++changes;
                prev = cur;
            }
            regular = regular && changes == 2;
        }
        if (!regular) recount[level(v)] = 1;
    }

    std::vector<int> active;
    std::vector<int> local(edges.size(), -1);
    LocalUnionFind uf;
    std::size_t next = 0;
    for (std::size_t i = 0; i < gaps; ++i) {
        if (i > 0 && !recount[i]) {
            prof.counts[i] = prof.counts[i - 1];
            continue;
        }
        const int gi = static_cast<int>(i);
        while (next < by_lo.size() && lo[by_lo[next]] <= gi) active.push_back(by_lo[next++]);
        std::erase_if(active, [&](int e) { return hi[e] <= gi; });
        prof.counts[i] = count_components(s, active, local, uf);
    }
    return prof;
}

double weighted_indicatrix_integral(const IndicatrixProfile& profile, const WeightFunction& u) {
    double total = 0.0;
    for (std::size_t i = 0; i < profile.counts.size(); ++i)
        if (profile.counts[i] > 0)
            total += static_cast<double>(profile.counts[i]) *
                     u.integral(profile.breakpoints[i], profile.breakpoints[i + 1]);
    return total;
}

double weighted_indicatrix_integral(const ScalarField& field, const WeightFunction& u) {
    return weighted_indicatrix_integral(indicatrix_profile(field), u);
}

std::size_t indicatrix_lhs(const Barcode& barcode, double t) {
    if (barcode.empty()) return 0;
    const double lo = barcode.min_endpoint();
    const double hi = barcode.boundary ? 0.0 : barcode.max_endpoint();
    std::size_t lhs = (t > lo && t <= hi) ? 1 : 0;
    for (const auto& b : barcode.bars)
        if (!b.infinite && (b.degree == 0 || b.degree == 1) && b.contains(t)) ++lhs;
    return lhs;
}

IndicatrixCheck check_indicatrix_inequality(const ScalarField& field, const Barcode& barcode,
                                            const std::vector<double>& samples) {
    IndicatrixCheck check;
    for (double t : samples) {
        const std::size_t beta = banach_indicatrix(field, t);
        const std::size_t lhs = indicatrix_lhs(barcode, t);
        ++check.samples;
        if (lhs == beta) ++check.equalities;
        if (lhs > beta) check.violations.push_back({t, lhs, beta});
    }
    return check;
}

std::vector<double> sample_regular_values(const ScalarField& field, std::size_t count, std::uint64_t seed) {
    const double lo = field.min_value();
    const double hi = field.max_value();
    if (!(lo < hi)) throw InvalidArgument("constant field has no regular values inside its range");
    std::vector<double> sorted(field.values().begin(), field.values().end());
    std::sort(sorted.begin(), sorted.end());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count) {
        const double t = dist(rng);
        if (t <= lo || t >= hi || std::binary_search(sorted.begin(), sorted.end(), t)) continue;
        out.push_back(t);
    }
    return out;
}

}  // namespace eigenbar
