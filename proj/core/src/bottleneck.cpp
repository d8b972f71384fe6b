#include "eigenbar/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dinic max-flow on small integer capacities.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

    int add_edge(int from, int to, int cap) {
        edges_.push_back({to, cap, head_[from]});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, 0, head_[to]});
        head_[to] = static_cast<int>(edges_.size()) - 1;
        return static_cast<int>(edges_.size()) - 2;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) flow += pushed;
        }
        return flow;
    }

    bool saturated(int edge) const { return edges_[edge].cap == 0; }

private:
    struct E {
        int to;
        int cap;
        int next;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int e = head_[v]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[v] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    int dfs(int v, int t, int limit) {
        if (v == t) return limit;
        for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
            auto& edge = edges_[e];
            if (edge.cap <= 0 || level_[edge.to] != level_[v] + 1) continue;
            if (int d = dfs(edge.to, t, std::min(limit, edge.cap))) {
                edge.cap -= d;
                edges_[e ^ 1].cap += d;
                return d;
            }
        }
        return 0;
    }

    std::vector<E> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

struct Split {
    std::vector<int> finite;
    std::vector<int> infinite;  // sorted by birth
};

Split split(const Barcode& b) {
    Split s;
    for (int i = 0; i < static_cast<int>(b.bars.size()); ++i) (b.bars[i].infinite ? s.infinite : s.finite).push_back(i);
    std::stable_sort(s.infinite.begin(), s.infinite.end(),
                     [&](int x, int y) { return b.bars[x].birth < b.bars[y].birth; });
    return s;
}

double half_length(const Bar& b) { return 0.5 * (b.death - b.birth); }

// Infinite bars matched in birth order, which is optimal on the line.
double infinite_cost(const Barcode& a, const Split& sa, const Barcode& b, const Split& sb) {
    if (sa.infinite.size() != sb.infinite.size()) return kInf;
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.infinite.size(); ++i)
        worst = std::max(worst, std::abs(a.bars[sa.infinite[i]].birth - b.bars[sb.infinite[i]].birth));
    return worst;
}

// Finite part as a flow problem. Left side: bars of `a` plus one diagonal copy per bar
// of `b`; right side: bars of `b` plus diagonal copies of bars of `a`. Diagonal copies
// pair freely with each other, so the right-hand copies collapse into one pool node.
std::optional<Matching> finite_matching(const Barcode& a, const Split& sa, const Barcode& b, const Split& sb,
                                        double eps) {
    const int m = static_cast<int>(sa.finite.size());
    const int k = static_cast<int>(sb.finite.size());
    const int source = 0;
    const int sink = 1;
    const auto a_node = [](int i) { return 2 + i; };
    const auto ld_node = [m](int j) { return 2 + m + j; };
    const auto b_node = [m, k](int j) { return 2 + m + k + j; };
    const int pool = 2 + m + 2 * k;
    FlowNetwork net(pool + 1);

    struct Tagged {
        int edge, i, j;
    };
    std::vector<Tagged> cross;
    std::vector<std::pair<int, int>> a_delete;  // (edge, i)
    std::vector<std::pair<int, int>> b_delete;  // (edge, j)
    for (int i = 0; i < m; ++i) {
        net.add_edge(source, a_node(i), 1);
        const Bar& x = a.bars[sa.finite[i]];
        for (int j = 0; j < k; ++j)
            if (pair_cost(x, b.bars[sb.finite[j]]) <= eps) cross.push_back({net.add_edge(a_node(i), b_node(j), 1), i, j});
        if (half_length(x) <= eps) a_delete.emplace_back(net.add_edge(a_node(i), pool, 1), i);
    }
    for (int j = 0; j < k; ++j) {
        net.add_edge(source, ld_node(j), 1);
        if (half_length(b.bars[sb.finite[j]]) <= eps) b_delete.emplace_back(net.add_edge(ld_node(j), b_node(j), 1), j);
        net.add_edge(ld_node(j), pool, 1);
        net.add_edge(b_node(j), sink, 1);
    }
    net.add_edge(pool, sink, m);
    if (net.max_flow(source, sink) != m + k) return std::nullopt;

    Matching out;
    for (const auto& c : cross)
        if (net.saturated(c.edge)) {
            out.pairs.emplace_back(sa.finite[c.i], sb.finite[c.j]);
            out.epsilon = std::max(out.epsilon, pair_cost(a.bars[sa.finite[c.i]], b.bars[sb.finite[c.j]]));
        }
    for (const auto& [edge, i] : a_delete)
        if (net.saturated(edge)) {
            out.deleted_a.push_back(sa.finite[i]);
            out.epsilon = std::max(out.epsilon, half_length(a.bars[sa.finite[i]]));
        }
    for (const auto& [edge, j] : b_delete)
        if (net.saturated(edge)) {
            out.deleted_b.push_back(sb.finite[j]);
            out.epsilon = std::max(out.epsilon, half_length(b.bars[sb.finite[j]]));
        }
    return out;
}

void append_infinite(Matching& m, const Barcode& a, const Split& sa, const Barcode& b, const Split& sb) {
    for (std::size_t i = 0; i < sa.infinite.size(); ++i) {
        m.pairs.emplace_back(sa.infinite[i], sb.infinite[i]);
        m.epsilon = std::max(m.epsilon, std::abs(a.bars[sa.infinite[i]].birth - b.bars[sb.infinite[i]].birth));
    }
}

}  // namespace

double pair_cost(const Bar& a, const Bar& b) {
    if (a.infinite != b.infinite) return kInf;
    const double db = std::abs(a.birth - b.birth);
    return a.infinite ? db : std::max(db, std::abs(a.death - b.death));
}

std::optional<Matching> epsilon_matching(const Barcode& a, const Barcode& b, double eps) {
    if (!(eps >= 0.0)) throw InvalidArgument("eps must be non-negative");
    const auto sa = split(a);
    const auto sb = split(b);
    if (infinite_cost(a, sa, b, sb) > eps) return std::nullopt;
    auto m = finite_matching(a, sa, b, sb, eps);
    if (m) append_infinite(*m, a, sa, b, sb);
    return m;
}

BottleneckResult bottleneck_with_matching(const Barcode& a, const Barcode& b) {
    const auto sa = split(a);
    const auto sb = split(b);
    const double inf_part = infinite_cost(a, sa, b, sb);
    if (inf_part == kInf) return {kInf, std::nullopt};

    std::vector<double> candidates{0.0};
    for (int i : sa.finite) {
        candidates.push_back(half_length(a.bars[i]));
        for (int j : sb.finite) candidates.push_back(pair_cost(a.bars[i], b.bars[j]));
    }
    for (int j : sb.finite) candidates.push_back(half_length(b.bars[j]));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Deleting every finite bar is feasible at the largest candidate.
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    std::optional<Matching> best = finite_matching(a, sa, b, sb, candidates[hi]);
    if (!best) throw InternalError("bottleneck search: largest candidate infeasible");
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (auto m = finite_matching(a, sa, b, sb, candidates[mid])) {
            best = std::move(m);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    append_infinite(*best, a, sa, b, sb);
    return {std::max(inf_part, candidates[lo]), std::move(best)};
}

double bottleneck_distance(const Barcode& a, const Barcode& b) { return bottleneck_with_matching(a, b).distance; }

}  // namespace eigenbar
