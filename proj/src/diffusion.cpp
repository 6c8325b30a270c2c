#include "rbr/diffusion.hpp"

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "rbr/parallel.hpp"

namespace rbr {

namespace {

void check_seed_sets(const Graph& g, const std::vector<NodeId>& rumor,
                     const std::vector<NodeId>& positive) {
    std::vector<std::uint8_t> is_rumor(g.node_count(), 0);
    for (NodeId u : rumor) {
        if (u < 0 || u >= g.node_count())
            throw std::invalid_argument("rumor seed out of range: " + std::to_string(u));
        is_rumor[u] = 1;
    }
    for (NodeId u : positive) {
        if (u < 0 || u >= g.node_count())
            throw std::invalid_argument("positive seed out of range: " + std::to_string(u));
        if (is_rumor[u])
            throw std::invalid_argument("seed sets overlap at node " + std::to_string(u));
    }
}

// Reusable workspace for repeated cascades; stamps avoid O(n) clears.
struct Cascade {
    const Graph& g;
    std::vector<std::int32_t> mark;
    std::vector<std::uint8_t> rumor;
    std::vector<NodeId> frontier_r, frontier_p, next_r, next_p;
    std::int32_t cur = 0;

    explicit Cascade(const Graph& g)
        : g(g), mark(g.node_count(), -1), rumor(g.node_count(), 0) {}

    // live(edge_id, p) decides edge presence. Returns the rumor-activated
    // count; fills out when non-null.
    template <class Live>
    std::int32_t run(const std::vector<NodeId>& rumor_seeds,
                     const std::vector<NodeId>& positive_seeds, Live&& live,
                     DiffusionOutcome* out) {
        ++cur;
        std::int32_t rumor_count = 0;
        if (out) {
            out->state.assign(g.node_count(), NodeState::kInactive);
            out->round.assign(g.node_count(), DiffusionOutcome::kNever);
        }
        frontier_r.clear();
        frontier_p.clear();
        for (NodeId u : rumor_seeds) {
            if (mark[u] == cur) continue;
            mark[u] = cur;
            rumor[u] = 1;
            ++rumor_count;
            frontier_r.push_back(u);
            if (out) {
                out->state[u] = NodeState::kRumor;
                out->round[u] = 0;
            }
        }
        for (NodeId u : positive_seeds) {
            if (mark[u] == cur) continue;
            mark[u] = cur;
            rumor[u] = 0;
            frontier_p.push_back(u);
            if (out) {
                out->state[u] = NodeState::kPositive;
                out->round[u] = 0;
            }
        }
        std::int32_t round = 0;
        while (!frontier_r.empty() || !frontier_p.empty()) {
            ++round;
            next_r.clear();
            next_p.clear();
            for (NodeId u : frontier_r) {
                for (const Graph::Arc& a : g.out_arcs(u)) {
                    if (mark[a.node] == cur) continue;
                    if (!live(a.edge, a.p)) continue;
                    mark[a.node] = cur;
                    rumor[a.node] = 1;
                    ++rumor_count;
                    next_r.push_back(a.node);
                    if (out) {
                        out->state[a.node] = NodeState::kRumor;
                        out->round[a.node] = round;
                    }
                }
            }
            for (NodeId u : frontier_p) {
                for (const Graph::Arc& a : g.out_arcs(u)) {
                    if (mark[a.node] == cur) continue;
                    if (!live(a.edge, a.p)) continue;
                    mark[a.node] = cur;
                    rumor[a.node] = 0;
                    next_p.push_back(a.node);
                    if (out) {
                        out->state[a.node] = NodeState::kPositive;
                        out->round[a.node] = round;
                    }
                }
            }
            frontier_r.swap(next_r);
            frontier_p.swap(next_p);
        }
        return rumor_count;
    }
};

constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

std::vector<std::int32_t> live_distances(const Realization& r,
                                         const std::vector<NodeId>& sources) {
    const Graph& g = *r.graph;
    std::vector<std::int32_t> dist(g.node_count(), kUnreached);
    std::vector<NodeId> frontier, next;
    for (NodeId u : sources) {
        if (dist[u] != kUnreached) continue;
        dist[u] = 0;
        frontier.push_back(u);
    }
    std::int32_t d = 0;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (NodeId u : frontier) {
            for (const Graph::Arc& a : g.out_arcs(u)) {
                if (!r.present[a.edge] || dist[a.node] != kUnreached) continue;
                dist[a.node] = d;
                next.push_back(a.node);
            }
        }
        frontier.swap(next);
    }
    return dist;
}

}  // namespace

Realization sample_realization(const Graph& g, Rng& rng) {
    Realization r;
    r.graph = &g;
    r.present.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        r.present[e] = rng.unit() < g.edge(e).p ? 1 : 0;
    return r;
}

DiffusionOutcome diffuse_on_realization(const Realization& r,
                                        const std::vector<NodeId>& rumor_seeds,
                                        const std::vector<NodeId>& positive_seeds) {
    const Graph& g = *r.graph;
    check_seed_sets(g, rumor_seeds, positive_seeds);
    DiffusionOutcome out;
    Cascade cascade(g);
    cascade.run(rumor_seeds, positive_seeds,
                [&](EdgeId e, double) { return r.present[e] != 0; }, &out);
    return out;
}

std::vector<std::uint8_t> rumor_free_by_distance(const Realization& r,
                                                 const std::vector<NodeId>& rumor_seeds,
                                                 const std::vector<NodeId>& positive_seeds) {
    const Graph& g = *r.graph;
    check_seed_sets(g, rumor_seeds, positive_seeds);
    std::vector<std::int32_t> dr = live_distances(r, rumor_seeds);
    std::vector<std::int32_t> dp = live_distances(r, positive_seeds);
    std::vector<std::uint8_t> free(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        free[u] = (dr[u] == kUnreached || dp[u] < dr[u]) ? 1 : 0;
    return free;
}

double estimate_f_monte_carlo(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                              const std::vector<NodeId>& positive_seeds,
                              std::int64_t trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    check_seed_sets(g, rumor_seeds, positive_seeds);
    threads = std::max(1, threads);
    std::vector<std::int64_t> partial(threads, 0);
    std::vector<std::unique_ptr<Cascade>> work(threads);
    parallel_chunks(static_cast<std::uint64_t>(trials), threads,
                    [&](int worker, std::uint64_t begin, std::uint64_t end) {
                        if (!work[worker]) work[worker] = std::make_unique<Cascade>(g);
                        Cascade& cascade = *work[worker];
                        std::int64_t sum = 0;
                        for (std::uint64_t i = begin; i < end; ++i) {
                            Rng rng(mix_seed(seed, i));
                            std::int32_t rumored = cascade.run(
                                rumor_seeds, positive_seeds,
                                [&](EdgeId, double p) { return rng.unit() < p; }, nullptr);
                            sum += g.node_count() - rumored;
                        }
                        partial[worker] += sum;
                    });
    std::int64_t total = 0;
    for (std::int64_t s : partial) total += s;
    return static_cast<double>(total) / static_cast<double>(trials);
}

double exact_f(const Graph& g, const std::vector<NodeId>& rumor_seeds,
               const std::vector<NodeId>& positive_seeds) {
    if (g.edge_count() > kExactEdgeLimit)
        throw GuardError("exact_f: graph has " + std::to_string(g.edge_count()) +
                         " edges, enumeration is limited to " +
                         std::to_string(kExactEdgeLimit));
    check_seed_sets(g, rumor_seeds, positive_seeds);
    const EdgeId m = g.edge_count();
    Cascade cascade(g);
    double value = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double pr = 1.0;
        for (EdgeId e = 0; e < m; ++e) {
            double p = g.edge(e).p;
            pr *= (mask >> e) & 1 ? p : 1.0 - p;
        }
        if (pr == 0.0) continue;
        std::int32_t rumored =
            cascade.run(rumor_seeds, positive_seeds,
                        [&](EdgeId e, double) { return ((mask >> e) & 1) != 0; }, nullptr);
        value += pr * static_cast<double>(g.node_count() - rumored);
    }
    return value;
}

}  // namespace rbr
