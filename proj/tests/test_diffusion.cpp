#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rbr/diffusion.hpp"
#include "rbr/errors.hpp"
#include "rbr/graph.hpp"
#include "rbr/rng.hpp"

using namespace rbr;
using testutil::make_graph;

namespace {

int count_non_rumor(const DiffusionOutcome& out) {
    int c = 0;
    for (auto s : out.state)
        if (s != NodeState::kRumor) ++c;
    return c;
}

// Independent BFS over live edges from a seed set.
std::vector<std::int32_t> bfs_distance(const Realization& r, const std::vector<NodeId>& seeds) {
    const Graph& g = *r.graph;
    std::vector<std::int32_t> dist(g.node_count(), -1);
    std::queue<NodeId> q;
    for (NodeId s : seeds) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (const auto& a : g.out_arcs(u)) {
            if (!r.present[a.edge] || dist[a.node] >= 0) continue;
            dist[a.node] = dist[u] + 1;
            q.push(a.node);
        }
    }
    return dist;
}

}  // namespace

TEST_CASE("realization keeps each edge with its own probability") {
    Graph g = make_graph({{0, 1, 0.0}, {1, 2, 0.3}, {2, 3, 0.7}, {3, 0, 1.0}});
    const int trials = 20000;
    std::vector<int> kept(g.edge_count(), 0);
    Rng rng(991);
    for (int t = 0; t < trials; ++t) {
        Realization r = sample_realization(g, rng);
        REQUIRE(r.present.size() == static_cast<std::size_t>(g.edge_count()));
        for (EdgeId e = 0; e < g.edge_count(); ++e) kept[e] += r.present[e] ? 1 : 0;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        double p = g.edge(e).p;
        double freq = static_cast<double>(kept[e]) / trials;
        double slack = 4.0 * std::sqrt(std::max(p * (1 - p), 1e-12) / trials);
        CHECK(std::abs(freq - p) <= std::max(slack, 1e-9));
    }
}

TEST_CASE("simultaneous arrival resolves to rumor") {
    // v3 -> v5 and v4 -> v5, both certain; both cascades reach v5 in round 1.
    Graph g = make_graph({{3, 5, 1.0}, {4, 5, 1.0}});
    NodeId v3 = g.node_of_label(3), v4 = g.node_of_label(4), v5 = g.node_of_label(5);
    Rng rng(1);
    Realization r = sample_realization(g, rng);
    DiffusionOutcome out = diffuse_on_realization(r, {v4}, {v3});
    CHECK(out.state[v4] == NodeState::kRumor);
    CHECK(out.state[v3] == NodeState::kPositive);
    CHECK(out.state[v5] == NodeState::kRumor);
    CHECK(out.round[v5] == 1);
    CHECK(out.round[v4] == 0);
    CHECK(out.round[v3] == 0);
}

TEST_CASE("a closer positive seed shields downstream nodes") {
    Graph g = make_graph({{0, 1, 1.0}, {1, 2, 1.0}});
    NodeId a = g.node_of_label(0), b = g.node_of_label(1), c = g.node_of_label(2);
    Rng rng(2);
    Realization r = sample_realization(g, rng);
    DiffusionOutcome out = diffuse_on_realization(r, {a}, {b});
    CHECK(out.state[a] == NodeState::kRumor);
    CHECK(out.state[b] == NodeState::kPositive);
    CHECK(out.state[c] == NodeState::kPositive);
    CHECK(out.round[c] == 1);
}

TEST_CASE("states are absorbing on a cycle") {
    Graph g = make_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
    Rng rng(3);
    Realization r = sample_realization(g, rng);
    DiffusionOutcome out = diffuse_on_realization(r, {g.node_of_label(0)}, {g.node_of_label(2)});
    // Rumor takes node 1 in round 1; node 2 and node 0 never switch.
    CHECK(out.state[g.node_of_label(0)] == NodeState::kRumor);
    CHECK(out.state[g.node_of_label(1)] == NodeState::kRumor);
    CHECK(out.state[g.node_of_label(2)] == NodeState::kPositive);
}

TEST_CASE("seed validation") {
    Graph g = make_graph({{0, 1, 0.5}});
    Rng rng(4);
    Realization r = sample_realization(g, rng);
    CHECK_THROWS_AS(diffuse_on_realization(r, {0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(diffuse_on_realization(r, {-1}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(diffuse_on_realization(r, {0}, {7}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_f_monte_carlo(g, {0}, {0}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(exact_f(g, {0}, {0}), std::invalid_argument);
}

TEST_CASE("distance rule marks ties as rumor and unreachable as safe") {
    Graph g = make_graph({{3, 5, 1.0}, {4, 5, 1.0}}, {9});
    NodeId v3 = g.node_of_label(3), v4 = g.node_of_label(4), v5 = g.node_of_label(5);
    NodeId v9 = g.node_of_label(9);
    Rng rng(5);
    Realization r = sample_realization(g, rng);
    auto safe = rumor_free_by_distance(r, {v4}, {v3});
    CHECK(safe[v4] == 0);
    CHECK(safe[v3] == 1);
    CHECK(safe[v5] == 0);  // equal distances: rumor wins
    CHECK(safe[v9] == 1);  // rumor never reaches it
}

TEST_CASE("distance rule matches the cascade on random realizations") {
    Rng rng(607);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        Graph g = testutil::random_graph(8, 0.3, rng);
        std::vector<NodeId> rumor = {static_cast<NodeId>(rng.below(8))};
        NodeId pos = static_cast<NodeId>(rng.below(8));
        if (pos == rumor[0]) continue;
        std::vector<NodeId> positive = {pos};
        Realization r = sample_realization(g, rng);
        DiffusionOutcome out = diffuse_on_realization(r, rumor, positive);
        auto safe = rumor_free_by_distance(r, rumor, positive);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            CHECK((out.state[u] != NodeState::kRumor) == (safe[u] != 0));
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("rumor-only activation rounds equal live BFS distances") {
    Rng rng(608);
    for (int it = 0; it < 50; ++it) {
        Graph g = testutil::random_graph(10, 0.25, rng);
        std::vector<NodeId> rumor = {static_cast<NodeId>(rng.below(10)),
                                     static_cast<NodeId>(rng.below(10))};
        if (rumor[0] == rumor[1]) rumor.pop_back();
        Realization r = sample_realization(g, rng);
        DiffusionOutcome out = diffuse_on_realization(r, rumor, {});
        auto dist = bfs_distance(r, rumor);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (dist[u] < 0) {
                CHECK(out.state[u] == NodeState::kInactive);
                CHECK(out.round[u] == DiffusionOutcome::kNever);
            } else {
                CHECK(out.state[u] == NodeState::kRumor);
                CHECK(out.round[u] == dist[u]);
            }
        }
    }
}

TEST_CASE("exact value on hand-checked graphs") {
    SUBCASE("single risky edge") {
        Graph g = make_graph({{0, 1, 0.3}});
        CHECK(exact_f(g, {0}, {}) == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(exact_f(g, {0}, {1}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two-hop chain") {
        // 0 ->(0.5) 1 ->(0.5) 2: P(1 rumor)=0.5, P(2 rumor)=0.25.
        Graph g = make_graph({{0, 1, 0.5}, {1, 2, 0.5}});
        CHECK(exact_f(g, {0}, {}) == doctest::Approx(2.0 - 0.5 - 0.25).epsilon(1e-12));
        // Blocking node 1 saves both.
        CHECK(exact_f(g, {0}, {1}) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("race through distinct paths") {
        // Rumor 0 -> 2 (p=1) in one hop; positive 1 -> 2 (p=1) same hop: tie.
        Graph g = make_graph({{0, 2, 1.0}, {1, 2, 1.0}});
        CHECK(exact_f(g, {0}, {1}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("no rumor seeds saves everything") {
        Graph g = make_graph({{0, 1, 1.0}, {1, 2, 1.0}});
        CHECK(exact_f(g, {}, {0}) == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("exact value refuses large edge sets") {
    Rng rng(9);
    Graph g = testutil::random_graph(12, 0.3, rng);
    REQUIRE(g.edge_count() > kExactEdgeLimit);
    CHECK_THROWS_AS(exact_f(g, {0}, {1}), GuardError);
}

TEST_CASE("monte carlo agrees with exact enumeration") {
    Rng rng(11);
    int done = 0;
    for (int it = 0; it < 40 && done < 12; ++it) {
        Graph g = testutil::random_small_graph(6, 10, rng);
        if (g.edge_count() > kExactEdgeLimit) continue;
        std::vector<NodeId> rumor = {static_cast<NodeId>(rng.below(6))};
        NodeId pos = static_cast<NodeId>(rng.below(6));
        std::vector<NodeId> positive;
        if (pos != rumor[0]) positive.push_back(pos);
        double truth = exact_f(g, rumor, positive);
        const std::int64_t trials = 60000;
        double est = estimate_f_monte_carlo(g, rumor, positive, trials, 1000 + it);
        // Worst-case spread of a count in [0, n].
        double sigma = 0.5 * g.node_count() / std::sqrt(static_cast<double>(trials));
        CHECK(std::abs(est - truth) <= 4.0 * sigma + 1e-9);
        ++done;
    }
    CHECK(done == 12);
}

TEST_CASE("monte carlo is thread-count invariant and seed sensitive") {
    Rng rng(13);
    Graph g = testutil::random_graph(30, 0.08, rng);
    std::vector<NodeId> rumor = {0, 1};
    std::vector<NodeId> positive = {2, 3};
    double a = estimate_f_monte_carlo(g, rumor, positive, 5000, 77, 1);
    double b = estimate_f_monte_carlo(g, rumor, positive, 5000, 77, 4);
    CHECK(a == b);
    double c = estimate_f_monte_carlo(g, rumor, positive, 5000, 78, 1);
    CHECK(a != c);
}

TEST_CASE("online cascade and sampled realizations draw the same distribution") {
    Rng rng(17);
    Graph g = testutil::random_graph(12, 0.2, rng);
    std::vector<NodeId> rumor = {0, 1};
    std::vector<NodeId> positive = {2};
    const int samples = 4000;
    std::vector<double> online, offline;
    for (int i = 0; i < samples; ++i)
        online.push_back(estimate_f_monte_carlo(g, rumor, positive, 1, mix_seed(400, i)));
    Rng roff(19);
    for (int i = 0; i < samples; ++i) {
        Realization r = sample_realization(g, roff);
        offline.push_back(count_non_rumor(diffuse_on_realization(r, rumor, positive)));
    }
    CHECK(testutil::ks_same(online, offline));
}

TEST_CASE("exact value is monotone and diminishing in the protected set") {
    Rng rng(23);
    int graphs = 0;
    for (int it = 0; it < 60 && graphs < 15; ++it) {
        Graph g = testutil::random_small_graph(5, 9, rng);
        if (g.edge_count() > 12) continue;
        ++graphs;
        std::vector<NodeId> rumor = {0};
        auto value = [&](std::uint32_t mask) {
            std::vector<NodeId> pos;
            for (NodeId v = 1; v < 4; ++v)
                if (mask & (1u << v)) pos.push_back(v);
            return exact_f(g, rumor, pos);
        };
        const NodeId extra = 4;
        for (std::uint32_t s = 0; s < 16; s += 2) {         // subsets of {1,2,3}, even mask
            for (std::uint32_t t = s; t < 16; t += 2) {
                if ((s & t) != s || (t & 14u) != t || (s & 14u) != s) continue;
                CHECK(value(t) >= value(s) - 1e-9);
                std::vector<NodeId> ps, pt;
                for (NodeId v = 1; v < 4; ++v) {
                    if (s & (1u << v)) ps.push_back(v);
                    if (t & (1u << v)) pt.push_back(v);
                }
                ps.push_back(extra);
                pt.push_back(extra);
                double gain_s = exact_f(g, rumor, ps) - value(s);
                double gain_t = exact_f(g, rumor, pt) - value(t);
                CHECK(gain_s >= gain_t - 1e-9);
            }
        }
    }
    CHECK(graphs == 15);
}
