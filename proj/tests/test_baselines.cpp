#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rbr/baselines.hpp"
#include "rbr/diffusion.hpp"
#include "rbr/graph.hpp"
#include "rbr/rng.hpp"

using namespace rbr;
using testutil::make_graph;

TEST_CASE("monte carlo greedy finds the obvious blocker") {
    Graph g = make_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    auto seeds = greedy_mc(g, {0}, 1, 300, 17);
    CHECK(seeds == std::vector<NodeId>{1});
}

TEST_CASE("monte carlo greedy respects the budget and candidates") {
    Graph g = make_graph({{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    CHECK(greedy_mc(g, {0}, 0, 100, 17).empty());
    auto all = greedy_mc(g, {0}, 10, 50, 17);
    CHECK(all.size() == 3);
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<NodeId>{1, 2, 3});
    CHECK_THROWS_AS(greedy_mc(g, {0}, 1, 0, 17), std::invalid_argument);
    CHECK_THROWS_AS(greedy_mc(g, {9}, 1, 10, 17), std::invalid_argument);
}

TEST_CASE("monte carlo greedy picks are near-greedy under the exact objective") {
    Rng rng(113);
    const int sims = 20000;
    int done = 0;
    for (int it = 0; it < 50 && done < 6; ++it) {
        Graph g = testutil::random_small_graph(6, 10, rng);
        if (g.edge_count() > 12) continue;
        std::vector<NodeId> rumor = {static_cast<NodeId>(rng.below(6))};
        auto picks = greedy_mc(g, rumor, 2, sims, 500 + it);
        double sigma = 0.5 * g.node_count() / std::sqrt(static_cast<double>(sims));
        std::vector<NodeId> chosen;
        for (NodeId pick : picks) {
            double best = 0.0;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (v == rumor[0]) continue;
                if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
                std::vector<NodeId> with = chosen;
                with.push_back(v);
                best = std::max(best, exact_f(g, rumor, with));
            }
            chosen.push_back(pick);
            CHECK(exact_f(g, rumor, chosen) >= best - 6.0 * sigma);
        }
        ++done;
    }
    CHECK(done == 6);
}

TEST_CASE("monte carlo greedy is reproducible and thread-count invariant") {
    Rng rng(127);
    Graph g = testutil::random_graph(15, 0.15, rng);
    auto a = greedy_mc(g, {0, 1}, 3, 200, 99, 1);
    auto b = greedy_mc(g, {0, 1}, 3, 200, 99, 3);
    CHECK(a == b);
    auto c = greedy_mc(g, {0, 1}, 3, 200, 99, 1);
    CHECK(a == c);
}

TEST_CASE("proximity takes rumor neighbors by descending id, then tops up") {
    Graph g = make_graph({{0, 5, 0.5}, {0, 7, 0.5}, {1, 2, 0.5}}, {3, 4, 6});
    SUBCASE("neighbors only") {
        CHECK(proximity_seeds(g, {0}, 2) == std::vector<NodeId>{7, 5});
    }
    SUBCASE("top-up from the highest ids") {
        CHECK(proximity_seeds(g, {0}, 4) == std::vector<NodeId>{7, 5, 6, 4});
    }
    SUBCASE("short when the graph runs out") {
        CHECK(proximity_seeds(g, {0}, 20).size() == 7u);
    }
    SUBCASE("rumor seeds are excluded even as neighbors") {
        Graph h = make_graph({{0, 1, 0.5}, {1, 0, 0.5}});
        CHECK(proximity_seeds(h, {0, 1}, 2).empty());
    }
    CHECK_THROWS_AS(proximity_seeds(g, {0}, -1), std::invalid_argument);
}

TEST_CASE("random seeds are uniform over the candidate pool") {
    Graph g = make_graph({{0, 1, 0.5}}, {2, 3, 4, 5, 6, 7, 8, 9});
    const int draws = 20000;
    std::vector<int> seen(g.node_count(), 0);
    for (int i = 0; i < draws; ++i) {
        auto s = random_seeds(g, {0}, 1, 3000 + i);
        REQUIRE(s.size() == 1u);
        CHECK(s[0] != 0);
        ++seen[s[0]];
    }
    const double p = 1.0 / 9.0;
    const double slack = 4.0 * std::sqrt(p * (1 - p) / draws);
    for (NodeId u = 1; u < g.node_count(); ++u)
        CHECK(std::abs(static_cast<double>(seen[u]) / draws - p) <= slack);
}

TEST_CASE("random seeds are distinct, reproducible, and guarded") {
    Graph g = make_graph({{0, 1, 0.5}}, {2, 3, 4});
    auto a = random_seeds(g, {0}, 4, 12);
    CHECK(a.size() == 4u);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted == std::vector<NodeId>{1, 2, 3, 4});
    CHECK(random_seeds(g, {0}, 4, 12) == a);
    CHECK(random_seeds(g, {0}, 0, 12).empty());
    CHECK_THROWS_AS(random_seeds(g, {0}, 5, 12), std::invalid_argument);
}
