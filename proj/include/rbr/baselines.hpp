#pragma once

#include <cstdint>
#include <vector>

#include "rbr/graph.hpp"

namespace rbr {

// Greedy seed selection scored by Monte Carlo: each round adds the candidate
// whose estimated f (over sims fresh cascades) is largest, ties to the
// smaller node id. Rumor seeds are never candidates. Estimates draw from
// streams keyed by (seed, round, candidate), so results do not depend on the
// thread count.
std::vector<NodeId> greedy_mc(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                              int k, int sims, std::uint64_t seed, int threads = 1);

// Out-neighbors of the rumor seeds (rumor seeds excluded), highest node id
// first; topped up with the highest-id remaining non-rumor nodes when fewer
// than k exist.
std::vector<NodeId> proximity_seeds(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                                    int k);

// k distinct non-rumor nodes, uniformly at random.
std::vector<NodeId> random_seeds(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                                 int k, std::uint64_t seed);

}  // namespace rbr
