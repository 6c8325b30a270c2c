#pragma once

#include <cstdint>
#include <vector>

#include "rbr/graph.hpp"
#include "rbr/rng.hpp"

namespace rbr {

// Deterministic edge mask: edge e exists iff present[e] != 0.
struct Realization {
    const Graph* graph = nullptr;
    std::vector<std::uint8_t> present;
};

// Keeps edge e with probability p_e, independently.
Realization sample_realization(const Graph& g, Rng& rng);

enum class NodeState : std::uint8_t { kInactive, kRumor, kPositive };

struct DiffusionOutcome {
    static constexpr std::int32_t kNever = -1;
    std::vector<NodeState> state;
    std::vector<std::int32_t> round;  // activation round, kNever when inactive
};

// Competitive cascade on a fixed realization. Both cascades advance one hop
// per round through present edges; a node reached by both in the same round
// becomes Rumor. States are final once set. Seed sets must be disjoint.
DiffusionOutcome diffuse_on_realization(const Realization& r,
                                        const std::vector<NodeId>& rumor_seeds,
                                        const std::vector<NodeId>& positive_seeds);

// Per-node flag: true iff the node does NOT end up Rumor, decided purely by
// live-path distances (dist from positive seeds strictly smaller than dist
// from rumor seeds, or rumor cannot reach at all).
std::vector<std::uint8_t> rumor_free_by_distance(const Realization& r,
                                                 const std::vector<NodeId>& rumor_seeds,
                                                 const std::vector<NodeId>& positive_seeds);

// Mean count of non-Rumor nodes over independent cascades. Trial i draws its
// coins from a stream derived from (seed, i), so the value does not depend on
// the thread count.
double estimate_f_monte_carlo(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                              const std::vector<NodeId>& positive_seeds,
                              std::int64_t trials, std::uint64_t seed, int threads = 1);

inline constexpr EdgeId kExactEdgeLimit = 20;

// Expected count of non-Rumor nodes by full enumeration of edge subsets.
// GuardError when the graph has more than kExactEdgeLimit edges.
double exact_f(const Graph& g, const std::vector<NodeId>& rumor_seeds,
               const std::vector<NodeId>& positive_seeds);

}  // namespace rbr
