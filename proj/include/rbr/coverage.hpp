#pragma once

#include <cstdint>
#include <vector>

#include "rbr/rtuple.hpp"

namespace rbr {

struct SelectionResult {
    std::vector<NodeId> seeds;          // in pick order
    std::vector<std::uint64_t> gains;   // marginal coverage of each pick
    std::uint64_t covered = 0;          // total, unreachable tuples included
};

// Greedy max-coverage over the sample set with lazy gain re-evaluation.
// Stops early once no remaining node adds coverage, so it may return fewer
// than k seeds. Ties break toward the smaller node id; the output is
// pick-for-pick identical to select_nodes_naive.
SelectionResult select_nodes(const SampleSet& set, int k,
                             const std::vector<NodeId>& forbidden = {});

// Reference implementation that recomputes every gain each round.
SelectionResult select_nodes_naive(const SampleSet& set, int k,
                                   const std::vector<NodeId>& forbidden = {});

inline constexpr int kBruteCandidateLimit = 20;
inline constexpr int kBruteChoiceLimit = 4;

// Best coverage achievable with at most k non-forbidden nodes, by exhaustive
// enumeration. GuardError when more than kBruteCandidateLimit useful
// candidates exist or k exceeds kBruteChoiceLimit.
std::uint64_t optimal_coverage_bruteforce(const SampleSet& set, int k,
                                          const std::vector<NodeId>& forbidden = {});

}  // namespace rbr
