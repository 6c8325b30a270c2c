#include "rbr/coverage.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "rbr/errors.hpp"

namespace rbr {

namespace {

std::vector<std::uint8_t> eligibility(const SampleSet& set,
                                      const std::vector<NodeId>& forbidden, int k) {
    if (k < 1) throw std::invalid_argument("selection budget k must be positive");
    std::vector<std::uint8_t> eligible(set.node_count(), 1);
    for (NodeId u : forbidden) {
        if (u < 0 || u >= set.node_count())
            throw std::invalid_argument("forbidden node out of range: " + std::to_string(u));
        eligible[u] = 0;
    }
    if (std::find(eligible.begin(), eligible.end(), 1) == eligible.end())
        throw std::invalid_argument("every node is forbidden");
    return eligible;
}

struct Entry {
    std::uint64_t gain;
    NodeId node;
    int round;
};

struct EntryLess {
    bool operator()(const Entry& a, const Entry& b) const {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.node > b.node;
    }
};

}  // namespace

SelectionResult select_nodes(const SampleSet& set, int k,
                             const std::vector<NodeId>& forbidden) {
    std::vector<std::uint8_t> eligible = eligibility(set, forbidden, k);
    SelectionResult res;
    res.covered = set.unreachable_count();

    std::vector<std::uint64_t> cached(set.node_count(), 0);
    std::priority_queue<Entry, std::vector<Entry>, EntryLess> heap;
    for (NodeId u = 0; u < set.node_count(); ++u) {
        cached[u] = set.tuples_with(u).size();
        if (eligible[u] && cached[u] > 0) heap.push({cached[u], u, 0});
    }

    std::vector<std::uint8_t> hit(set.size(), 0);
    int round = 0;
    while (static_cast<int>(res.seeds.size()) < k && !heap.empty()) {
        Entry top = heap.top();
        heap.pop();
        if (!eligible[top.node]) continue;
        if (top.gain != cached[top.node]) continue;  // superseded duplicate
        if (top.round != round) {
            std::uint64_t gain = 0;
            for (std::uint32_t i : set.tuples_with(top.node))
                if (!hit[i]) ++gain;
            cached[top.node] = gain;
            if (gain > 0) heap.push({gain, top.node, round});
            continue;
        }
        if (top.gain == 0) break;
        eligible[top.node] = 0;
        res.seeds.push_back(top.node);
        res.gains.push_back(top.gain);
        res.covered += top.gain;
        for (std::uint32_t i : set.tuples_with(top.node)) hit[i] = 1;
        ++round;
    }
    return res;
}

SelectionResult select_nodes_naive(const SampleSet& set, int k,
                                   const std::vector<NodeId>& forbidden) {
    std::vector<std::uint8_t> eligible = eligibility(set, forbidden, k);
    SelectionResult res;
    res.covered = set.unreachable_count();
    std::vector<std::uint8_t> hit(set.size(), 0);
    for (int pick = 0; pick < k; ++pick) {
        NodeId best = -1;
        std::uint64_t best_gain = 0;
        for (NodeId u = 0; u < set.node_count(); ++u) {
            if (!eligible[u]) continue;
            std::uint64_t gain = 0;
            for (std::uint32_t i : set.tuples_with(u))
                if (!hit[i]) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = u;
            }
        }
        if (best < 0) break;
        eligible[best] = 0;
        res.seeds.push_back(best);
        res.gains.push_back(best_gain);
        res.covered += best_gain;
        for (std::uint32_t i : set.tuples_with(best)) hit[i] = 1;
    }
    return res;
}

std::uint64_t optimal_coverage_bruteforce(const SampleSet& set, int k,
                                          const std::vector<NodeId>& forbidden) {
    std::vector<std::uint8_t> eligible = eligibility(set, forbidden, k);
    if (k > kBruteChoiceLimit)
        throw GuardError("optimal_coverage_bruteforce: k " + std::to_string(k) +
                         " exceeds limit " + std::to_string(kBruteChoiceLimit));
    std::vector<NodeId> cand;
    for (NodeId u = 0; u < set.node_count(); ++u)
        if (eligible[u] && !set.tuples_with(u).empty()) cand.push_back(u);
    if (static_cast<int>(cand.size()) > kBruteCandidateLimit)
        throw GuardError("optimal_coverage_bruteforce: " + std::to_string(cand.size()) +
                         " candidates exceed limit " + std::to_string(kBruteCandidateLimit));

    const int take = std::min<int>(k, static_cast<int>(cand.size()));
    std::vector<std::uint8_t> hit(set.size(), 0);
    std::uint64_t best = set.unreachable_count();
    std::vector<int> pick(take);
    // Enumerates all size-take candidate subsets; coverage is monotone, so
    // smaller subsets never beat the best full-size one.
    auto coverage_of = [&](const std::vector<int>& sel) {
        std::fill(hit.begin(), hit.end(), 0);
        std::uint64_t covered = set.unreachable_count();
        for (int idx : sel)
            for (std::uint32_t i : set.tuples_with(cand[idx]))
                if (!hit[i]) {
                    hit[i] = 1;
                    ++covered;
                }
        return covered;
    };
    if (take == 0) return best;
    for (int i = 0; i < take; ++i) pick[i] = i;
    for (;;) {
        best = std::max(best, coverage_of(pick));
        int i = take - 1;
        while (i >= 0 && pick[i] == static_cast<int>(cand.size()) - take + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < take; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

}  // namespace rbr
