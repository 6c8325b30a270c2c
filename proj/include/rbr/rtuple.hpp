#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbr/diffusion.hpp"
#include "rbr/graph.hpp"
#include "rbr/rng.hpp"

namespace rbr {

// Outcome of one reverse probe from a root. nodes collects, level by level,
// everything the probe reached before (and excluding) the level at which it
// met a rumor seed; hit_rumor records whether a rumor seed was met at all.
// Placing a positive seed in nodes (or having hit_rumor false) is exactly
// what keeps the root out of rumor hands in a matching forward cascade.
struct RTuple {
    NodeId root = 0;
    bool hit_rumor = false;
    std::vector<NodeId> nodes;  // sorted ascending
    // Filled only when TupleOptions::record_edges is set: every edge whose
    // coin was flipped, split by outcome.
    std::vector<EdgeId> live_edges, blocked_edges;
};

struct TupleOptions {
    bool record_edges = false;
};

// Reverse probe from the given root: levels walk in-edges, each in-edge of a
// committed level whose source is not yet committed is flipped exactly once.
RTuple sample_rtuple_of(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                        NodeId root, Rng& rng, const TupleOptions& opts = {});

// Same, with the root drawn uniformly from all nodes.
RTuple sample_rtuple(const Graph& g, const std::vector<NodeId>& rumor_seeds, Rng& rng,
                     const TupleOptions& opts = {});

// Deterministic probe where edge presence comes from the realization instead
// of fresh coins.
RTuple rtuple_from_realization(const Realization& r, const std::vector<NodeId>& rumor_seeds,
                               NodeId root);

// 1 iff seeding S saves the tuple's root: the rumor never reaches it, or S
// intersects the strictly-closer node set.
bool covers(const std::vector<NodeId>& s, const RTuple& t);

// A batch of tuples with an inverted node -> tuple index over the tuples that
// selection can still influence (hit_rumor true). Batches generated through
// generate()/extend() draw tuple i from a stream derived from (seed, i), so
// the content is reproducible and independent of the worker count.
class SampleSet {
public:
    SampleSet(NodeId node_count, std::vector<RTuple> tuples);

    static SampleSet generate(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                              std::uint64_t count, std::uint64_t seed, int threads = 1,
                              const TupleOptions& opts = {});

    // Grows a generate()d set to new_total tuples, continuing its streams:
    // generate(n2) and generate(n1) + extend(n2) hold identical tuples.
    void extend(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                std::uint64_t new_total, int threads = 1);

    std::uint64_t size() const { return tuples_.size(); }
    NodeId node_count() const { return node_count_; }
    const std::vector<RTuple>& tuples() const { return tuples_; }
    const RTuple& tuple(std::uint64_t i) const { return tuples_[i]; }

    // Tuples the rumor cannot reach at all; covered by every seed set.
    std::uint64_t unreachable_count() const { return unreachable_; }

    // Indices of hit_rumor tuples whose node set contains u.
    const std::vector<std::uint32_t>& tuples_with(NodeId u) const { return index_[u]; }

    // Number of tuples covered by S (unreachable ones included).
    std::uint64_t coverage(const std::vector<NodeId>& s) const;

    // Total edge coins flipped while sampling this set.
    std::uint64_t edges_tested() const { return edges_tested_; }

    void save(const std::string& path) const;
    static SampleSet load(const std::string& path);

private:
    SampleSet() = default;

    void index_from(std::uint64_t first);

    NodeId node_count_ = 0;
    std::vector<RTuple> tuples_;
    std::vector<std::vector<std::uint32_t>> index_;
    std::uint64_t unreachable_ = 0;
    std::uint64_t edges_tested_ = 0;
    std::uint64_t seed_ = 0;
    TupleOptions opts_;
    bool extendable_ = false;
};

struct TupleEstimate {
    double f_estimate = 0.0;
    double f_stderr = 0.0;
    std::uint64_t covered = 0;
    std::uint64_t count = 0;
};

// Streaming n * coverage / count estimate of f(seeds) from count fresh
// tuples; identical to generating a SampleSet with the same seed and calling
// coverage(), but without keeping tuples in memory.
TupleEstimate estimate_f_tuples(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                                const std::vector<NodeId>& seeds, std::uint64_t count,
                                std::uint64_t seed, int threads = 1);

}  // namespace rbr
