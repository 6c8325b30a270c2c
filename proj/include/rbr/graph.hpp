#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rbr/errors.hpp"

namespace rbr {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Label = std::int64_t;

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    double p = 0.0;
};

// How edge probabilities are assigned when a graph is built.
//   from_file  keep the per-edge value supplied with the edge
//   constant   p_e = c for every edge
//   weighted   p_(u,v) = 1 / in_degree(v)
struct WeightingModel {
    enum class Kind { kFromFile, kConstant, kWeightedCascade };

    static WeightingModel from_file() { return {Kind::kFromFile, 0.0}; }
    static WeightingModel constant(double p);
    static WeightingModel weighted_cascade() { return {Kind::kWeightedCascade, 0.0}; }

    Kind kind = Kind::kFromFile;
    double value = 0.0;
};

// Immutable directed graph. Nodes carry dense internal ids 0..n-1 assigned by
// ascending original label; edges keep their first-occurrence order, which
// fixes the edge-id meaning of realization masks and serialized samples.
class Graph {
public:
    // edges hold original labels in src/dst; self-loops are dropped, duplicate
    // (src, dst) pairs keep the first occurrence. Nodes are every label seen
    // as an endpoint, including endpoints of dropped self-loops.
    static Graph build(const std::vector<std::pair<Label, Label>>& arcs,
                       const std::vector<double>& probs, const WeightingModel& model);

    // extra_labels lists nodes that must exist even when isolated.
    static Graph build(const std::vector<std::pair<Label, Label>>& arcs,
                       const std::vector<double>& probs, const WeightingModel& model,
                       const std::vector<Label>& extra_labels);

    NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }
    EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    struct Arc {
        NodeId node = 0;  // the other endpoint
        EdgeId edge = 0;
        double p = 0.0;
    };

    std::span<const Arc> out_arcs(NodeId u) const {
        return {out_arcs_.data() + out_start_[u], out_arcs_.data() + out_start_[u + 1]};
    }
    std::span<const Arc> in_arcs(NodeId v) const {
        return {in_arcs_.data() + in_start_[v], in_arcs_.data() + in_start_[v + 1]};
    }

    std::int32_t out_degree(NodeId u) const { return out_start_[u + 1] - out_start_[u]; }
    std::int32_t in_degree(NodeId v) const { return in_start_[v + 1] - in_start_[v]; }

    Label label_of(NodeId u) const { return labels_[u]; }
    // DataError if the label is unknown.
    NodeId node_of_label(Label label) const;

    // Same structure, probabilities reassigned under another model.
    Graph reweighted(const WeightingModel& model) const;

    // Consistency check used by tests: adjacency matches the edge array,
    // probabilities are in [0, 1], no self-loops or duplicate arcs.
    void validate() const;

private:
    std::vector<Edge> edges_;
    std::vector<Label> labels_;
    std::unordered_map<Label, NodeId> label_to_id_;
    std::vector<std::int32_t> out_start_, in_start_;
    std::vector<Arc> out_arcs_, in_arcs_;

    void build_adjacency();
    void apply_model(const WeightingModel& model);
};

enum class DegreeKind { kOut, kIn, kTotal };

// Text format: one edge per line, "src dst" or "src dst prob", '#' starts a
// comment line, blank lines ignored. Labels are non-negative integers.
// model from_file requires the third column.
Graph load_edge_list(const std::string& path, const WeightingModel& model);

// Writes "src dst prob" lines (labels, prob with 6 decimals), or "src dst"
// when with_probs is false. Round-trips through load_edge_list.
void write_edge_list(const Graph& g, const std::string& path, bool with_probs = true);

// Random directed graph with power-law expected out-degrees: node i gets
// expected out-degree proportional to (i + 1)^(-1 / (exponent - 1)), scaled
// so the mean is avg_out_degree and capped at n - 1, with targets uniform.
// Every edge probability is 0; callers attach a model via reweighted().
Graph generate_power_law(NodeId n, double avg_out_degree, double exponent,
                         std::uint64_t seed);

// The k nodes with largest degree, ties to the smaller internal id.
std::vector<NodeId> degree_top_k(const Graph& g, int k, DegreeKind kind = DegreeKind::kOut);

}  // namespace rbr
