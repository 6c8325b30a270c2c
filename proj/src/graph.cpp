#include "rbr/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "rbr/rng.hpp"

namespace rbr {

WeightingModel WeightingModel::constant(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("constant edge probability must be in [0, 1]");
    return {Kind::kConstant, p};
}

Graph Graph::build(const std::vector<std::pair<Label, Label>>& arcs,
                   const std::vector<double>& probs, const WeightingModel& model) {
    return build(arcs, probs, model, {});
}

Graph Graph::build(const std::vector<std::pair<Label, Label>>& arcs,
                   const std::vector<double>& probs, const WeightingModel& model,
                   const std::vector<Label>& extra_labels) {
    if (arcs.size() != probs.size())
        throw std::invalid_argument("arcs and probs length mismatch");

    Graph g;
    g.labels_.reserve(arcs.size());
    for (const auto& [u, v] : arcs) {
        g.labels_.push_back(u);
        g.labels_.push_back(v);
    }
    g.labels_.insert(g.labels_.end(), extra_labels.begin(), extra_labels.end());
    if (g.labels_.empty()) throw DataError("empty graph: no nodes");
    std::sort(g.labels_.begin(), g.labels_.end());
    g.labels_.erase(std::unique(g.labels_.begin(), g.labels_.end()), g.labels_.end());

    g.label_to_id_.reserve(g.labels_.size() * 2);
    for (NodeId i = 0; i < static_cast<NodeId>(g.labels_.size()); ++i)
        g.label_to_id_.emplace(g.labels_[i], i);

    const std::int64_t n = static_cast<std::int64_t>(g.labels_.size());
    std::unordered_set<std::int64_t> seen;
    seen.reserve(arcs.size() * 2);
    g.edges_.reserve(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        NodeId u = g.label_to_id_.at(arcs[i].first);
        NodeId v = g.label_to_id_.at(arcs[i].second);
        if (u == v) continue;
        if (!seen.insert(static_cast<std::int64_t>(u) * n + v).second) continue;
        g.edges_.push_back({u, v, probs[i]});
    }

    g.apply_model(model);
    g.build_adjacency();
    return g;
}

void Graph::apply_model(const WeightingModel& model) {
    switch (model.kind) {
        case WeightingModel::Kind::kFromFile:
            for (const Edge& e : edges_)
                if (!(e.p >= 0.0 && e.p <= 1.0))
                    throw DataError("edge probability outside [0, 1]");
            break;
        case WeightingModel::Kind::kConstant:
            for (Edge& e : edges_) e.p = model.value;
            break;
        case WeightingModel::Kind::kWeightedCascade: {
            std::vector<std::int32_t> indeg(labels_.size(), 0);
            for (const Edge& e : edges_) ++indeg[e.dst];
            for (Edge& e : edges_) e.p = 1.0 / indeg[e.dst];
            break;
        }
    }
}

void Graph::build_adjacency() {
    const NodeId n = node_count();
    out_start_.assign(n + 1, 0);
    in_start_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        ++out_start_[e.src + 1];
        ++in_start_[e.dst + 1];
    }
    for (NodeId i = 0; i < n; ++i) {
        out_start_[i + 1] += out_start_[i];
        in_start_[i + 1] += in_start_[i];
    }
    out_arcs_.assign(edges_.size(), {});
    in_arcs_.assign(edges_.size(), {});
    std::vector<std::int32_t> out_pos(out_start_.begin(), out_start_.end() - 1);
    std::vector<std::int32_t> in_pos(in_start_.begin(), in_start_.end() - 1);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[e];
        out_arcs_[out_pos[ed.src]++] = {ed.dst, e, ed.p};
        in_arcs_[in_pos[ed.dst]++] = {ed.src, e, ed.p};
    }
}

NodeId Graph::node_of_label(Label label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end())
        throw DataError("unknown node label: " + std::to_string(label));
    return it->second;
}

Graph Graph::reweighted(const WeightingModel& model) const {
    Graph g = *this;
    g.apply_model(model);
    g.build_adjacency();
    return g;
}

void Graph::validate() const {
    const NodeId n = node_count();
    if (out_start_.size() != static_cast<std::size_t>(n) + 1 ||
        in_start_.size() != static_cast<std::size_t>(n) + 1)
        throw DataError("adjacency offsets inconsistent with node count");
    std::unordered_set<std::int64_t> seen;
    for (const Edge& e : edges_) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw DataError("edge endpoint out of range");
        if (e.src == e.dst) throw DataError("self-loop present");
        if (!(e.p >= 0.0 && e.p <= 1.0)) throw DataError("edge probability outside [0, 1]");
        if (!seen.insert(static_cast<std::int64_t>(e.src) * n + e.dst).second)
            throw DataError("duplicate edge present");
    }
    std::int64_t out_total = 0, in_total = 0;
    for (NodeId u = 0; u < n; ++u) {
        for (const Arc& a : out_arcs(u)) {
            const Edge& e = edges_[a.edge];
            if (e.src != u || e.dst != a.node || e.p != a.p)
                throw DataError("out adjacency disagrees with edge array");
            out_total++;
        }
        for (const Arc& a : in_arcs(u)) {
            const Edge& e = edges_[a.edge];
            if (e.dst != u || e.src != a.node || e.p != a.p)
                throw DataError("in adjacency disagrees with edge array");
            in_total++;
        }
    }
    if (out_total != edge_count() || in_total != edge_count())
        throw DataError("adjacency size disagrees with edge count");
}

namespace {

Label parse_label(const std::string& tok, int line_no) {
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (errno != 0 || end != tok.c_str() + tok.size() || v < 0)
        throw DataError("line " + std::to_string(line_no) +
                        ": node label must be a non-negative integer, got '" + tok + "'");
    return static_cast<Label>(v);
}

double parse_prob(const std::string& tok, int line_no) {
    char* end = nullptr;
    errno = 0;
    double p = std::strtod(tok.c_str(), &end);
    if (errno != 0 || end != tok.c_str() + tok.size())
        throw DataError("line " + std::to_string(line_no) + ": bad probability '" + tok + "'");
    if (!(p >= 0.0 && p <= 1.0))
        throw DataError("line " + std::to_string(line_no) + ": probability " + tok +
                        " outside [0, 1]");
    return p;
}

}  // namespace

Graph load_edge_list(const std::string& path, const WeightingModel& model) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path);

    std::vector<std::pair<Label, Label>> arcs;
    std::vector<double> probs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::istringstream ss(line);
        std::string a, b, c, extra;
        if (!(ss >> a)) continue;
        if (!(ss >> b))
            throw DataError("line " + std::to_string(line_no) + ": expected 'src dst [prob]'");
        bool has_p = static_cast<bool>(ss >> c);
        if (ss >> extra)
            throw DataError("line " + std::to_string(line_no) + ": trailing tokens");
        arcs.emplace_back(parse_label(a, line_no), parse_label(b, line_no));
        if (has_p) {
            probs.push_back(parse_prob(c, line_no));
        } else {
            if (model.kind == WeightingModel::Kind::kFromFile)
                throw DataError("line " + std::to_string(line_no) +
                                ": probability column required");
            probs.push_back(0.0);
        }
    }
    if (arcs.empty()) throw DataError("empty graph: " + path);
    return Graph::build(arcs, probs, model);
}

void write_edge_list(const Graph& g, const std::string& path, bool with_probs) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write edge list: " + path);
    char buf[96];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (with_probs)
            std::snprintf(buf, sizeof(buf), "%" PRId64 " %" PRId64 " %.6f\n",
                          g.label_of(ed.src), g.label_of(ed.dst), ed.p);
        else
            std::snprintf(buf, sizeof(buf), "%" PRId64 " %" PRId64 "\n", g.label_of(ed.src),
                          g.label_of(ed.dst));
        out << buf;
    }
    if (!out) throw DataError("write failed: " + path);
}

Graph generate_power_law(NodeId n, double avg_out_degree, double exponent,
                         std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("node count must be at least 2");
    if (!(avg_out_degree > 0.0) || avg_out_degree > n - 1)
        throw std::invalid_argument("average out-degree must be in (0, n-1]");
    if (!(exponent > 1.0)) throw std::invalid_argument("exponent must exceed 1");

    const double beta = 1.0 / (exponent - 1.0);
    std::vector<double> w(n);
    double total = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        w[i] = std::pow(static_cast<double>(i) + 1.0, -beta);
        total += w[i];
    }
    const double scale = static_cast<double>(n) * avg_out_degree / total;
    for (NodeId i = 0; i < n; ++i) w[i] = std::min(w[i] * scale, static_cast<double>(n - 1));

    Rng rng(mix_seed(seed, kStreamGenerator));
    std::vector<std::pair<Label, Label>> arcs;
    arcs.reserve(static_cast<std::size_t>(n * avg_out_degree * 1.2) + 16);
    std::vector<std::int32_t> stamp(n, -1);
    std::vector<NodeId> pool;
    for (NodeId i = 0; i < n; ++i) {
        std::binomial_distribution<std::int32_t> deg(n - 1, w[i] / (n - 1));
        std::int32_t d = deg(rng.engine());
        if (d <= 0) continue;
        if (d * 2 < n) {
            for (std::int32_t picked = 0; picked < d;) {
                NodeId t = static_cast<NodeId>(rng.below(static_cast<std::uint32_t>(n)));
                if (t == i || stamp[t] == i) continue;
                stamp[t] = i;
                arcs.emplace_back(i, t);
                ++picked;
            }
        } else {
            pool.clear();
            for (NodeId t = 0; t < n; ++t)
                if (t != i) pool.push_back(t);
            for (std::int32_t j = 0; j < d; ++j) {
                std::uint32_t r = rng.below(static_cast<std::uint32_t>(pool.size() - j));
                std::swap(pool[j], pool[j + r]);
                arcs.emplace_back(i, pool[j]);
            }
        }
    }

    std::vector<Label> universe(n);
    for (NodeId i = 0; i < n; ++i) universe[i] = i;
    return Graph::build(arcs, std::vector<double>(arcs.size(), 0.0),
                        WeightingModel::from_file(), universe);
}

std::vector<NodeId> degree_top_k(const Graph& g, int k, DegreeKind kind) {
    if (k < 1 || k > g.node_count())
        throw std::invalid_argument("degree_top_k: k must be in [1, n]");
    std::vector<NodeId> order(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) order[i] = i;
    auto deg = [&](NodeId u) {
        switch (kind) {
            case DegreeKind::kOut: return g.out_degree(u);
            case DegreeKind::kIn: return g.in_degree(u);
            default: return g.out_degree(u) + g.in_degree(u);
        }
    };
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](NodeId a, NodeId b) {
                          std::int32_t da = deg(a), db = deg(b);
                          return da != db ? da > db : a < b;
                      });
    order.resize(k);
    return order;
}

}  // namespace rbr
