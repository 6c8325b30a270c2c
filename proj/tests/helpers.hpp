#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rbr/graph.hpp"
#include "rbr/rng.hpp"

namespace testutil {

// Graph from (src, dst, p) triples; labels are used verbatim.
inline rbr::Graph make_graph(const std::vector<std::tuple<rbr::Label, rbr::Label, double>>& edges,
                             const std::vector<rbr::Label>& extra_nodes = {}) {
    std::vector<std::pair<rbr::Label, rbr::Label>> arcs;
    std::vector<double> probs;
    for (const auto& [u, v, p] : edges) {
        arcs.emplace_back(u, v);
        probs.push_back(p);
    }
    return rbr::Graph::build(arcs, probs, rbr::WeightingModel::from_file(), extra_nodes);
}

// Random graph for property tests: n nodes, roughly density*n*(n-1) edges,
// probabilities drawn from a mix of {0, 1, uniform}.
inline rbr::Graph random_graph(rbr::NodeId n, double density, rbr::Rng& rng,
                               bool atom_probs = true) {
    std::vector<std::tuple<rbr::Label, rbr::Label, double>> edges;
    std::vector<rbr::Label> nodes;
    for (rbr::NodeId u = 0; u < n; ++u) nodes.push_back(u);
    for (rbr::NodeId u = 0; u < n; ++u) {
        for (rbr::NodeId v = 0; v < n; ++v) {
            if (u == v || rng.unit() >= density) continue;
            double p = rng.unit();
            if (atom_probs) {
                double dice = rng.unit();
                if (dice < 0.15) p = 0.0;
                else if (dice < 0.3) p = 1.0;
            }
            edges.emplace_back(u, v, p);
        }
    }
    return make_graph(edges, nodes);
}

// Random graph with at most max_edges edges (for exact oracles).
inline rbr::Graph random_small_graph(rbr::NodeId n, int max_edges, rbr::Rng& rng) {
    std::vector<std::tuple<rbr::Label, rbr::Label, double>> edges;
    std::vector<rbr::Label> nodes;
    for (rbr::NodeId u = 0; u < n; ++u) nodes.push_back(u);
    std::vector<std::pair<rbr::NodeId, rbr::NodeId>> pairs;
    for (rbr::NodeId u = 0; u < n; ++u)
        for (rbr::NodeId v = 0; v < n; ++v)
            if (u != v) pairs.emplace_back(u, v);
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        std::swap(pairs[i], pairs[i + rng.below(static_cast<std::uint32_t>(pairs.size() - i))]);
    int m = std::min<int>(max_edges, static_cast<int>(pairs.size()));
    int take = static_cast<int>(rng.below(static_cast<std::uint32_t>(m + 1)));
    for (int i = 0; i < take; ++i) {
        double p = rng.unit();
        double dice = rng.unit();
        if (dice < 0.1) p = 0.0;
        else if (dice < 0.2) p = 1.0;
        edges.emplace_back(pairs[i].first, pairs[i].second, p);
    }
    return make_graph(edges, nodes);
}

// Two-sided two-sample Kolmogorov-Smirnov test on integer samples; true when
// the distributions are NOT distinguishable at significance alpha.
inline bool ks_same(std::vector<double> a, std::vector<double> b, double alpha = 1e-6) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double crit = std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((na + nb) / (na * nb));
    return d <= crit;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("rbrtest_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace testutil
