#include "rbr/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "rbr/diffusion.hpp"
#include "rbr/parallel.hpp"
#include "rbr/rng.hpp"

namespace rbr {

namespace {

std::vector<std::uint8_t> rumor_mask(const Graph& g, const std::vector<NodeId>& rumor) {
    std::vector<std::uint8_t> mask(g.node_count(), 0);
    for (NodeId u : rumor) {
        if (u < 0 || u >= g.node_count())
            throw std::invalid_argument("rumor seed out of range: " + std::to_string(u));
        mask[u] = 1;
    }
    return mask;
}

}  // namespace

std::vector<NodeId> greedy_mc(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                              int k, int sims, std::uint64_t seed, int threads) {
    if (k < 0) throw std::invalid_argument("budget k must be non-negative");
    if (sims < 1) throw std::invalid_argument("sims must be positive");
    std::vector<std::uint8_t> is_rumor = rumor_mask(g, rumor_seeds);
    const std::uint64_t base = mix_seed(seed, kStreamGreedyMc);

    std::vector<NodeId> candidates;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (!is_rumor[u]) candidates.push_back(u);

    std::vector<NodeId> selected;
    for (int round = 0; round < k && !candidates.empty(); ++round) {
        std::vector<double> score(candidates.size());
        parallel_chunks(candidates.size(), threads,
                        [&](int, std::uint64_t begin, std::uint64_t end) {
                            std::vector<NodeId> with = selected;
                            with.push_back(0);
                            for (std::uint64_t i = begin; i < end; ++i) {
                                with.back() = candidates[i];
                                std::uint64_t stream = mix_seed(
                                    base, (static_cast<std::uint64_t>(round) << 32) |
                                              static_cast<std::uint32_t>(candidates[i]));
                                score[i] = estimate_f_monte_carlo(g, rumor_seeds, with,
                                                                  sims, stream, 1);
                            }
                        });
        std::size_t best = 0;
        for (std::size_t i = 1; i < score.size(); ++i)
            if (score[i] > score[best]) best = i;
        selected.push_back(candidates[best]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return selected;
}

std::vector<NodeId> proximity_seeds(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                                    int k) {
    if (k < 0) throw std::invalid_argument("budget k must be non-negative");
    std::vector<std::uint8_t> is_rumor = rumor_mask(g, rumor_seeds);
    std::vector<std::uint8_t> taken(g.node_count(), 0);
    std::vector<NodeId> neighbors;
    for (NodeId u : rumor_seeds)
        for (const Graph::Arc& a : g.out_arcs(u))
            if (!is_rumor[a.node] && !taken[a.node]) {
                taken[a.node] = 1;
                neighbors.push_back(a.node);
            }
    std::sort(neighbors.begin(), neighbors.end(), std::greater<NodeId>());

    std::vector<NodeId> seeds;
    for (NodeId u : neighbors) {
        if (static_cast<int>(seeds.size()) >= k) break;
        seeds.push_back(u);
    }
    for (NodeId u = g.node_count() - 1; u >= 0 && static_cast<int>(seeds.size()) < k; --u)
        if (!is_rumor[u] && !taken[u]) seeds.push_back(u);
    return seeds;
}

std::vector<NodeId> random_seeds(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                                 int k, std::uint64_t seed) {
    if (k < 0) throw std::invalid_argument("budget k must be non-negative");
    std::vector<std::uint8_t> is_rumor = rumor_mask(g, rumor_seeds);
    std::vector<NodeId> pool;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (!is_rumor[u]) pool.push_back(u);
    if (k > static_cast<int>(pool.size()))
        throw std::invalid_argument("budget k exceeds the number of non-rumor nodes");
    Rng rng(mix_seed(seed, kStreamBaseline));
    std::vector<NodeId> seeds;
    seeds.reserve(k);
    for (int i = 0; i < k; ++i) {
        std::uint32_t r = rng.below(static_cast<std::uint32_t>(pool.size() - i));
        std::swap(pool[i], pool[i + r]);
        seeds.push_back(pool[i]);
    }
    return seeds;
}

}  // namespace rbr
