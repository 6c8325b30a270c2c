#include "rbr/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "rbr/coverage.hpp"

namespace rbr {

double log_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("log_binomial: need 0 <= k <= n");
    double sum = 0.0;
    for (std::int64_t i = 1; i <= k; ++i)
        sum += std::log(static_cast<double>(n - k + i)) - std::log(static_cast<double>(i));
    return sum;
}

std::vector<std::uint64_t> opt_tuple_schedule(std::int64_t n, int k, double delta,
                                              double big_n) {
    if (n < 1) throw std::invalid_argument("node count must be positive");
    if (k < 1 || k > n) throw std::invalid_argument("budget k must be in [1, n]");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
    if (!(big_n >= 1.0)) throw std::invalid_argument("confidence parameter must be >= 1");
    if (n < 2) return {};
    const double nd = static_cast<double>(n);
    const double req = nd * (2.0 + delta) *
                       (std::log(big_n) + log_binomial(n, k) + std::log(std::log2(nd))) /
                       (delta * delta);
    const int imax = static_cast<int>(std::ceil(std::log2(nd - 1.0)));
    std::vector<std::uint64_t> schedule;
    schedule.reserve(imax);
    std::uint64_t l = static_cast<std::uint64_t>(std::ceil(2.0 * req / nd));
    if (l < 1) l = 1;
    for (int i = 1; i <= imax; ++i) {
        schedule.push_back(l);
        l *= 2;
    }
    return schedule;
}

std::pair<OptEstimate, SampleSet> estimate_opt(const Graph& g,
                                               const std::vector<NodeId>& rumor_seeds,
                                               int k, double delta, double big_n,
                                               std::uint64_t seed, int threads) {
    const std::int64_t n = g.node_count();
    std::vector<std::uint64_t> schedule = opt_tuple_schedule(n, k, delta, big_n);
    SampleSet set = SampleSet::generate(g, rumor_seeds, 0,
                                        mix_seed(seed, kStreamEstimation), threads);
    OptEstimate est;
    const double nd = static_cast<double>(n);
    double threshold = nd;
    for (std::uint64_t l : schedule) {
        threshold /= 2.0;
        set.extend(g, rumor_seeds, l, threads);
        ++est.iterations;
        SelectionResult sel = select_nodes(set, k);
        double value = nd * static_cast<double>(sel.covered) / static_cast<double>(l);
        if (value >= (1.0 + delta) * threshold) {
            est.opt_star = value / (1.0 + delta);
            est.triggered = true;
            break;
        }
    }
    est.tuples_used = set.size();
    return {est, std::move(set)};
}

}  // namespace rbr
