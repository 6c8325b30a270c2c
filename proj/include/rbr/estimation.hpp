#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rbr/graph.hpp"
#include "rbr/rtuple.hpp"

namespace rbr {

// ln C(n, k), evaluated as sum_{i=1..k} (ln(n-k+i) - ln i).
double log_binomial(std::int64_t n, std::int64_t k);

// Tuple counts l_1..l_imax for the doubling search: imax = ceil(log2(n-1)),
// l_1 = ceil(2 * req / n) with req = n (2+delta) (ln N + ln C(n,k) +
// ln log2 n) / delta^2, and l_{i+1} = 2 l_i. Empty when n < 2.
std::vector<std::uint64_t> opt_tuple_schedule(std::int64_t n, int k, double delta,
                                              double big_n);

struct OptEstimate {
    double opt_star = 1.0;          // lower-bound estimate of the best f value
    int iterations = 0;             // doubling rounds executed
    std::uint64_t tuples_used = 0;
    bool triggered = false;         // false means the search fell back to 1
};

// Statistical lower bound for the best achievable f over k seeds: grows one
// sample set through the doubling schedule, greedily selects k nodes, and
// stops at the first iteration whose estimate n*F/l clears (1+delta) times
// the threshold n/2^i. Returns the estimate together with the grown set.
std::pair<OptEstimate, SampleSet> estimate_opt(const Graph& g,
                                               const std::vector<NodeId>& rumor_seeds,
                                               int k, double delta, double big_n,
                                               std::uint64_t seed, int threads = 1);

}  // namespace rbr
