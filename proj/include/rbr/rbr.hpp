#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbr/estimation.hpp"
#include "rbr/graph.hpp"
#include "rbr/rtuple.hpp"

namespace rbr {

struct RbrParams {
    int k = 1;
    std::optional<double> delta1;    // picked by choose_delta1 when absent
    double delta2 = 0.1;
    double delta3 = 0.1;
    double big_n = 0.0;              // <= 0 means: use the node count
    std::uint64_t max_tuples = 50'000'000;
    int threads = 1;
};

struct SampleSizes {
    std::uint64_t l1 = 0;
    std::uint64_t l2 = 0;
    std::uint64_t l_star = 0;  // max(l1, l2)
};

// delta1 minimizing the final tuple demand max(l1, l2), found on a 1000-point
// grid over the feasible interval (0, min(delta2/(1-1/e), 1)) with delta2
// itself added as a candidate; ties go to the smaller value.
double choose_delta1(double delta2, std::int64_t n, int k, double big_n);

// l1 = ceil(2 n ln N / (delta1^2 opt_star)),
// l2 = ceil((2 + d) n (ln N + ln C(n,k)) / (d^2 opt_star))
// with d = delta2 - (1-1/e) delta1, which must be positive.
SampleSizes sample_sizes(std::int64_t n, int k, double delta1, double delta2,
                         double big_n, double opt_star);

struct RbrReport {
    int k = 0;
    double delta1_used = 0.0, delta2 = 0.0, delta3 = 0.0, big_n = 0.0;
    OptEstimate opt;
    SampleSizes sizes;
    bool clamped = false;            // l_star hit max_tuples
    std::vector<NodeId> seeds;
    double coverage_estimate = 0.0;  // n * covered / l_star on the final set
    std::uint64_t tuples_total = 0;  // estimation + final
    std::uint64_t edges_tested = 0;
    double wall_ms_estimation = 0.0, wall_ms_sampling = 0.0, wall_ms_selection = 0.0;
};

// Full pipeline: bound the optimum, size the final sample, draw it fresh
// (estimation and final tuples come from disjoint seed namespaces), select
// greedily.
RbrReport run_rbr(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                  const RbrParams& params, std::uint64_t master_seed);

// Selection over an externally fixed tuple budget; skips the estimation and
// sizing stages.
RbrReport run_rbr_fixed_tuples(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                               int k, std::uint64_t l_star, std::uint64_t master_seed,
                               int threads = 1);

// Flat key=value lines; seed ids are reported as original labels.
std::string report_key_values(const RbrReport& report, const Graph& g,
                              bool include_timings = true);

}  // namespace rbr
