#include "rbr/rbr.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rbr/coverage.hpp"

namespace rbr {

namespace {

constexpr double kGreedyFactor = 1.0 - 1.0 / 2.718281828459045235;

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::uint64_t ceil_to_u64(double x) {
    if (x <= 0.0) return 0;
    return static_cast<std::uint64_t>(std::ceil(x));
}

void check_deltas(double d1, double d2) {
    if (!(d1 > 0.0 && d1 < 1.0) || !(d2 > 0.0 && d2 < 1.0))
        throw std::invalid_argument("deltas must be in (0, 1)");
    if (!(d2 - kGreedyFactor * d1 > 0.0))
        throw std::invalid_argument("infeasible deltas: delta2 must exceed (1-1/e)*delta1");
}

}  // namespace

double choose_delta1(double delta2, std::int64_t n, int k, double big_n) {
    if (!(delta2 > 0.0 && delta2 < 1.0))
        throw std::invalid_argument("delta2 must be in (0, 1)");
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (!(big_n >= 1.0)) throw std::invalid_argument("confidence parameter must be >= 1");

    const double log_n_conf = std::log(big_n);
    const double log_choose = log_n_conf + log_binomial(n, k);
    const double nd = static_cast<double>(n);
    auto demand = [&](double d1) {
        double d = delta2 - kGreedyFactor * d1;
        double l1 = 2.0 * nd * log_n_conf / (d1 * d1);
        double l2 = (2.0 + d) * nd * log_choose / (d * d);
        return std::max(l1, l2);
    };

    const double hi = std::min(delta2 / kGreedyFactor, 1.0);
    double best = delta2 < hi ? delta2 : hi * 0.5;
    double best_demand = demand(best);
    for (int j = 1; j <= 1000; ++j) {
        double d1 = hi * static_cast<double>(j) / 1001.0;
        double v = demand(d1);
        if (v < best_demand || (v == best_demand && d1 < best)) {
            best_demand = v;
            best = d1;
        }
    }
    return best;
}

SampleSizes sample_sizes(std::int64_t n, int k, double delta1, double delta2,
                         double big_n, double opt_star) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (!(big_n >= 1.0)) throw std::invalid_argument("confidence parameter must be >= 1");
    if (!(opt_star > 0.0)) throw std::invalid_argument("opt_star must be positive");
    check_deltas(delta1, delta2);
    const double nd = static_cast<double>(n);
    const double d = delta2 - kGreedyFactor * delta1;
    SampleSizes s;
    s.l1 = ceil_to_u64(2.0 * nd * std::log(big_n) / (delta1 * delta1 * opt_star));
    s.l2 = ceil_to_u64((2.0 + d) * nd * (std::log(big_n) + log_binomial(n, k)) /
                       (d * d * opt_star));
    s.l_star = std::max(s.l1, s.l2);
    return s;
}

RbrReport run_rbr(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                  const RbrParams& params, std::uint64_t master_seed) {
    const std::int64_t n = g.node_count();
    const double big_n = params.big_n > 0.0 ? params.big_n : static_cast<double>(n);
    if (params.k < 1 || params.k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (!(params.delta3 > 0.0 && params.delta3 < 1.0))
        throw std::invalid_argument("delta3 must be in (0, 1)");

    RbrReport rep;
    rep.k = params.k;
    rep.delta2 = params.delta2;
    rep.delta3 = params.delta3;
    rep.big_n = big_n;

    double t0 = now_ms();
    auto [opt, est_set] =
        estimate_opt(g, rumor_seeds, params.k, params.delta3, big_n, master_seed,
                     params.threads);
    rep.opt = opt;
    rep.wall_ms_estimation = now_ms() - t0;
    rep.edges_tested = est_set.edges_tested();

    rep.delta1_used =
        params.delta1 ? *params.delta1 : choose_delta1(params.delta2, n, params.k, big_n);
    rep.sizes = sample_sizes(n, params.k, rep.delta1_used, params.delta2, big_n,
                             opt.opt_star);
    std::uint64_t l = rep.sizes.l_star;
    if (l > params.max_tuples) {
        l = params.max_tuples;
        rep.clamped = true;
        rep.sizes.l_star = l;
    }
    if (l < 1) l = rep.sizes.l_star = 1;

    t0 = now_ms();
    SampleSet final_set = SampleSet::generate(g, rumor_seeds, l,
                                              mix_seed(master_seed, kStreamSelection),
                                              params.threads);
    rep.wall_ms_sampling = now_ms() - t0;

    t0 = now_ms();
    SelectionResult sel = select_nodes(final_set, params.k);
    rep.wall_ms_selection = now_ms() - t0;

    rep.seeds = sel.seeds;
    rep.coverage_estimate = static_cast<double>(n) * static_cast<double>(sel.covered) /
                            static_cast<double>(l);
    rep.tuples_total = opt.tuples_used + l;
    rep.edges_tested += final_set.edges_tested();
    return rep;
}

RbrReport run_rbr_fixed_tuples(const Graph& g, const std::vector<NodeId>& rumor_seeds,
                               int k, std::uint64_t l_star, std::uint64_t master_seed,
                               int threads) {
    const std::int64_t n = g.node_count();
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (l_star < 1) throw std::invalid_argument("tuple budget must be positive");

    RbrReport rep;
    rep.k = k;
    rep.big_n = static_cast<double>(n);
    rep.sizes.l_star = l_star;
    rep.opt.opt_star = 0.0;

    double t0 = now_ms();
    SampleSet set = SampleSet::generate(g, rumor_seeds, l_star,
                                        mix_seed(master_seed, kStreamSelection), threads);
    rep.wall_ms_sampling = now_ms() - t0;

    t0 = now_ms();
    SelectionResult sel = select_nodes(set, k);
    rep.wall_ms_selection = now_ms() - t0;

    rep.seeds = sel.seeds;
    rep.coverage_estimate = static_cast<double>(n) * static_cast<double>(sel.covered) /
                            static_cast<double>(l_star);
    rep.tuples_total = l_star;
    rep.edges_tested = set.edges_tested();
    return rep;
}

std::string report_key_values(const RbrReport& rep, const Graph& g,
                              bool include_timings) {
    std::string out;
    char buf[160];
    auto add = [&](const char* key, const char* fmt, auto value) {
        int len = std::snprintf(buf, sizeof(buf), "%s=", key);
        out.append(buf, len);
        len = std::snprintf(buf, sizeof(buf), fmt, value);
        out.append(buf, len);
        out.push_back('\n');
    };
    add("algo", "%s", "rbr");
    add("n", "%d", g.node_count());
    add("m", "%d", g.edge_count());
    add("k", "%d", rep.k);
    add("delta1", "%.6g", rep.delta1_used);
    add("delta2", "%.6g", rep.delta2);
    add("delta3", "%.6g", rep.delta3);
    add("big_n", "%.6g", rep.big_n);
    add("opt_star", "%.6g", rep.opt.opt_star);
    add("opt_triggered", "%d", rep.opt.triggered ? 1 : 0);
    add("opt_iterations", "%d", rep.opt.iterations);
    add("opt_tuples", "%llu", static_cast<unsigned long long>(rep.opt.tuples_used));
    add("l1", "%llu", static_cast<unsigned long long>(rep.sizes.l1));
    add("l2", "%llu", static_cast<unsigned long long>(rep.sizes.l2));
    add("l_star", "%llu", static_cast<unsigned long long>(rep.sizes.l_star));
    add("clamped", "%d", rep.clamped ? 1 : 0);
    add("tuples_total", "%llu", static_cast<unsigned long long>(rep.tuples_total));
    add("edges_tested", "%llu", static_cast<unsigned long long>(rep.edges_tested));
    std::string seeds;
    for (std::size_t i = 0; i < rep.seeds.size(); ++i) {
        if (i) seeds.push_back(',');
        seeds += std::to_string(g.label_of(rep.seeds[i]));
    }
    add("seeds", "%s", seeds.c_str());
    add("coverage_estimate", "%.6g", rep.coverage_estimate);
    if (include_timings) {
        add("wall_ms_estimation", "%.3f", rep.wall_ms_estimation);
        add("wall_ms_sampling", "%.3f", rep.wall_ms_sampling);
        add("wall_ms_selection", "%.3f", rep.wall_ms_selection);
    }
    return out;
}

}  // namespace rbr
