#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rbrcli {

// Flat key=value experiment description; '#' starts a comment.
struct ExperimentConfig {
    std::string dataset;              // edge-list path, or "powerlaw" to generate
    std::string name;                 // CSV dataset column; defaults from dataset
    std::string model = "cp:0.1";
    int rumor_top = 20;
    std::string rumor_file;
    std::string degree_kind = "out";
    std::vector<int> k_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                               11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    std::vector<std::string> algos = {"rbr", "greedy", "proximity", "random", "unblocking"};
    int greedy_sims = 2000;
    double delta2 = 0.1;
    double delta3 = 0.1;
    double big_n = 0.0;               // 0 -> node count
    std::uint64_t max_tuples = 50'000'000;
    std::uint64_t eval_count = 1'000'000;
    double eval_scale = 1.0;
    std::uint64_t master_seed = 42;
    std::string output = "results.csv";
    std::string seeds_dir;            // per-cell seed files when non-empty
    std::string mode = "normal";      // or "tuple_budget"
    std::vector<std::uint64_t> lstar_list;
    bool timings = true;
    int threads = 1;

    // powerlaw generator knobs
    std::int32_t gen_nodes = 2500;
    double gen_avg_deg = 10.4;
    double gen_exponent = 2.5;
    std::uint64_t gen_seed = 7;

    static ExperimentConfig parse(const std::string& path);
};

void run_experiment(const ExperimentConfig& config);

}  // namespace rbrcli
