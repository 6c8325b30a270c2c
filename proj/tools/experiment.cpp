#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "common.hpp"
#include "rbr/baselines.hpp"
#include "rbr/errors.hpp"
#include "rbr/rbr.hpp"
#include "rbr/rtuple.hpp"

namespace rbrcli {

using rbr::DataError;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        std::string item = trim(s.substr(start, comma - start));
        if (!item.empty()) items.push_back(item);
        start = comma + 1;
    }
    return items;
}

std::int64_t parse_int(const std::string& v, int line_no) {
    char* end = nullptr;
    errno = 0;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (errno != 0 || end != v.c_str() + v.size())
        throw DataError("config line " + std::to_string(line_no) + ": bad integer '" + v + "'");
    return x;
}

double parse_real(const std::string& v, int line_no) {
    char* end = nullptr;
    errno = 0;
    double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end != v.c_str() + v.size())
        throw DataError("config line " + std::to_string(line_no) + ": bad number '" + v + "'");
    return x;
}

std::string default_name(const ExperimentConfig& c) {
    if (c.dataset == "powerlaw") return "powerlaw" + std::to_string(c.gen_nodes);
    return std::filesystem::path(c.dataset).stem().string();
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config: " + path);
    ExperimentConfig c;
    std::vector<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::string body = trim(line);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw DataError("config line " + std::to_string(line_no) + ": expected key=value");
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw DataError("config line " + std::to_string(line_no) + ": duplicate key '" +
                            key + "'");
        seen.push_back(key);

        if (key == "dataset") c.dataset = value;
        else if (key == "name") c.name = value;
        else if (key == "model") c.model = value;
        else if (key == "rumor_top") c.rumor_top = static_cast<int>(parse_int(value, line_no));
        else if (key == "rumor_file") c.rumor_file = value;
        else if (key == "degree_kind") c.degree_kind = value;
        else if (key == "k_list") {
            c.k_list.clear();
            for (const std::string& item : split_list(value))
                c.k_list.push_back(static_cast<int>(parse_int(item, line_no)));
        } else if (key == "algos") {
            c.algos = split_list(value);
        } else if (key == "greedy_sims") c.greedy_sims = static_cast<int>(parse_int(value, line_no));
        else if (key == "delta2") c.delta2 = parse_real(value, line_no);
        else if (key == "delta3") c.delta3 = parse_real(value, line_no);
        else if (key == "big_n") c.big_n = parse_real(value, line_no);
        else if (key == "max_tuples") c.max_tuples = static_cast<std::uint64_t>(parse_int(value, line_no));
        else if (key == "eval_count") c.eval_count = static_cast<std::uint64_t>(parse_int(value, line_no));
        else if (key == "eval_scale") c.eval_scale = parse_real(value, line_no);
        else if (key == "master_seed") c.master_seed = static_cast<std::uint64_t>(parse_int(value, line_no));
        else if (key == "output") c.output = value;
        else if (key == "seeds_dir") c.seeds_dir = value;
        else if (key == "mode") c.mode = value;
        else if (key == "lstar_list") {
            c.lstar_list.clear();
            for (const std::string& item : split_list(value))
                c.lstar_list.push_back(static_cast<std::uint64_t>(parse_int(item, line_no)));
        } else if (key == "timings") {
            if (value == "on") c.timings = true;
            else if (value == "off") c.timings = false;
            else throw DataError("config line " + std::to_string(line_no) +
                                 ": timings must be on or off");
        } else if (key == "threads") c.threads = static_cast<int>(parse_int(value, line_no));
        else if (key == "gen_nodes") c.gen_nodes = static_cast<std::int32_t>(parse_int(value, line_no));
        else if (key == "gen_avg_deg") c.gen_avg_deg = parse_real(value, line_no);
        else if (key == "gen_exponent") c.gen_exponent = parse_real(value, line_no);
        else if (key == "gen_seed") c.gen_seed = static_cast<std::uint64_t>(parse_int(value, line_no));
        else
            throw DataError("config line " + std::to_string(line_no) + ": unknown key '" +
                            key + "'");
    }
    if (c.dataset.empty()) throw DataError("config: dataset is required");
    if (c.k_list.empty()) throw DataError("config: k_list must not be empty");
    for (int k : c.k_list)
        if (k < 1) throw DataError("config: k values must be >= 1");
    if (c.eval_count < 1) throw DataError("config: eval_count must be >= 1");
    if (c.mode != "normal" && c.mode != "tuple_budget")
        throw DataError("config: mode must be normal or tuple_budget");
    if (c.mode == "tuple_budget" && c.lstar_list.empty())
        throw DataError("config: tuple_budget mode needs lstar_list");
    if (c.name.empty()) c.name = default_name(c);
    return c;
}

void run_experiment(const ExperimentConfig& c) {
    rbr::WeightingModel model = parse_model(c.model);
    rbr::Graph g = c.dataset == "powerlaw"
                       ? rbr::generate_power_law(c.gen_nodes, c.gen_avg_deg, c.gen_exponent,
                                                 c.gen_seed)
                             .reweighted(model)
                       : rbr::load_edge_list(c.dataset, model);
    std::vector<rbr::NodeId> rumor =
        resolve_rumor(g, c.rumor_file.empty() ? c.rumor_top : 0, c.rumor_file,
                      parse_degree_kind(c.degree_kind));

    std::cerr << "experiment: " << c.name << " n=" << g.node_count()
              << " m=" << g.edge_count() << " rumor=" << rumor.size() << "\n";

    const std::uint64_t eval_l = scaled_count(c.eval_count, c.eval_scale);
    double t0 = now_ms();
    rbr::SampleSet eval_set = rbr::SampleSet::generate(
        g, rumor, eval_l, rbr::mix_seed(c.master_seed, rbr::kStreamEvaluation), c.threads);
    std::cerr << "evaluation set: " << eval_l << " tuples, "
              << format_g6(now_ms() - t0) << " ms\n";

    if (!c.seeds_dir.empty()) std::filesystem::create_directories(c.seeds_dir);
    std::ofstream csv(c.output, std::ios::trunc);
    if (!csv) throw DataError("cannot write csv: " + c.output);
    csv << kCsvHeader << '\n';

    const double n = static_cast<double>(g.node_count());
    auto evaluate = [&](const std::vector<rbr::NodeId>& seeds) {
        std::uint64_t covered = eval_set.coverage(seeds);
        double phat = static_cast<double>(covered) / static_cast<double>(eval_l);
        return std::pair<double, double>(
            n * phat, n * std::sqrt(phat * (1.0 - phat) / static_cast<double>(eval_l)));
    };

    struct Cell {
        std::string algo;
        int k;
        std::uint64_t lstar;  // 0 outside tuple_budget mode
    };
    std::vector<Cell> cells;
    for (int k : c.k_list) {
        if (c.mode == "tuple_budget") {
            for (std::uint64_t l : c.lstar_list) cells.push_back({"rbr", k, l});
        } else {
            for (const std::string& algo : c.algos) cells.push_back({algo, k, 0});
        }
    }

    for (const Cell& cell : cells) {
        std::vector<rbr::NodeId> seeds;
        std::uint64_t tuples_used = 0;
        double t1 = now_ms();
        if (cell.algo == "rbr") {
            if (cell.lstar > 0) {
                rbr::RbrReport rep =
                    rbr::run_rbr_fixed_tuples(g, rumor, cell.k, cell.lstar, c.master_seed,
                                              c.threads);
                seeds = rep.seeds;
                tuples_used = rep.tuples_total;
            } else {
                rbr::RbrParams params;
                params.k = cell.k;
                params.delta2 = c.delta2;
                params.delta3 = c.delta3;
                params.big_n = c.big_n;
                params.max_tuples = c.max_tuples;
                params.threads = c.threads;
                rbr::RbrReport rep = rbr::run_rbr(g, rumor, params, c.master_seed);
                seeds = rep.seeds;
                tuples_used = rep.tuples_total;
            }
        } else if (cell.algo == "greedy") {
            seeds = rbr::greedy_mc(g, rumor, cell.k, c.greedy_sims, c.master_seed, c.threads);
        } else if (cell.algo == "proximity") {
            seeds = rbr::proximity_seeds(g, rumor, cell.k);
        } else if (cell.algo == "random") {
            seeds = rbr::random_seeds(g, rumor, cell.k, c.master_seed);
        } else if (cell.algo == "unblocking") {
            seeds.clear();
        } else {
            throw std::invalid_argument("unknown algorithm '" + cell.algo + "'");
        }
        double wall = now_ms() - t1;

        auto [f_est, f_se] = evaluate(seeds);
        CsvRow row;
        row.dataset = c.name;
        row.model = c.model;
        row.algo = cell.algo;
        row.k = cell.k;
        row.f_estimate = f_est;
        row.f_stderr = f_se;
        row.tuples_used = tuples_used;
        row.wall_ms = c.timings ? wall : 0.0;
        row.master_seed = c.master_seed;
        csv << csv_line(row) << '\n';

        if (!c.seeds_dir.empty()) {
            std::string file = c.name + "_" + cell.algo + "_k" + std::to_string(cell.k);
            if (cell.lstar > 0) file += "_l" + std::to_string(cell.lstar);
            file += ".txt";
            write_label_file((std::filesystem::path(c.seeds_dir) / file).string(),
                             nodes_to_labels(g, seeds));
        }
        std::cerr << "cell " << cell.algo << " k=" << cell.k;
        if (cell.lstar > 0) std::cerr << " l=" << cell.lstar;
        std::cerr << ": f=" << format_g6(f_est) << " wall_ms=" << format_g6(wall) << "\n";
    }
    if (!csv) throw DataError("write failed: " + c.output);
}

}  // namespace rbrcli
