#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "common.hpp"
#include "experiment.hpp"
#include "rbr/baselines.hpp"
#include "rbr/errors.hpp"
#include "rbr/rbr.hpp"

namespace {

using namespace rbrcli;

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void print_kv(const char* key, const std::string& value) {
    std::cout << key << '=' << value << '\n';
}

struct GenerateArgs {
    std::int32_t nodes = 0;
    double avg_deg = 0.0;
    double exponent = 2.5;
    std::uint64_t seed = 7;
    std::string output;
    std::string model;
};

void cmd_generate(const GenerateArgs& a) {
    rbr::Graph g = rbr::generate_power_law(a.nodes, a.avg_deg, a.exponent, a.seed);
    if (!a.model.empty()) {
        g = g.reweighted(parse_model(a.model));
        rbr::write_edge_list(g, a.output, true);
    } else {
        rbr::write_edge_list(g, a.output, false);
    }
    std::cerr << "generated n=" << g.node_count() << " m=" << g.edge_count() << " -> "
              << a.output << "\n";
}

struct RumorArgs {
    int top = 0;
    std::string file;
    std::string degree_kind = "out";
};

struct RunArgs {
    std::string input;
    std::string model = "file";
    RumorArgs rumor;
    std::string algo = "rbr";
    int k = 1;
    std::optional<double> delta1;
    double delta2 = 0.1;
    double delta3 = 0.1;
    double big_n = 0.0;
    std::uint64_t max_tuples = 50'000'000;
    std::uint64_t lstar = 0;
    int sims = 2000;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string timings = "on";
    bool pad = false;
    std::string eval = "tuple";
    std::uint64_t eval_count = 1'000'000;
    double eval_scale = 1.0;
    std::string save_seeds;
    std::string csv;
    std::string dataset_name;
};

std::pair<double, double> mc_eval(const rbr::Graph& g, const std::vector<rbr::NodeId>& rumor,
                                  const std::vector<rbr::NodeId>& seeds,
                                  std::uint64_t trials, std::uint64_t seed) {
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        double x = rbr::estimate_f_monte_carlo(g, rumor, seeds, 1, rbr::mix_seed(seed, i), 1);
        double d = x - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (x - mean);
    }
    double var = trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(trials))};
}

void pad_seeds(const rbr::Graph& g, const std::vector<rbr::NodeId>& rumor,
               std::vector<rbr::NodeId>& seeds, int k) {
    std::vector<std::uint8_t> used(g.node_count(), 0);
    for (rbr::NodeId u : rumor) used[u] = 1;
    for (rbr::NodeId u : seeds) used[u] = 1;
    for (rbr::NodeId u = 0; u < g.node_count() && static_cast<int>(seeds.size()) < k; ++u)
        if (!used[u]) seeds.push_back(u);
}

void cmd_run(const RunArgs& a) {
    if (a.timings != "on" && a.timings != "off")
        throw std::invalid_argument("--timings must be on or off");
    const bool timings = a.timings == "on";
    rbr::Graph g = rbr::load_edge_list(a.input, parse_model(a.model));
    std::vector<rbr::NodeId> rumor =
        resolve_rumor(g, a.rumor.top, a.rumor.file, parse_degree_kind(a.rumor.degree_kind));

    std::vector<rbr::NodeId> seeds;
    std::uint64_t tuples_used = 0;
    double wall = 0.0;
    if (a.algo == "rbr") {
        rbr::RbrReport rep;
        double t0 = now_ms();
        if (a.lstar > 0) {
            rep = rbr::run_rbr_fixed_tuples(g, rumor, a.k, a.lstar, a.seed, a.threads);
        } else {
            rbr::RbrParams params;
            params.k = a.k;
            params.delta1 = a.delta1;
            params.delta2 = a.delta2;
            params.delta3 = a.delta3;
            params.big_n = a.big_n;
            params.max_tuples = a.max_tuples;
            params.threads = a.threads;
            rep = rbr::run_rbr(g, rumor, params, a.seed);
        }
        wall = now_ms() - t0;
        seeds = rep.seeds;
        tuples_used = rep.tuples_total;
        std::cout << rbr::report_key_values(rep, g, timings);
    } else if (a.algo == "greedy") {
        double t0 = now_ms();
        seeds = rbr::greedy_mc(g, rumor, a.k, a.sims, a.seed, a.threads);
        wall = now_ms() - t0;
        print_kv("algo", "greedy");
        print_kv("k", std::to_string(a.k));
        print_kv("sims", std::to_string(a.sims));
    } else if (a.algo == "proximity") {
        double t0 = now_ms();
        seeds = rbr::proximity_seeds(g, rumor, a.k);
        wall = now_ms() - t0;
        print_kv("algo", "proximity");
        print_kv("k", std::to_string(a.k));
    } else if (a.algo == "random") {
        double t0 = now_ms();
        seeds = rbr::random_seeds(g, rumor, a.k, a.seed);
        wall = now_ms() - t0;
        print_kv("algo", "random");
        print_kv("k", std::to_string(a.k));
    } else if (a.algo == "unblocking") {
        print_kv("algo", "unblocking");
        print_kv("k", std::to_string(a.k));
    } else {
        throw std::invalid_argument("unknown algorithm '" + a.algo + "'");
    }

    if (a.pad) pad_seeds(g, rumor, seeds, a.k);
    if (a.algo != "rbr") {
        std::string s;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(g.label_of(seeds[i]));
        }
        print_kv("seeds", s);
        if (timings) print_kv("wall_ms_algo", format_g6(wall));
    }
    std::cerr << "algo " << a.algo << " wall_ms=" << format_g6(wall) << "\n";

    double f_est = 0.0, f_se = 0.0;
    if (a.eval != "none") {
        std::uint64_t count = scaled_count(a.eval_count, a.eval_scale);
        if (a.eval == "tuple") {
            rbr::TupleEstimate est = rbr::estimate_f_tuples(
                g, rumor, seeds, count, rbr::mix_seed(a.seed, rbr::kStreamEvaluation),
                a.threads);
            f_est = est.f_estimate;
            f_se = est.f_stderr;
        } else if (a.eval == "mc") {
            std::tie(f_est, f_se) =
                mc_eval(g, rumor, seeds, count, rbr::mix_seed(a.seed, rbr::kStreamEvaluation));
        } else {
            throw std::invalid_argument("unknown eval method '" + a.eval + "'");
        }
        print_kv("eval_method", a.eval);
        print_kv("eval_count", std::to_string(scaled_count(a.eval_count, a.eval_scale)));
        print_kv("f_estimate", format_g6(f_est));
        print_kv("f_stderr", format_g6(f_se));
    }

    if (!a.save_seeds.empty()) write_label_file(a.save_seeds, nodes_to_labels(g, seeds));
    if (!a.csv.empty()) {
        if (a.eval == "none")
            throw std::invalid_argument("--csv needs an evaluation method");
        CsvRow row;
        row.dataset = a.dataset_name.empty()
                          ? std::filesystem::path(a.input).stem().string()
                          : a.dataset_name;
        row.model = a.model;
        row.algo = a.algo;
        row.k = a.k;
        row.f_estimate = f_est;
        row.f_stderr = f_se;
        row.tuples_used = tuples_used;
        row.wall_ms = timings ? wall : 0.0;
        row.master_seed = a.seed;
        append_csv(a.csv, row);
    }
}

struct EvaluateArgs {
    std::string input;
    std::string model = "file";
    RumorArgs rumor;
    std::string seeds_file;
    std::string method = "tuple";
    std::uint64_t count = 1'000'000;
    double eval_scale = 1.0;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string tuples_cache;
};

void cmd_evaluate(const EvaluateArgs& a) {
    rbr::Graph g = rbr::load_edge_list(a.input, parse_model(a.model));
    std::vector<rbr::NodeId> rumor =
        resolve_rumor(g, a.rumor.top, a.rumor.file, parse_degree_kind(a.rumor.degree_kind));
    std::vector<rbr::NodeId> seeds;
    if (!a.seeds_file.empty()) seeds = labels_to_nodes(g, read_label_file(a.seeds_file));
    {
        std::vector<std::uint8_t> is_rumor(g.node_count(), 0);
        for (rbr::NodeId u : rumor) is_rumor[u] = 1;
        for (rbr::NodeId u : seeds)
            if (is_rumor[u])
                throw std::invalid_argument("seed set overlaps rumor seeds at label " +
                                            std::to_string(g.label_of(u)));
    }

    const std::uint64_t count = scaled_count(a.count, a.eval_scale);
    double f_est = 0.0, f_se = 0.0;
    std::uint64_t used = count;
    if (a.method == "tuple") {
        if (!a.tuples_cache.empty()) {
            rbr::SampleSet set = std::filesystem::exists(a.tuples_cache)
                                     ? rbr::SampleSet::load(a.tuples_cache)
                                     : rbr::SampleSet::generate(
                                           g, rumor, count,
                                           rbr::mix_seed(a.seed, rbr::kStreamEvaluation),
                                           a.threads);
            if (!std::filesystem::exists(a.tuples_cache)) set.save(a.tuples_cache);
            if (set.node_count() != g.node_count())
                throw rbr::DataError("tuple cache does not match the graph");
            used = set.size();
            std::uint64_t covered = set.coverage(seeds);
            double phat = static_cast<double>(covered) / static_cast<double>(used);
            f_est = static_cast<double>(g.node_count()) * phat;
            f_se = static_cast<double>(g.node_count()) *
                   std::sqrt(phat * (1.0 - phat) / static_cast<double>(used));
            print_kv("covered", std::to_string(covered));
        } else {
            rbr::TupleEstimate est = rbr::estimate_f_tuples(
                g, rumor, seeds, count, rbr::mix_seed(a.seed, rbr::kStreamEvaluation),
                a.threads);
            f_est = est.f_estimate;
            f_se = est.f_stderr;
            print_kv("covered", std::to_string(est.covered));
        }
    } else if (a.method == "mc") {
        std::tie(f_est, f_se) =
            mc_eval(g, rumor, seeds, count, rbr::mix_seed(a.seed, rbr::kStreamEvaluation));
    } else {
        throw std::invalid_argument("unknown eval method '" + a.method + "'");
    }
    print_kv("method", a.method);
    print_kv("count", std::to_string(used));
    print_kv("f_estimate", format_g6(f_est));
    print_kv("f_stderr", format_g6(f_se));
}

struct ExperimentArgs {
    std::string config;
    int threads = 0;        // 0: keep config
    std::string timings;    // empty: keep config
};

void cmd_experiment(const ExperimentArgs& a) {
    ExperimentConfig config = ExperimentConfig::parse(a.config);
    if (a.threads > 0) config.threads = a.threads;
    if (!a.timings.empty()) {
        if (a.timings == "on") config.timings = true;
        else if (a.timings == "off") config.timings = false;
        else throw std::invalid_argument("--timings must be on or off");
    }
    run_experiment(config);
}

void add_rumor_options(CLI::App* cmd, RumorArgs& rumor) {
    cmd->add_option("--rumor-top", rumor.top, "take the top-degree nodes as rumor seeds");
    cmd->add_option("--rumor-file", rumor.file, "file of rumor seed labels");
    cmd->add_option("--degree-kind", rumor.degree_kind, "out, in or total")
        ->default_val("out");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rumor blocking via reverse tuple sampling"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cgen = app.add_subcommand("generate", "write a power-law random graph");
    cgen->add_option("--nodes", gen.nodes, "node count")->required();
    cgen->add_option("--avg-deg", gen.avg_deg, "average out-degree")->required();
    cgen->add_option("--exponent", gen.exponent, "power-law exponent")->default_val(2.5);
    cgen->add_option("--seed", gen.seed, "generator seed")->default_val(7);
    cgen->add_option("-o,--output", gen.output, "output edge-list path")->required();
    cgen->add_option("--model", gen.model,
                     "attach probabilities (cp:<p> or wc) and write a 3-column list");

    RunArgs run;
    CLI::App* crun = app.add_subcommand("run", "run one blocking algorithm");
    crun->add_option("--input", run.input, "edge-list path")->required();
    crun->add_option("--model", run.model, "file, wc or cp:<p>")->default_val("file");
    add_rumor_options(crun, run.rumor);
    crun->add_option("--algo", run.algo, "rbr, greedy, proximity, random or unblocking")
        ->default_val("rbr");
    crun->add_option("--k", run.k, "positive seed budget")->default_val(1);
    double delta1_value = 0.0;
    CLI::Option* d1opt = crun->add_option("--delta1", delta1_value, "override delta1");
    crun->add_option("--delta2", run.delta2, "final-stage accuracy")->default_val(0.1);
    crun->add_option("--delta3", run.delta3, "estimation accuracy")->default_val(0.1);
    crun->add_option("--bigN", run.big_n, "confidence parameter N (0: use n)")
        ->default_val(0.0);
    crun->add_option("--max-tuples", run.max_tuples, "clamp on l*")
        ->default_val(50'000'000);
    crun->add_option("--lstar", run.lstar, "fixed tuple budget (skips sizing)")
        ->default_val(0);
    crun->add_option("--sims", run.sims, "cascades per greedy estimate")->default_val(2000);
    crun->add_option("--seed", run.seed, "master seed")->default_val(42);
    crun->add_option("--threads", run.threads, "worker cap")->default_val(1);
    crun->add_option("--timings", run.timings, "print wall times (on/off)")
        ->default_val("on");
    crun->add_flag("--pad", run.pad, "pad the seed set to k with lowest-id unused nodes");
    crun->add_option("--eval", run.eval, "tuple, mc or none")->default_val("tuple");
    crun->add_option("--eval-count", run.eval_count, "evaluation tuples/trials")
        ->default_val(1'000'000);
    crun->add_option("--eval-scale", run.eval_scale, "scale factor on the evaluation count")
        ->default_val(1.0);
    crun->add_option("--save-seeds", run.save_seeds, "write chosen seed labels here");
    crun->add_option("--csv", run.csv, "append a result row to this CSV");
    crun->add_option("--dataset-name", run.dataset_name, "dataset column value");

    EvaluateArgs ev;
    CLI::App* ceval = app.add_subcommand("evaluate", "estimate f for a seed file");
    ceval->add_option("--input", ev.input, "edge-list path")->required();
    ceval->add_option("--model", ev.model, "file, wc or cp:<p>")->default_val("file");
    add_rumor_options(ceval, ev.rumor);
    ceval->add_option("--seeds-file", ev.seeds_file, "positive seed labels (empty: none)");
    ceval->add_option("--method", ev.method, "tuple or mc")->default_val("tuple");
    ceval->add_option("--count", ev.count, "tuples/trials")->default_val(1'000'000);
    ceval->add_option("--eval-scale", ev.eval_scale, "scale factor on the count")
        ->default_val(1.0);
    ceval->add_option("--seed", ev.seed, "master seed")->default_val(42);
    ceval->add_option("--threads", ev.threads, "worker cap")->default_val(1);
    ceval->add_option("--tuples-cache", ev.tuples_cache,
                      "reuse (or create) a serialized evaluation sample set");

    ExperimentArgs ex;
    CLI::App* cexp = app.add_subcommand("experiment", "sweep k x algorithms from a config");
    cexp->add_option("--config", ex.config, "key=value config path")->required();
    cexp->add_option("--threads", ex.threads, "override config threads")->default_val(0);
    cexp->add_option("--timings", ex.timings, "override config timings (on/off)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cgen->parsed()) {
            cmd_generate(gen);
        } else if (crun->parsed()) {
            if (d1opt->count() > 0) run.delta1 = delta1_value;
            cmd_run(run);
        } else if (ceval->parsed()) {
            cmd_evaluate(ev);
        } else if (cexp->parsed()) {
            cmd_experiment(ex);
        }
    } catch (const rbr::GuardError& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return 3;
    } catch (const rbr::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
