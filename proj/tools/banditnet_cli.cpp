// ============================================================================
//  banditnet_cli.cpp — command-line front end for the bandit simulator
//
//  PURPOSE
//    Four subcommands over the library:
//      run      play one configuration over a list of seeds, write traces
//      sweep    policy x topology grid with per-cell summaries and a CSV
//      report   recompute summary statistics from previously written traces
//      presets  list the built-in environment presets
// ============================================================================
#include "banditnet/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace banditnet;

// Flag values staged before they are folded into a RunConfig; CLI11's count()
// tells us which ones the user actually set.
struct Overrides {
    std::string config_path;
    std::string preset_name;
    std::string policy;
    std::string topology;
    int horizon = 0;
    std::string seed_list;
    int n_nodes = 0;
    int n_arms = 0;
    double noise_sigma = 0.0;
    double reward_gap_scale = 0.0;
    double alpha_ridge = 0.0;
    double sgd_eta = 0.0;
    double sgd_mu = 0.0;
    double sgd_gamma = 0.0;
    double sgd_alpha_scale = 0.0;
    bool consensus_feedback = false;
    double rho = 0.0;
    double beta = 0.0;
    std::string out_dir;
    bool no_traces = false;
    bool dump_weights = false;
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const std::string& item : split_commas(text)) {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(item, &used);
        if (used != item.size())
            throw std::invalid_argument("--seeds: bad entry \"" + item + "\"");
        seeds.push_back(value);
    }
    if (seeds.empty()) throw std::invalid_argument("--seeds: empty list");
    return seeds;
}

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("-c,--config", o.config_path, "JSON run configuration file");
    cmd->add_option("--preset", o.preset_name, "environment preset name");
    cmd->add_option("--topology", o.topology, "clique topology label, e.g. 12, 3x4, 1x12");
    cmd->add_option("--horizon", o.horizon, "number of rounds");
    cmd->add_option("--seeds", o.seed_list, "comma-separated seed list, e.g. 1,2,3");
    cmd->add_option("--n-nodes", o.n_nodes, "number of nodes");
    cmd->add_option("--n-arms", o.n_arms, "number of arms");
    cmd->add_option("--noise-sigma", o.noise_sigma, "reward noise standard deviation");
    cmd->add_option("--gap", o.reward_gap_scale,
                    "reward gap scale (> 0; above 1 widens arm gaps, below 1 narrows)");
    cmd->add_option("--alpha-ridge", o.alpha_ridge,
                    "exploration multiplier for the ridge policies");
    cmd->add_option("--sgd-eta", o.sgd_eta, "SGD learning rate");
    cmd->add_option("--sgd-mu", o.sgd_mu, "SGD momentum coefficient");
    cmd->add_option("--sgd-gamma", o.sgd_gamma, "SGD curvature EMA decay");
    cmd->add_option("--sgd-alpha-scale", o.sgd_alpha_scale,
                    "scale on the SGD exploration multiplier");
    cmd->add_flag("--consensus-feedback", o.consensus_feedback,
                  "write the mixed shared estimate back before each SGD update");
    cmd->add_option("--rho", o.rho, "weight-matrix EMA retention");
    cmd->add_option("--beta", o.beta, "arm-vs-context similarity mix");
    cmd->add_option("--out-dir", o.out_dir, "output directory for traces and CSVs");
    cmd->add_flag("--no-traces", o.no_traces, "skip writing per-seed trace CSVs");
    cmd->add_flag("--dump-weights", o.dump_weights,
                  "also write each replication's final weight matrices");
}

// count() throws for options a subcommand never declared; this probe does not.
bool was_set(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

RunConfig build_config(const CLI::App* cmd, const Overrides& o) {
    RunConfig cfg;
    if (was_set(cmd, "--config")) cfg = load_run_config(o.config_path);
    else cfg.instance = preset("default");
    if (was_set(cmd, "--preset")) cfg.instance = preset(o.preset_name);
    if (was_set(cmd, "--n-nodes")) resize_nodes(cfg.instance, o.n_nodes);
    if (was_set(cmd, "--n-arms")) cfg.instance.n_arms = o.n_arms;
    if (was_set(cmd, "--noise-sigma")) cfg.instance.noise_sigma = o.noise_sigma;
    if (was_set(cmd, "--gap")) cfg.instance.reward_gap_scale = o.reward_gap_scale;
    if (was_set(cmd, "--policy")) cfg.policy = parse_policy(o.policy);
    if (was_set(cmd, "--topology")) cfg.topology = o.topology;
    else if (!was_set(cmd, "--config"))
        cfg.topology = std::to_string(cfg.instance.n_nodes);
    if (was_set(cmd, "--horizon")) cfg.horizon = o.horizon;
    if (was_set(cmd, "--seeds")) cfg.seeds = parse_seed_list(o.seed_list);
    if (was_set(cmd, "--alpha-ridge")) cfg.alpha_ridge = o.alpha_ridge;
    if (was_set(cmd, "--sgd-eta")) cfg.sgd.eta = o.sgd_eta;
    if (was_set(cmd, "--sgd-mu")) cfg.sgd.mu = o.sgd_mu;
    if (was_set(cmd, "--sgd-gamma")) cfg.sgd.gamma = o.sgd_gamma;
    if (was_set(cmd, "--sgd-alpha-scale")) cfg.sgd.alpha_scale = o.sgd_alpha_scale;
    if (was_set(cmd, "--consensus-feedback")) cfg.sgd.consensus_feedback = true;
    if (was_set(cmd, "--rho")) cfg.weights.rho = o.rho;
    if (was_set(cmd, "--beta")) cfg.weights.beta = o.beta;
    if (was_set(cmd, "--out-dir")) cfg.out_dir = o.out_dir;
    if (was_set(cmd, "--no-traces")) cfg.write_traces = false;
    if (was_set(cmd, "--dump-weights")) cfg.dump_weights = true;
    return cfg;
}

int do_run(const CLI::App* cmd, const Overrides& o) {
    RunConfig cfg = build_config(cmd, o);
    cfg.validate();
    const std::string out_dir = resolve_out_dir(cfg);
    if (cfg.write_traces || cfg.dump_weights)
        std::filesystem::create_directories(out_dir);

    std::vector<double> finals;
    for (const std::uint64_t seed : cfg.seeds) {
        std::unique_ptr<Policy> policy;
        const RegretTrace trace =
            run_replication(cfg, seed, cfg.dump_weights ? &policy : nullptr);
        const double per_node = per_node_average(trace);
        finals.push_back(per_node);
        std::printf("[%s %s seed %llu] R(T) = %.6g  R/(NT) = %.6g  comm = %lld  wall = %.2f s\n",
                    trace.policy.c_str(), cfg.topology.c_str(),
                    static_cast<unsigned long long>(seed), trace.final_cum_regret(),
                    per_node, static_cast<long long>(trace.total_comm_scalars()),
                    trace.wall_seconds);
        if (cfg.write_traces) {
            const std::string path = out_dir + "/" + trace_filename(cfg, seed);
            write_trace_csv(trace, path);
            std::printf("  wrote %s\n", path.c_str());
        }
        if (cfg.dump_weights) {
            const std::string path = out_dir + "/weights_" + trace.policy + "_" +
                                     cfg.topology + "_seed" + std::to_string(seed) +
                                     ".csv";
            if (write_weight_csv(*policy, path))
                std::printf("  wrote %s\n", path.c_str());
            else
                std::printf("  (%s keeps no weight matrices; no weight dump)\n",
                            trace.policy.c_str());
        }
    }
    if (finals.size() > 1) {
        double mean = 0.0;
        for (double f : finals) mean += f;
        mean /= static_cast<double>(finals.size());
        double var = 0.0;
        for (double f : finals) var += (f - mean) * (f - mean);
        var /= static_cast<double>(finals.size() - 1);
        std::printf("summary over %zu seeds: R/(NT) = %.6g +/- %.6g (sample std)\n",
                    finals.size(), mean, std::sqrt(var));
    }
    return 0;
}

int do_sweep(const CLI::App* cmd, const Overrides& o, const std::string& policies,
             const std::string& topologies) {
    SweepConfig sweep_cfg;
    sweep_cfg.base = build_config(cmd, o);
    if (!policies.empty())
        for (const std::string& name : split_commas(policies))
            sweep_cfg.policies.push_back(parse_policy(name));
    else
        for (const std::string& name : policy_names())
            sweep_cfg.policies.push_back(parse_policy(name));
    if (!topologies.empty()) sweep_cfg.topologies = split_commas(topologies);
    else sweep_cfg.topologies = {sweep_cfg.base.topology};

    const SweepResult result = sweep(sweep_cfg);
    std::printf("%-18s %-8s %-6s %-14s %-14s %-12s %s\n", "policy", "topology", "seeds",
                "R/(NT) mean", "R/(NT) std", "ms/round", "comm total");
    for (const auto& cell : result.cells) {
        if (cell.ok)
            std::printf("%-18s %-8s %-6d %-14.6g %-14.6g %-12.4g %.6g\n",
                        to_string(cell.policy).c_str(), cell.topology.c_str(),
                        cell.n_seeds_ok, cell.mean_final_per_node,
                        cell.std_final_per_node, cell.mean_ms_per_round,
                        cell.mean_comm_total);
        else
            std::printf("%-18s %-8s FAILED: %s\n", to_string(cell.policy).c_str(),
                        cell.topology.c_str(), cell.error.c_str());
    }
    const std::string out_dir = resolve_out_dir(sweep_cfg.base);
    std::filesystem::create_directories(out_dir);
    const std::string summary_path = out_dir + "/summary.csv";
    write_sweep_csv(result, summary_path);
    std::printf("wrote %s\n", summary_path.c_str());
    return result.all_ok ? 0 : 1;
}

int do_report(const std::vector<std::string>& trace_paths,
              const std::vector<std::string>& baseline_paths) {
    std::vector<RegretTrace> pool;
    for (const std::string& path : trace_paths) {
        const RegretTrace trace = read_trace_csv(path);
        std::printf("%s: N = %d, T = %d, R(T) = %.6g, R/(NT) = %.6g, comm = %lld\n",
                    path.c_str(), trace.n_nodes, trace.horizon,
                    trace.final_cum_regret(), per_node_average(trace),
                    static_cast<long long>(trace.total_comm_scalars()));
        pool.push_back(trace);
    }
    if (pool.size() > 1)
        std::printf("pooled R/(NT) over %zu traces: %.6g\n", pool.size(),
                    per_node_average(pool));
    if (!baseline_paths.empty()) {
        std::vector<RegretTrace> baseline;
        for (const std::string& path : baseline_paths)
            baseline.push_back(read_trace_csv(path));
        std::printf("radius reduction vs baseline: %.4f%%\n",
                    radius_reduction(pool, baseline));
    }
    return 0;
}

int do_presets() {
    for (const std::string& name : preset_names()) {
        const InstanceConfig cfg = preset(name);
        double mean_ds = 0.0;
        for (int d : cfg.dims.d_specific) mean_ds += d;
        mean_ds /= static_cast<double>(cfg.dims.d_specific.size());
        std::printf(
            "%-18s N = %d, K = %d, d_common = %d, mean d_specific = %.3g, sigma = %g, "
            "gap scale = %g, outliers = %g\n",
            name.c_str(), cfg.n_nodes, cfg.n_arms, cfg.dims.d_common, mean_ds,
            cfg.noise_sigma, cfg.reward_gap_scale, cfg.outlier_probability);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"banditnet — decentralized contextual bandit simulator"};
    app.require_subcommand(1);

    Overrides run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "play one configuration over seeds");
    add_common_options(run_cmd, run_opts);
    run_cmd->add_option("--policy", run_opts.policy,
                        "disjoint_linucb | shared_linucb | netlinucb | netsgducb");

    Overrides sweep_opts;
    std::string sweep_policies, sweep_topologies;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "policy x topology grid with summary CSV");
    add_common_options(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--policies", sweep_policies,
                          "comma-separated policy list (default: all)");
    sweep_cmd->add_option("--topologies", sweep_topologies,
                          "comma-separated topology labels (default: base topology)");

    std::vector<std::string> report_traces, report_baselines;
    CLI::App* report_cmd =
        app.add_subcommand("report", "summarize previously written trace CSVs");
    report_cmd->add_option("traces", report_traces, "trace CSV files")->required();
    report_cmd->add_option("--baseline", report_baselines,
                           "baseline trace CSVs for the radius-reduction comparison");

    CLI::App* presets_cmd =
        app.add_subcommand("presets", "list the built-in environment presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return do_run(run_cmd, run_opts);
        if (sweep_cmd->parsed()) return do_sweep(sweep_cmd, sweep_opts, sweep_policies,
                                                 sweep_topologies);
        if (report_cmd->parsed()) return do_report(report_traces, report_baselines);
        if (presets_cmd->parsed()) return do_presets();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
