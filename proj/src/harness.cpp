#include "banditnet/harness.hpp"

#include "banditnet/netlinucb.hpp"
#include "banditnet/ridge.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace banditnet {

using nlohmann::json;

// ----------------------------------------------------------------------------
// policy names
// ----------------------------------------------------------------------------

std::vector<std::string> policy_names() {
    return {"disjoint_linucb", "shared_linucb", "netlinucb", "netsgducb"};
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "disjoint_linucb") return PolicyKind::disjoint_linucb;
    if (name == "shared_linucb") return PolicyKind::shared_linucb;
    if (name == "netlinucb") return PolicyKind::netlinucb;
    if (name == "netsgducb") return PolicyKind::netsgducb;
    std::string names;
    for (const auto& n : policy_names()) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("policy: unknown name \"" + name +
                                "\"; valid policies are: " + names);
}

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::disjoint_linucb: return "disjoint_linucb";
        case PolicyKind::shared_linucb: return "shared_linucb";
        case PolicyKind::netlinucb: return "netlinucb";
        case PolicyKind::netsgducb: return "netsgducb";
    }
    throw std::logic_error("to_string: invalid PolicyKind");
}

// ----------------------------------------------------------------------------
// run configuration
// ----------------------------------------------------------------------------

void RunConfig::validate() const {
    instance.validate();
    if (horizon < 1) throw std::invalid_argument("RunConfig: horizon must be >= 1");
    if (seeds.empty()) throw std::invalid_argument("RunConfig: seeds must be non-empty");
    const Topology topo = Topology::parse(topology);
    if (topo.n_nodes() != instance.n_nodes)
        throw std::invalid_argument("RunConfig: topology \"" + topology + "\" has " +
                                    std::to_string(topo.n_nodes()) +
                                    " nodes but instance.n_nodes = " +
                                    std::to_string(instance.n_nodes));
    if (!std::isnan(alpha_ridge) && !(alpha_ridge > 0.0))
        throw std::invalid_argument("RunConfig: alpha_ridge must be > 0 (or unset)");
    if (!(sgd.eta > 0.0)) throw std::invalid_argument("RunConfig: sgd.eta must be > 0");
    if (sgd.mu < 0.0 || sgd.mu >= 1.0)
        throw std::invalid_argument("RunConfig: sgd.mu must be in [0, 1)");
    if (sgd.gamma <= 0.0 || sgd.gamma >= 1.0)
        throw std::invalid_argument("RunConfig: sgd.gamma must be in (0, 1)");
    if (!(sgd.alpha_scale >= 0.0))
        throw std::invalid_argument("RunConfig: sgd.alpha_scale must be >= 0");
    if (weights.rho < 0.0 || weights.rho > 1.0)
        throw std::invalid_argument("RunConfig: weights.rho must be in [0, 1]");
    if (weights.beta < 0.0 || weights.beta > 1.0)
        throw std::invalid_argument("RunConfig: weights.beta must be in [0, 1]");
}

double RunConfig::resolved_alpha_ridge() const {
    if (!std::isnan(alpha_ridge)) return alpha_ridge;
    return 1.0 + std::sqrt(std::log(2.0 * horizon) / 2.0);
}

std::string resolve_out_dir(const RunConfig& config) {
    if (const char* env = std::getenv("BANDITNET_OUT"); env && *env) return env;
    return config.out_dir;
}

// ----------------------------------------------------------------------------
// traces and metrics
// ----------------------------------------------------------------------------

double RegretTrace::final_cum_regret() const {
    return rows.empty() ? 0.0 : rows.back().cum_regret;
}

std::int64_t RegretTrace::total_comm_scalars() const {
    std::int64_t total = 0;
    for (const auto& row : rows) total += row.comm_scalars;
    return total;
}

std::int64_t RegretTrace::comm_scalars_at(int t) const {
    std::int64_t total = 0;
    for (const auto& row : rows)
        if (row.t == t) total += row.comm_scalars;
    return total;
}

std::vector<double> time_average_curve(const RegretTrace& trace) {
    std::vector<double> out(trace.horizon, 0.0);
    for (const auto& row : trace.rows) out[row.t - 1] += row.inst_regret;
    double cum = 0.0;
    for (int t = 1; t <= trace.horizon; ++t) {
        cum += out[t - 1];
        out[t - 1] = cum / t;
    }
    return out;
}

double per_node_average(const RegretTrace& trace) {
    if (trace.horizon < 1 || trace.n_nodes < 1)
        throw std::invalid_argument("per_node_average: empty trace");
    return trace.final_cum_regret() /
           (static_cast<double>(trace.n_nodes) * static_cast<double>(trace.horizon));
}

namespace {
void check_pool_shape(const std::vector<RegretTrace>& traces, const char* who) {
    if (traces.empty())
        throw std::invalid_argument(std::string(who) + ": trace pool is empty");
    for (const auto& t : traces) {
        if (t.horizon != traces.front().horizon)
            throw std::invalid_argument(std::string(who) +
                                        ": traces have mismatched horizon");
        if (t.n_nodes != traces.front().n_nodes)
            throw std::invalid_argument(std::string(who) +
                                        ": traces have mismatched n_nodes");
    }
}
}  // namespace

double per_node_average(const std::vector<RegretTrace>& traces) {
    check_pool_shape(traces, "per_node_average");
    double sum = 0.0;
    for (const auto& t : traces) sum += per_node_average(t);
    return sum / static_cast<double>(traces.size());
}

double radius_reduction(const std::vector<RegretTrace>& policy_runs,
                        const std::vector<RegretTrace>& baseline_runs) {
    check_pool_shape(policy_runs, "radius_reduction(policy)");
    check_pool_shape(baseline_runs, "radius_reduction(baseline)");
    if (policy_runs.front().horizon != baseline_runs.front().horizon ||
        policy_runs.front().n_nodes != baseline_runs.front().n_nodes)
        throw std::invalid_argument(
            "radius_reduction: policy/baseline pools have mismatched shapes");
    const auto mean_radius = [](const std::vector<RegretTrace>& pool) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& trace : pool) {
            for (const auto& row : trace.rows) sum += row.radius;
            count += trace.rows.size();
        }
        return sum / static_cast<double>(count);
    };
    const double baseline = mean_radius(baseline_runs);
    if (!(baseline > 0.0))
        throw std::invalid_argument("radius_reduction: baseline mean radius is zero");
    return 100.0 * (1.0 - mean_radius(policy_runs) / baseline);
}

// ----------------------------------------------------------------------------
// running
// ----------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(const RunConfig& config, const Topology& topology) {
    const Dimensions& dims = config.instance.dims;
    const int n_arms = config.instance.n_arms;
    switch (config.policy) {
        case PolicyKind::disjoint_linucb:
            return std::make_unique<DisjointLinUcbPolicy>(dims, n_arms,
                                                          config.resolved_alpha_ridge());
        case PolicyKind::shared_linucb:
            return std::make_unique<SharedLinUcbPolicy>(dims, n_arms,
                                                        config.resolved_alpha_ridge());
        case PolicyKind::netlinucb:
            return std::make_unique<NetLinUcbPolicy>(dims, n_arms, topology,
                                                     config.resolved_alpha_ridge(),
                                                     config.weights);
        case PolicyKind::netsgducb:
            return std::make_unique<NetSgdUcbPolicy>(dims, n_arms, topology, config.sgd,
                                                     config.instance.noise_sigma,
                                                     config.weights);
    }
    throw std::logic_error("make_policy: invalid PolicyKind");
}

RegretTrace run_replication(const RunConfig& config, std::uint64_t seed,
                            std::unique_ptr<Policy>* policy_out) {
    config.validate();
    InstanceConfig instance = config.instance;
    instance.seed = seed;
    const Environment env = Environment::new_instance(instance);
    const Topology topology = Topology::parse(config.topology);

    RunConfig resolved = config;
    resolved.instance = instance;
    auto policy = make_policy(resolved, topology);

    RegretTrace trace;
    trace.policy = policy->name();
    trace.seed = seed;
    trace.n_nodes = instance.n_nodes;
    trace.horizon = config.horizon;
    trace.rows.reserve(static_cast<std::size_t>(instance.n_nodes) * config.horizon);

    double cum = 0.0;
    for (int t = 1; t <= config.horizon; ++t) {
        const std::vector<Context> contexts = env.sample_contexts(t);
        const RewardCallback observe = [&](int node, int arm) {
            // One noise engine per (seed, node, t): the realized noise never
            // depends on the chosen arm, so policies on the same seed face
            // identical randomness.
            auto rng = make_engine(seed, Stream::noise, node, t);
            return env.draw_reward(node, arm, contexts[node], rng);
        };
        const auto start = std::chrono::steady_clock::now();
        const std::vector<NodeDecision> decisions = policy->step(t, contexts, observe);
        trace.wall_seconds +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        for (int i = 0; i < instance.n_nodes; ++i) {
            const int opt = env.optimal_arm(i, contexts[i]);
            const double gap = env.expected_reward(i, opt, contexts[i]) -
                               env.expected_reward(i, decisions[i].arm, contexts[i]);
            cum += gap;
            trace.rows.push_back(RoundRecord{t, i, decisions[i].arm, opt, gap, cum,
                                             decisions[i].radius,
                                             decisions[i].comm_scalars});
        }
    }
    if (policy_out) *policy_out = std::move(policy);
    return trace;
}

// ----------------------------------------------------------------------------
// sweeps
// ----------------------------------------------------------------------------

SweepResult sweep(const SweepConfig& config) {
    SweepResult result;
    const std::string out_dir = resolve_out_dir(config.base);
    if (config.base.write_traces) std::filesystem::create_directories(out_dir);

    for (const PolicyKind policy : config.policies) {
        for (const std::string& topology : config.topologies) {
            SweepCell cell;
            cell.policy = policy;
            cell.topology = topology;
            try {
                RunConfig run = config.base;
                run.policy = policy;
                run.topology = topology;
                run.validate();
                std::vector<double> finals;
                double wall = 0.0, comm = 0.0;
                for (const std::uint64_t seed : run.seeds) {
                    const RegretTrace trace = run_replication(run, seed);
                    finals.push_back(per_node_average(trace));
                    wall += trace.wall_seconds;
                    comm += static_cast<double>(trace.total_comm_scalars());
                    if (run.write_traces)
                        write_trace_csv(trace, out_dir + "/" + trace_filename(run, seed));
                }
                const double n = static_cast<double>(finals.size());
                double mean = 0.0;
                for (double f : finals) mean += f;
                mean /= n;
                double var = 0.0;
                for (double f : finals) var += (f - mean) * (f - mean);
                cell.n_seeds_ok = static_cast<int>(finals.size());
                cell.mean_final_per_node = mean;
                cell.std_final_per_node = finals.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
                cell.mean_ms_per_round = 1000.0 * wall / (n * config.base.horizon);
                cell.mean_comm_total = comm / n;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
                result.all_ok = false;
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

// ----------------------------------------------------------------------------
// file formats
// ----------------------------------------------------------------------------

namespace {
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
constexpr const char* kTraceHeader =
    "t,node,arm,opt_arm,inst_regret,cum_regret,radius,comm_scalars";
}  // namespace

std::string trace_filename(const RunConfig& config, std::uint64_t seed) {
    return "trace_" + to_string(config.policy) + "_" + config.topology + "_seed" +
           std::to_string(seed) + ".csv";
}

void write_trace_csv(const RegretTrace& trace, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << kTraceHeader << "\n";
    for (const auto& row : trace.rows) {
        file << row.t << ',' << row.node << ',' << row.arm << ',' << row.opt_arm << ','
             << fmt17(row.inst_regret) << ',' << fmt17(row.cum_regret) << ','
             << fmt17(row.radius) << ',' << row.comm_scalars << "\n";
    }
    if (!file) throw std::runtime_error("write failed: " + path);
}

RegretTrace read_trace_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(file, line) || line != kTraceHeader)
        throw std::runtime_error("bad trace header in " + path);
    RegretTrace trace;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        RoundRecord row;
        const auto next = [&]() -> std::string {
            if (!std::getline(ss, field, ',')) throw std::runtime_error("short row in " + path);
            return field;
        };
        row.t = std::stoi(next());
        row.node = std::stoi(next());
        row.arm = std::stoi(next());
        row.opt_arm = std::stoi(next());
        row.inst_regret = std::stod(next());
        row.cum_regret = std::stod(next());
        row.radius = std::stod(next());
        row.comm_scalars = std::stoll(next());
        trace.rows.push_back(row);
        trace.horizon = std::max(trace.horizon, row.t);
        trace.n_nodes = std::max(trace.n_nodes, row.node + 1);
    }
    return trace;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << "policy,topology,n_seeds_ok,mean_final_per_node,std_final_per_node,"
            "mean_ms_per_round,mean_comm_total,status,error\n";
    for (const auto& cell : result.cells) {
        file << to_string(cell.policy) << ',' << cell.topology << ',' << cell.n_seeds_ok
             << ',' << fmt17(cell.mean_final_per_node) << ','
             << fmt17(cell.std_final_per_node) << ',' << fmt17(cell.mean_ms_per_round)
             << ',' << fmt17(cell.mean_comm_total) << ','
             << (cell.ok ? "ok" : "failed") << ',';
        std::string err = cell.error;
        for (char& c : err)
            if (c == ',' || c == '\n') c = ';';
        file << err << "\n";
    }
    if (!file) throw std::runtime_error("write failed: " + path);
}

bool write_weight_csv(const Policy& policy, const std::string& path) {
    const WeightMatrixSet* weights = nullptr;
    if (const auto* p = dynamic_cast<const NetLinUcbPolicy*>(&policy))
        weights = &p->weight_matrices();
    else if (const auto* p = dynamic_cast<const NetSgdUcbPolicy*>(&policy))
        weights = &p->weight_matrices();
    if (!weights) return false;
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << "arm,from,to,weight\n";
    for (int k = 0; k < weights->n_arms(); ++k) {
        const auto& omega = weights->matrices[k];
        for (int i = 0; i < omega.cols(); ++i)
            for (int j = 0; j < omega.rows(); ++j)
                file << k << ',' << j << ',' << i << ',' << fmt17(omega(j, i)) << "\n";
    }
    if (!file) throw std::runtime_error("write failed: " + path);
    return true;
}

// ----------------------------------------------------------------------------
// JSON config mirror
// ----------------------------------------------------------------------------

namespace {

InstanceConfig instance_from_json(const json& j) {
    InstanceConfig cfg = j.contains("preset") ? preset(j.at("preset").get<std::string>())
                                              : preset("default");
    if (j.contains("n_nodes")) resize_nodes(cfg, j.at("n_nodes").get<int>());
    if (j.contains("d_common")) {
        cfg.dims.d_common = j.at("d_common").get<int>();
        cfg.context_mean_common = Eigen::VectorXd::Zero(cfg.dims.d_common);
    }
    if (j.contains("d_specific")) {
        // Scalar: the same specific dimension for every node; array: per node.
        const json& ds = j.at("d_specific");
        if (ds.is_array()) cfg.dims.d_specific = ds.get<std::vector<int>>();
        else cfg.dims.d_specific.assign(cfg.n_nodes, ds.get<int>());
    }
    if (j.contains("n_arms")) cfg.n_arms = j.at("n_arms").get<int>();
    if (j.contains("noise_sigma")) cfg.noise_sigma = j.at("noise_sigma").get<double>();
    if (j.contains("context_mean_common")) {
        const auto mean = j.at("context_mean_common").get<std::vector<double>>();
        cfg.context_mean_common =
            Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
    }
    if (j.contains("context_cov_scale_common"))
        cfg.context_cov_scale_common = j.at("context_cov_scale_common").get<double>();
    if (j.contains("context_cov_scale_specific")) {
        cfg.context_cov_scale_specific =
            j.at("context_cov_scale_specific").get<std::vector<double>>();
    }
    if (j.contains("reward_gap_scale"))
        cfg.reward_gap_scale = j.at("reward_gap_scale").get<double>();
    if (j.contains("outlier_probability"))
        cfg.outlier_probability = j.at("outlier_probability").get<double>();
    if (j.contains("outlier_magnitude"))
        cfg.outlier_magnitude = j.at("outlier_magnitude").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open for reading: " + path);
    json j;
    try {
        file >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("bad JSON in " + path + ": " + e.what());
    }
    RunConfig cfg;
    if (j.contains("instance")) cfg.instance = instance_from_json(j.at("instance"));
    else cfg.instance = preset("default");
    if (j.contains("policy")) cfg.policy = parse_policy(j.at("policy").get<std::string>());
    if (j.contains("topology")) cfg.topology = j.at("topology").get<std::string>();
    if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<int>();
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("alpha_ridge") && !j.at("alpha_ridge").is_null())
        cfg.alpha_ridge = j.at("alpha_ridge").get<double>();
    if (j.contains("sgd")) {
        const json& s = j.at("sgd");
        if (s.contains("eta")) cfg.sgd.eta = s.at("eta").get<double>();
        if (s.contains("mu")) cfg.sgd.mu = s.at("mu").get<double>();
        if (s.contains("gamma")) cfg.sgd.gamma = s.at("gamma").get<double>();
        if (s.contains("alpha_scale")) cfg.sgd.alpha_scale = s.at("alpha_scale").get<double>();
        if (s.contains("consensus_feedback"))
            cfg.sgd.consensus_feedback = s.at("consensus_feedback").get<bool>();
    }
    if (j.contains("weights")) {
        const json& w = j.at("weights");
        if (w.contains("rho")) cfg.weights.rho = w.at("rho").get<double>();
        if (w.contains("beta")) cfg.weights.beta = w.at("beta").get<double>();
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("write_traces")) cfg.write_traces = j.at("write_traces").get<bool>();
    if (j.contains("dump_weights")) cfg.dump_weights = j.at("dump_weights").get<bool>();
    return cfg;
}

void save_run_config(const RunConfig& config, const std::string& path) {
    json inst;
    inst["n_nodes"] = config.instance.n_nodes;
    inst["n_arms"] = config.instance.n_arms;
    inst["d_common"] = config.instance.dims.d_common;
    inst["d_specific"] = config.instance.dims.d_specific;
    inst["noise_sigma"] = config.instance.noise_sigma;
    inst["context_mean_common"] =
        std::vector<double>(config.instance.context_mean_common.data(),
                            config.instance.context_mean_common.data() +
                                config.instance.context_mean_common.size());
    inst["context_cov_scale_common"] = config.instance.context_cov_scale_common;
    inst["context_cov_scale_specific"] = config.instance.context_cov_scale_specific;
    inst["reward_gap_scale"] = config.instance.reward_gap_scale;
    inst["outlier_probability"] = config.instance.outlier_probability;
    inst["outlier_magnitude"] = config.instance.outlier_magnitude;
    inst["seed"] = config.instance.seed;

    json j;
    j["instance"] = inst;
    j["policy"] = to_string(config.policy);
    j["topology"] = config.topology;
    j["horizon"] = config.horizon;
    j["seeds"] = config.seeds;
    if (std::isnan(config.alpha_ridge)) j["alpha_ridge"] = nullptr;
    else j["alpha_ridge"] = config.alpha_ridge;
    j["sgd"] = {{"eta", config.sgd.eta},
                {"mu", config.sgd.mu},
                {"gamma", config.sgd.gamma},
                {"alpha_scale", config.sgd.alpha_scale},
                {"consensus_feedback", config.sgd.consensus_feedback}};
    j["weights"] = {{"rho", config.weights.rho}, {"beta", config.weights.beta}};
    j["out_dir"] = config.out_dir;
    j["write_traces"] = config.write_traces;
    j["dump_weights"] = config.dump_weights;

    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << j.dump(2) << "\n";
    if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace banditnet
