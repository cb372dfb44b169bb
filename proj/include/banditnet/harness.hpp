// ============================================================================
//  harness.hpp — replication driver, metrics, sweeps, and trace IO
//
//  PURPOSE
//    Owns the experiment loop: build an environment and a policy from a run
//    configuration, play T rounds, and record one row per (round, node) with
//    regret, confidence width, and communication cost.  On top of that:
//    regret summaries, the radius-reduction comparison between two run pools,
//    a grid sweep with per-cell failure isolation, and exact-round-trip CSV
//    plus JSON config files.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"
#include "banditnet/environment.hpp"
#include "banditnet/netsgducb.hpp"
#include "banditnet/policy.hpp"
#include "banditnet/weights.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace banditnet {

// ----------------------------------------------------------------------------
// run configuration
// ----------------------------------------------------------------------------

enum class PolicyKind { disjoint_linucb, shared_linucb, netlinucb, netsgducb };

PolicyKind parse_policy(const std::string& name);  // throws, listing valid names
std::string to_string(PolicyKind kind);
std::vector<std::string> policy_names();

struct RunConfig {
    InstanceConfig instance;         // replication seeds override instance.seed
    PolicyKind policy = PolicyKind::netlinucb;
    std::string topology = "12";     // SIZExCOUNT label or bare node count
    int horizon = 1000;
    std::vector<std::uint64_t> seeds = {1};
    // NaN = resolve to 1 + sqrt(log(2 * horizon) / 2) at run time.
    double alpha_ridge = std::numeric_limits<double>::quiet_NaN();
    SgdHyperparams sgd;
    WeightsConfig weights;
    std::string out_dir = "runs";
    bool write_traces = true;
    bool dump_weights = false;       // debug CSV of final weight matrices

    void validate() const;           // throws naming the offending field
    double resolved_alpha_ridge() const;
};

// Honors the BANDITNET_OUT environment variable over config.out_dir.
std::string resolve_out_dir(const RunConfig& config);

// ----------------------------------------------------------------------------
// traces
// ----------------------------------------------------------------------------

struct RegretTrace {
    std::string policy;
    std::uint64_t seed = 0;
    int n_nodes = 0;
    int horizon = 0;
    std::vector<RoundRecord> rows;   // (t ascending, node ascending)
    double wall_seconds = 0.0;       // time spent inside policy->step

    double final_cum_regret() const;           // R(T)
    std::int64_t total_comm_scalars() const;
    // Network communication total for round t (1-based).
    std::int64_t comm_scalars_at(int t) const;
};

// R(t)/t for t = 1..T (network regret averaged over elapsed rounds).
std::vector<double> time_average_curve(const RegretTrace& trace);

// R(T) / (N * T) for one trace, or the mean of that over a pool of traces.
// The pool variants throw if horizons or node counts differ between traces.
double per_node_average(const RegretTrace& trace);
double per_node_average(const std::vector<RegretTrace>& traces);

// 100 * (1 - mean chosen-arm radius of `policy_runs` / same for
// `baseline_runs`), pooled over every (round, node).  Throws on empty pools,
// mismatched shapes, or a zero baseline mean.
double radius_reduction(const std::vector<RegretTrace>& policy_runs,
                        const std::vector<RegretTrace>& baseline_runs);

// ----------------------------------------------------------------------------
// running
// ----------------------------------------------------------------------------

// Builds the policy for one replication (exposed for tests and the CLI).
std::unique_ptr<Policy> make_policy(const RunConfig& config, const Topology& topology);

// Plays one full replication with the given seed (it overrides instance.seed,
// so the instance, contexts, and noise are all functions of this seed alone).
// When `policy_out` is non-null it receives the policy in its final state,
// e.g. for dumping learned weight matrices.
RegretTrace run_replication(const RunConfig& config, std::uint64_t seed,
                            std::unique_ptr<Policy>* policy_out = nullptr);

// ----------------------------------------------------------------------------
// sweeps
// ----------------------------------------------------------------------------

struct SweepConfig {
    RunConfig base;                        // instance/horizon/seeds/hyper shared
    std::vector<PolicyKind> policies;      // grid axis 1
    std::vector<std::string> topologies;   // grid axis 2
};

struct SweepCell {
    PolicyKind policy{};
    std::string topology;
    int n_seeds_ok = 0;
    double mean_final_per_node = 0.0;  // mean over seeds of R(T)/(N T)
    double std_final_per_node = 0.0;   // sample std over seeds
    double mean_ms_per_round = 0.0;    // wall-clock per round, milliseconds
    double mean_comm_total = 0.0;      // mean total scalars over seeds
    bool ok = false;
    std::string error;                  // first failure message, if any
};

struct SweepResult {
    std::vector<SweepCell> cells;
    bool all_ok = true;
};

// Runs the full grid; a failing cell records its error and the sweep goes on.
// Traces are written to resolve_out_dir(base) when base.write_traces is set.
SweepResult sweep(const SweepConfig& config);

// ----------------------------------------------------------------------------
// file formats
// ----------------------------------------------------------------------------

// Header: t,node,arm,opt_arm,inst_regret,cum_regret,radius,comm_scalars.
// Doubles are written with 17 significant digits so reads are bit-exact.
void write_trace_csv(const RegretTrace& trace, const std::string& path);
RegretTrace read_trace_csv(const std::string& path);

std::string trace_filename(const RunConfig& config, std::uint64_t seed);
void write_sweep_csv(const SweepResult& result, const std::string& path);

// Debug dump of a policy's final weight matrices (arm, from, to, weight).
// No-op (returns false) for policies without weight matrices.
bool write_weight_csv(const Policy& policy, const std::string& path);

// JSON mirror of RunConfig.  Fields omitted in the file keep their defaults;
// an "instance.preset" key seeds the instance config from that preset before
// explicit instance overrides apply.
RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

}  // namespace banditnet
