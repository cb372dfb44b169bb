#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "banditnet/harness.hpp"

#include "banditnet/netlinucb.hpp"
#include "banditnet/ridge.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace banditnet;

namespace {

// Small, fast run: the default instance family cut down to four nodes.
RunConfig small_config(PolicyKind kind, const std::string& topology = "4") {
    RunConfig cfg;
    cfg.instance = preset("default");
    resize_nodes(cfg.instance, 4);
    cfg.policy = kind;
    cfg.topology = topology;
    cfg.horizon = 30;
    cfg.seeds = {1};
    cfg.write_traces = false;
    return cfg;
}

RegretTrace synthetic_trace(int horizon, int n_nodes,
                            const std::vector<double>& inst_regret,
                            double radius = 1.0) {
    RegretTrace trace;
    trace.policy = "synthetic";
    trace.horizon = horizon;
    trace.n_nodes = n_nodes;
    double cum = 0.0;
    std::size_t idx = 0;
    for (int t = 1; t <= horizon; ++t)
        for (int i = 0; i < n_nodes; ++i) {
            const double gap = inst_regret[idx++];
            cum += gap;
            trace.rows.push_back(RoundRecord{t, i, 0, 0, gap, cum, radius, 3});
        }
    return trace;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

// ----------------------------------------------------------------------------
// policy names and config validation
// ----------------------------------------------------------------------------

TEST_CASE("policy names round-trip and unknown names throw with the valid list") {
    const auto names = policy_names();
    REQUIRE(names.size() == 4);
    for (const auto& name : names) CHECK(to_string(parse_policy(name)) == name);
    CHECK(parse_policy("netlinucb") == PolicyKind::netlinucb);
    CHECK_THROWS_WITH_AS(parse_policy("linucb"),
                         doctest::Contains("valid policies are"),
                         std::invalid_argument);
}

TEST_CASE("validate pinpoints each bad field") {
    const RunConfig good = small_config(PolicyKind::netlinucb);
    CHECK_NOTHROW(good.validate());

    auto expect_throw = [&](auto mutate, const char* needle) {
        RunConfig bad = good;
        mutate(bad);
        CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains(needle),
                             std::invalid_argument);
    };
    expect_throw([](RunConfig& c) { c.horizon = 0; }, "horizon");
    expect_throw([](RunConfig& c) { c.seeds.clear(); }, "seeds");
    expect_throw([](RunConfig& c) { c.topology = "8"; }, "topology");
    expect_throw([](RunConfig& c) { c.topology = "3x"; }, "cannot parse");
    expect_throw([](RunConfig& c) { c.alpha_ridge = 0.0; }, "alpha_ridge");
    expect_throw([](RunConfig& c) { c.alpha_ridge = -1.0; }, "alpha_ridge");
    expect_throw([](RunConfig& c) { c.sgd.eta = 0.0; }, "eta");
    expect_throw([](RunConfig& c) { c.sgd.mu = 1.0; }, "mu");
    expect_throw([](RunConfig& c) { c.sgd.mu = -0.1; }, "mu");
    expect_throw([](RunConfig& c) { c.sgd.gamma = 0.0; }, "gamma");
    expect_throw([](RunConfig& c) { c.sgd.gamma = 1.0; }, "gamma");
    expect_throw([](RunConfig& c) { c.sgd.alpha_scale = -0.5; }, "alpha_scale");
    expect_throw([](RunConfig& c) { c.weights.rho = 1.5; }, "rho");
    expect_throw([](RunConfig& c) { c.weights.beta = -0.2; }, "beta");
    expect_throw([](RunConfig& c) { c.instance.n_arms = 0; }, "n_arms");
}

TEST_CASE("ridge exploration strength resolves from the horizon when unset") {
    RunConfig cfg = small_config(PolicyKind::disjoint_linucb);
    cfg.horizon = 1000;
    CHECK(cfg.resolved_alpha_ridge() ==
          doctest::Approx(1.0 + std::sqrt(std::log(2000.0) / 2.0)).epsilon(1e-15));
    cfg.alpha_ridge = 2.5;
    CHECK(cfg.resolved_alpha_ridge() == 2.5);
}

TEST_CASE("output directory honors the environment override") {
    RunConfig cfg = small_config(PolicyKind::netlinucb);
    cfg.out_dir = "some/dir";
    unsetenv("BANDITNET_OUT");
    CHECK(resolve_out_dir(cfg) == "some/dir");
    setenv("BANDITNET_OUT", "/tmp/banditnet_env_dir", 1);
    CHECK(resolve_out_dir(cfg) == "/tmp/banditnet_env_dir");
    unsetenv("BANDITNET_OUT");
    CHECK(resolve_out_dir(cfg) == "some/dir");
}

// ----------------------------------------------------------------------------
// metrics on synthetic traces
// ----------------------------------------------------------------------------

TEST_CASE("time_average_curve divides running regret by elapsed rounds") {
    // Round sums 1.5, 0.5, 0.0 -> R(t) = 1.5, 2.0, 2.0 -> R(t)/t.
    const RegretTrace trace =
        synthetic_trace(3, 2, {1.0, 0.5, 0.3, 0.2, 0.0, 0.0});
    const auto curve = time_average_curve(trace);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(curve[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(curve[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("per_node_average and pools") {
    const RegretTrace a = synthetic_trace(2, 2, {1.0, 1.0, 1.0, 1.0});  // R=4
    CHECK(per_node_average(a) == doctest::Approx(1.0).epsilon(1e-15));
    const RegretTrace b = synthetic_trace(2, 2, {0.0, 0.0, 0.0, 0.0});
    CHECK(per_node_average(std::vector<RegretTrace>{a, b}) ==
          doctest::Approx(0.5).epsilon(1e-15));

    const RegretTrace short_one = synthetic_trace(1, 2, {0.1, 0.1});
    CHECK_THROWS_AS(per_node_average(std::vector<RegretTrace>{a, short_one}),
                    std::invalid_argument);
    CHECK_THROWS_AS(per_node_average(std::vector<RegretTrace>{}),
                    std::invalid_argument);
}

TEST_CASE("radius_reduction compares pooled mean widths") {
    const RegretTrace wide = synthetic_trace(2, 2, {0, 0, 0, 0}, 2.0);
    const RegretTrace narrow = synthetic_trace(2, 2, {0, 0, 0, 0}, 1.0);
    CHECK(radius_reduction({wide}, {wide}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(radius_reduction({narrow}, {wide}) == doctest::Approx(50.0).epsilon(1e-12));
    // A wider policy than baseline comes out negative.
    CHECK(radius_reduction({wide}, {narrow}) == doctest::Approx(-100.0).epsilon(1e-12));

    CHECK_THROWS_AS(radius_reduction({}, {wide}), std::invalid_argument);
    const RegretTrace zero = synthetic_trace(2, 2, {0, 0, 0, 0}, 0.0);
    CHECK_THROWS_AS(radius_reduction({narrow}, {zero}), std::invalid_argument);
    const RegretTrace other_shape = synthetic_trace(3, 2, {0, 0, 0, 0, 0, 0}, 1.0);
    CHECK_THROWS_AS(radius_reduction({narrow}, {other_shape}), std::invalid_argument);
}

TEST_CASE("comm_scalars_at sums one round across nodes") {
    RegretTrace trace = synthetic_trace(2, 2, {0, 0, 0, 0});
    trace.rows[0].comm_scalars = 3;
    trace.rows[1].comm_scalars = 4;
    trace.rows[2].comm_scalars = 5;
    trace.rows[3].comm_scalars = 6;
    CHECK(trace.comm_scalars_at(1) == 7);
    CHECK(trace.comm_scalars_at(2) == 11);
    CHECK(trace.total_comm_scalars() == 18);
    CHECK(trace.comm_scalars_at(99) == 0);
}

// ----------------------------------------------------------------------------
// run_replication
// ----------------------------------------------------------------------------

TEST_CASE("replications are deterministic in the seed") {
    const RunConfig cfg = small_config(PolicyKind::netlinucb);
    const RegretTrace a = run_replication(cfg, 5);
    const RegretTrace b = run_replication(cfg, 5);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].arm == b.rows[i].arm);
        CHECK(a.rows[i].inst_regret == b.rows[i].inst_regret);  // bit-exact
        CHECK(a.rows[i].radius == b.rows[i].radius);
        CHECK(a.rows[i].comm_scalars == b.rows[i].comm_scalars);
    }
    // A different seed gives a genuinely different replication.
    const RegretTrace c = run_replication(cfg, 6);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.rows.size() && !any_diff; ++i)
        any_diff = a.rows[i].arm != c.rows[i].arm ||
                   a.rows[i].inst_regret != c.rows[i].inst_regret;
    CHECK(any_diff);
}

TEST_CASE("trace rows are complete, ordered, and self-consistent") {
    RunConfig cfg = small_config(PolicyKind::netsgducb);
    cfg.horizon = 20;
    const RegretTrace trace = run_replication(cfg, 3);
    CHECK(trace.policy == "netsgducb");
    CHECK(trace.seed == 3);
    CHECK(trace.n_nodes == 4);
    CHECK(trace.horizon == 20);
    REQUIRE(trace.rows.size() == 4u * 20u);
    CHECK(trace.wall_seconds >= 0.0);
    double cum = 0.0;
    std::size_t idx = 0;
    for (int t = 1; t <= 20; ++t)
        for (int i = 0; i < 4; ++i) {
            const RoundRecord& row = trace.rows[idx++];
            CHECK(row.t == t);
            CHECK(row.node == i);
            CHECK(row.arm >= 0);
            CHECK(row.arm < cfg.instance.n_arms);
            CHECK(row.opt_arm >= 0);
            CHECK(row.opt_arm < cfg.instance.n_arms);
            CHECK(row.inst_regret >= 0.0);  // gap to the optimal arm
            cum += row.inst_regret;
            CHECK(row.cum_regret == doctest::Approx(cum).epsilon(1e-12));
            CHECK(row.radius >= 0.0);
        }
    CHECK(trace.final_cum_regret() == trace.rows.back().cum_regret);
}

TEST_CASE("a one-round replication works") {
    RunConfig cfg = small_config(PolicyKind::disjoint_linucb);
    cfg.horizon = 1;
    const RegretTrace trace = run_replication(cfg, 1);
    CHECK(trace.rows.size() == 4);
    CHECK(time_average_curve(trace).size() == 1);
}

TEST_CASE("per-row communication matches each policy's closed form") {
    // Four fully connected nodes, specific dims all 2, six arms.
    for (const PolicyKind kind :
         {PolicyKind::disjoint_linucb, PolicyKind::shared_linucb,
          PolicyKind::netlinucb, PolicyKind::netsgducb}) {
        RunConfig cfg = small_config(kind);
        cfg.horizon = 5;
        const int k_arms = cfg.instance.n_arms;
        const int d_c = cfg.instance.dims.d_common;
        const RegretTrace trace = run_replication(cfg, 2);
        for (const auto& row : trace.rows) {
            long long expected = 0;
            switch (kind) {
                case PolicyKind::disjoint_linucb: expected = 0; break;
                case PolicyKind::shared_linucb:
                    expected = 3 * (d_c + cfg.instance.dims.d_specific[row.node] + 1);
                    break;
                case PolicyKind::netlinucb: expected = k_arms * 3 * (d_c + 2); break;
                case PolicyKind::netsgducb: expected = k_arms * 3 * 2 * d_c; break;
            }
            CHECK(row.comm_scalars == expected);
        }
    }
}

TEST_CASE("recorded regret replays exactly against a rebuilt environment") {
    RunConfig cfg = small_config(PolicyKind::netlinucb);
    cfg.horizon = 40;
    const std::uint64_t seed = 7;
    const RegretTrace trace = run_replication(cfg, seed);

    InstanceConfig instance = cfg.instance;
    instance.seed = seed;  // the replication seed overrides the instance seed
    const Environment env = Environment::new_instance(instance);
    std::size_t idx = 0;
    double cum = 0.0;
    for (int t = 1; t <= cfg.horizon; ++t) {
        const auto contexts = env.sample_contexts(t);
        for (int i = 0; i < instance.n_nodes; ++i) {
            const RoundRecord& row = trace.rows[idx++];
            // Brute-force optimal arm from the rebuilt ground truth.
            int best = 0;
            double best_val = env.expected_reward(i, 0, contexts[i]);
            for (int k = 1; k < instance.n_arms; ++k) {
                const double val = env.expected_reward(i, k, contexts[i]);
                if (val > best_val) { best_val = val; best = k; }
            }
            CHECK(row.opt_arm == best);
            const double gap =
                best_val - env.expected_reward(i, row.arm, contexts[i]);
            CHECK(row.inst_regret == doctest::Approx(gap).epsilon(1e-12));
            cum += gap;
            CHECK(row.cum_regret == doctest::Approx(cum).epsilon(1e-9));
        }
    }
}

// ----------------------------------------------------------------------------
// trace CSV
// ----------------------------------------------------------------------------

TEST_CASE("trace CSV round-trips bit-exactly") {
    RunConfig cfg = small_config(PolicyKind::netsgducb);
    cfg.horizon = 10;
    const RegretTrace trace = run_replication(cfg, 11);
    const std::string path = temp_path("banditnet_test_trace.csv");
    write_trace_csv(trace, path);

    // Header is the documented column list.
    std::ifstream file(path);
    std::string header;
    std::getline(file, header);
    CHECK(header == "t,node,arm,opt_arm,inst_regret,cum_regret,radius,comm_scalars");
    file.close();

    const RegretTrace back = read_trace_csv(path);
    CHECK(back.horizon == trace.horizon);
    CHECK(back.n_nodes == trace.n_nodes);
    REQUIRE(back.rows.size() == trace.rows.size());
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        CHECK(back.rows[i].t == trace.rows[i].t);
        CHECK(back.rows[i].node == trace.rows[i].node);
        CHECK(back.rows[i].arm == trace.rows[i].arm);
        CHECK(back.rows[i].opt_arm == trace.rows[i].opt_arm);
        CHECK(back.rows[i].inst_regret == trace.rows[i].inst_regret);  // ==, not approx
        CHECK(back.rows[i].cum_regret == trace.rows[i].cum_regret);
        CHECK(back.rows[i].radius == trace.rows[i].radius);
        CHECK(back.rows[i].comm_scalars == trace.rows[i].comm_scalars);
    }
    std::filesystem::remove(path);
}

TEST_CASE("trace CSV rejects bad headers and missing files") {
    const std::string path = temp_path("banditnet_bad_trace.csv");
    std::ofstream(path) << "time,node\n1,0\n";
    CHECK_THROWS_WITH_AS(read_trace_csv(path), doctest::Contains("header"),
                         std::runtime_error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_trace_csv(temp_path("banditnet_absent.csv")),
                    std::runtime_error);
}

TEST_CASE("trace filenames encode policy, topology, and seed") {
    RunConfig cfg = small_config(PolicyKind::netlinucb, "4");
    cfg.topology = "3x4";
    CHECK(trace_filename(cfg, 7) == "trace_netlinucb_3x4_seed7.csv");
    cfg.policy = PolicyKind::shared_linucb;
    cfg.topology = "12";
    CHECK(trace_filename(cfg, 42) == "trace_shared_linucb_12_seed42.csv");
}

// ----------------------------------------------------------------------------
// JSON config files
// ----------------------------------------------------------------------------

TEST_CASE("run configs survive a save/load round trip") {
    RunConfig cfg;
    cfg.instance = preset("high_shared_ratio");
    resize_nodes(cfg.instance, 5);
    cfg.instance.n_arms = 4;
    cfg.instance.noise_sigma = 0.25;
    cfg.instance.reward_gap_scale = 2.0;
    cfg.instance.outlier_probability = 0.05;
    cfg.instance.outlier_magnitude = 3.0;
    cfg.instance.seed = 99;
    cfg.policy = PolicyKind::netsgducb;
    cfg.topology = "5";
    cfg.horizon = 123;
    cfg.seeds = {4, 5, 6};
    cfg.sgd.eta = 0.7;
    cfg.sgd.mu = 0.3;
    cfg.sgd.gamma = 0.9;
    cfg.sgd.alpha_scale = 0.02;
    cfg.sgd.consensus_feedback = true;
    cfg.weights.rho = 0.8;
    cfg.weights.beta = 0.4;
    cfg.out_dir = "elsewhere";
    cfg.write_traces = false;
    cfg.dump_weights = true;

    const std::string path = temp_path("banditnet_cfg.json");
    save_run_config(cfg, path);
    const RunConfig back = load_run_config(path);

    CHECK(back.instance.n_nodes == 5);
    CHECK(back.instance.n_arms == 4);
    CHECK(back.instance.dims.d_common == cfg.instance.dims.d_common);
    CHECK(back.instance.dims.d_specific == cfg.instance.dims.d_specific);
    CHECK(back.instance.noise_sigma == 0.25);
    CHECK(back.instance.context_mean_common == cfg.instance.context_mean_common);
    CHECK(back.instance.context_cov_scale_common ==
          cfg.instance.context_cov_scale_common);
    CHECK(back.instance.context_cov_scale_specific ==
          cfg.instance.context_cov_scale_specific);
    CHECK(back.instance.reward_gap_scale == 2.0);
    CHECK(back.instance.outlier_probability == 0.05);
    CHECK(back.instance.outlier_magnitude == 3.0);
    CHECK(back.instance.seed == 99);
    CHECK(back.policy == PolicyKind::netsgducb);
    CHECK(back.topology == "5");
    CHECK(back.horizon == 123);
    CHECK(back.seeds == std::vector<std::uint64_t>{4, 5, 6});
    CHECK(std::isnan(back.alpha_ridge));  // NaN saved as null, loaded as NaN
    CHECK(back.sgd.eta == 0.7);
    CHECK(back.sgd.mu == 0.3);
    CHECK(back.sgd.gamma == 0.9);
    CHECK(back.sgd.alpha_scale == 0.02);
    CHECK(back.sgd.consensus_feedback == true);
    CHECK(back.weights.rho == 0.8);
    CHECK(back.weights.beta == 0.4);
    CHECK(back.out_dir == "elsewhere");
    CHECK(back.write_traces == false);
    CHECK(back.dump_weights == true);

    // An explicit ridge exploration strength round-trips as a number.
    cfg.alpha_ridge = 1.75;
    save_run_config(cfg, path);
    CHECK(load_run_config(path).alpha_ridge == 1.75);
    std::filesystem::remove(path);
}

TEST_CASE("config files may start from a named preset and override fields") {
    const std::string path = temp_path("banditnet_preset_cfg.json");
    std::ofstream(path) << R"({
        "instance": {"preset": "high_shared_ratio", "n_nodes": 4,
                     "noise_sigma": 0.3},
        "policy": "netsgducb",
        "topology": "2x2",
        "horizon": 50,
        "seeds": [3, 4]
    })";
    const RunConfig cfg = load_run_config(path);
    const InstanceConfig reference = preset("high_shared_ratio");
    CHECK(cfg.instance.n_nodes == 4);
    CHECK(cfg.instance.dims.d_common == reference.dims.d_common);
    CHECK(cfg.instance.dims.d_specific ==
          std::vector<int>(4, reference.dims.d_specific[0]));
    CHECK(cfg.instance.noise_sigma == 0.3);
    CHECK(cfg.instance.n_arms == reference.n_arms);
    CHECK(cfg.policy == PolicyKind::netsgducb);
    CHECK(cfg.topology == "2x2");
    CHECK(cfg.horizon == 50);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
    // Untouched fields keep their defaults.
    CHECK(cfg.sgd.eta == SgdHyperparams{}.eta);
    CHECK(cfg.write_traces == true);
    CHECK_NOTHROW(cfg.validate());
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_run_config(temp_path("banditnet_absent.json")),
                    std::runtime_error);
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_WITH_AS(load_run_config(path), doctest::Contains("bad JSON"),
                         std::runtime_error);
    std::filesystem::remove(path);
}

// ----------------------------------------------------------------------------
// sweeps
// ----------------------------------------------------------------------------

TEST_CASE("a sweep covers the grid and matches direct replications") {
    SweepConfig sweep_cfg;
    sweep_cfg.base = small_config(PolicyKind::netlinucb);
    sweep_cfg.base.horizon = 10;
    sweep_cfg.base.seeds = {1, 2};
    sweep_cfg.policies = {PolicyKind::disjoint_linucb, PolicyKind::netlinucb};
    sweep_cfg.topologies = {"4", "2x2"};
    const SweepResult result = sweep(sweep_cfg);
    CHECK(result.all_ok);
    REQUIRE(result.cells.size() == 4);

    // Recompute the first cell directly.
    const SweepCell& cell = result.cells.front();
    CHECK(cell.policy == PolicyKind::disjoint_linucb);
    CHECK(cell.topology == "4");
    CHECK(cell.ok);
    CHECK(cell.n_seeds_ok == 2);
    RunConfig direct = sweep_cfg.base;
    direct.policy = cell.policy;
    direct.topology = cell.topology;
    double mean = 0.0, comm = 0.0;
    std::vector<double> finals;
    for (const std::uint64_t seed : direct.seeds) {
        const RegretTrace trace = run_replication(direct, seed);
        finals.push_back(per_node_average(trace));
        comm += static_cast<double>(trace.total_comm_scalars());
    }
    for (double f : finals) mean += f;
    mean /= static_cast<double>(finals.size());
    CHECK(cell.mean_final_per_node == doctest::Approx(mean).epsilon(1e-12));
    CHECK(cell.mean_comm_total == doctest::Approx(comm / 2.0).epsilon(1e-12));
    const double var = (finals[0] - mean) * (finals[0] - mean) +
                       (finals[1] - mean) * (finals[1] - mean);
    CHECK(cell.std_final_per_node == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
    CHECK(cell.mean_ms_per_round >= 0.0);
}

TEST_CASE("a failing cell is isolated and reported") {
    SweepConfig sweep_cfg;
    sweep_cfg.base = small_config(PolicyKind::disjoint_linucb);
    sweep_cfg.base.horizon = 5;
    sweep_cfg.policies = {PolicyKind::disjoint_linucb};
    sweep_cfg.topologies = {"4", "5"};  // "5" mismatches the 4-node instance
    const SweepResult result = sweep(sweep_cfg);
    CHECK_FALSE(result.all_ok);
    REQUIRE(result.cells.size() == 2);
    CHECK(result.cells[0].ok);
    CHECK_FALSE(result.cells[1].ok);
    CHECK(result.cells[1].error.find("topology") != std::string::npos);
    CHECK(result.cells[1].n_seeds_ok == 0);
}

TEST_CASE("sweep CSV lists one row per cell") {
    SweepConfig sweep_cfg;
    sweep_cfg.base = small_config(PolicyKind::disjoint_linucb);
    sweep_cfg.base.horizon = 5;
    sweep_cfg.policies = {PolicyKind::disjoint_linucb};
    sweep_cfg.topologies = {"4", "5"};
    const SweepResult result = sweep(sweep_cfg);
    const std::string path = temp_path("banditnet_sweep.csv");
    write_sweep_csv(result, path);
    std::ifstream file(path);
    std::string line;
    std::getline(file, line);
    CHECK(line ==
          "policy,topology,n_seeds_ok,mean_final_per_node,std_final_per_node,"
          "mean_ms_per_round,mean_comm_total,status,error");
    int rows = 0;
    bool saw_ok = false, saw_failed = false;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        ++rows;
        saw_ok = saw_ok || line.find(",ok,") != std::string::npos;
        saw_failed = saw_failed || line.find(",failed,") != std::string::npos;
    }
    CHECK(rows == 2);
    CHECK(saw_ok);
    CHECK(saw_failed);
    std::filesystem::remove(path);
}

// ----------------------------------------------------------------------------
// weight dumps
// ----------------------------------------------------------------------------

TEST_CASE("weight CSV dumps only policies that have weight matrices") {
    RunConfig cfg = small_config(PolicyKind::netlinucb);
    cfg.horizon = 5;
    std::unique_ptr<Policy> policy;
    run_replication(cfg, 1, &policy);
    REQUIRE(policy != nullptr);
    const std::string path = temp_path("banditnet_weights.csv");
    CHECK(write_weight_csv(*policy, path));
    std::ifstream file(path);
    std::string header;
    std::getline(file, header);
    CHECK(header == "arm,from,to,weight");
    int rows = 0;
    for (std::string line; std::getline(file, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == cfg.instance.n_arms * 4 * 4);
    std::filesystem::remove(path);

    RunConfig plain = small_config(PolicyKind::disjoint_linucb);
    plain.horizon = 2;
    std::unique_ptr<Policy> baseline;
    run_replication(plain, 1, &baseline);
    CHECK_FALSE(write_weight_csv(*baseline, path));
    CHECK_FALSE(std::filesystem::exists(path));
}
