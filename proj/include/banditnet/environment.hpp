// ============================================================================
//  environment.hpp — synthetic networked linear-reward environment
//
//  PURPOSE
//    Draws a ground-truth parameter set (one common block per arm, shared by
//    every node, plus per-(node, arm) specific blocks, all inside the unit
//    ball), then serves per-round split contexts and noisy linear rewards.
//    Every draw is keyed by (seed, purpose, node, arm, round), so instances
//    restricted to their first n nodes coincide across network sizes and the
//    context/noise streams are identical across policies.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace banditnet {

// ----------------------------------------------------------------------------
// configuration
// ----------------------------------------------------------------------------

struct InstanceConfig {
    int n_nodes = 0;
    int n_arms = 0;
    Dimensions dims;                       // dims.d_specific has n_nodes entries
    double noise_sigma = 0.1;              // reward noise std deviation, >= 0
    Eigen::VectorXd context_mean_common;   // length dims.d_common
    double context_cov_scale_common = 0.1; // per-dim variance of common block
    std::vector<double> context_cov_scale_specific;  // per node, > 0
    double reward_gap_scale = 1.0;         // > 0; scales best-vs-rest spread
    double outlier_probability = 0.0;      // chance a raw context is inflated
    double outlier_magnitude = 1.0;        // inflation factor, >= 1
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument naming the field
};

// Parameters behind the rewards.  theta_common holds one vector per arm and is
// the single shared copy referenced by every node; theta_specific is indexed
// [node][arm].  Invariant: every concatenated [common; specific] has norm <= 1.
struct GroundTruth {
    std::vector<Eigen::VectorXd> theta_common;
    std::vector<std::vector<Eigen::VectorXd>> theta_specific;
};

// ----------------------------------------------------------------------------
// environment
// ----------------------------------------------------------------------------

class Environment {
  public:
    // Validates the config and draws the ground truth deterministically.
    static Environment new_instance(const InstanceConfig& config);

    // One split context per node for round t (t >= 1).  Common block is
    // N(mean, cov_scale_common * I), specific N(0, cov_scale_specific[i] * I);
    // with outlier_probability the raw vector is scaled by outlier_magnitude;
    // the concatenation is then clamped to the unit ball and re-split.
    std::vector<Context> sample_contexts(int t) const;

    // <x_common, theta_common[arm]> + <x_specific, theta_specific[node][arm]>.
    double expected_reward(int node, int arm, const Context& ctx) const;

    // expected_reward + noise_sigma * z, where z is the first standard-normal
    // variate drawn from `rng` — so the realized noise never depends on which
    // arm was chosen.
    double draw_reward(int node, int arm, const Context& ctx,
                       std::mt19937_64& rng) const;

    // Argmax of expected_reward over arms; ties go to the lowest index.
    int optimal_arm(int node, const Context& ctx) const;

    const InstanceConfig& config() const { return config_; }
    const GroundTruth& truth() const { return truth_; }

  private:
    InstanceConfig config_;
    GroundTruth truth_;
};

// ----------------------------------------------------------------------------
// presets
// ----------------------------------------------------------------------------

// Named instance families: "default", "low_shared_ratio", "high_shared_ratio",
// "outlier", "rich_actions", "large_gap".  Unknown names throw with the list
// of valid ones.
InstanceConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Deterministic per-node specific covariance scale in [0.05, 0.2] (low-
// discrepancy sequence, so a config resized to n nodes keeps nodes 0..n-1).
double preset_specific_scale(int node);

// Rebuilds the per-node vectors of `config` for a new node count.
void resize_nodes(InstanceConfig& config, int n_nodes);

}  // namespace banditnet
