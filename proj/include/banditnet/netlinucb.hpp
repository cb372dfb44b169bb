// ============================================================================
//  netlinucb.hpp — decentralized ridge policy with weighted summary sharing
//
//  PURPOSE
//    Every (node, arm) pair keeps two independent ridge problems: one over
//    the common context block, one over the node-specific block.  To score an
//    arm, a node broadcasts its common context to its component and each
//    neighbor answers with a scalar point contribution and a scalar squared
//    width; the node mixes replies with its adaptive weight column.  Rewards
//    update only the node's own two blocks.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"
#include "banditnet/policy.hpp"
#include "banditnet/ridge.hpp"
#include "banditnet/weights.hpp"

#include <cstdint>
#include <vector>

namespace banditnet {

// What one neighbor returns for one (requesting context, arm): its point
// estimate's projection on the context and the squared confidence width.
struct CommonSummary {
    double dot = 0.0;   // <x_common, neighbor's common point estimate>
    double quad = 0.0;  // x_common^T (neighbor's common W)^{-1} x_common
};

// Point + width pair produced by the scoring ops.
struct UcbScore {
    double point = 0.0;
    double radius = 0.0;
};

// Collects one summary per component member (self included, wire-free).
// `ledger`, if given, is charged d_common + 2 scalars per cross-node reply:
// the broadcast context out, the two summary scalars back.
std::vector<CommonSummary> request_summaries(
    const std::vector<std::vector<RidgeBlockState>>& states, const Topology& topology,
    int node, int arm, const Eigen::VectorXd& x_common,
    std::int64_t* ledger = nullptr);

// Mixes the summaries with the node's weight column and adds the node's own
// specific-block contribution.  summaries are aligned with
// topology.neighbors(node).
UcbScore netlin_ucb(const WeightMatrixSet& weights, const Topology& topology,
                    int node, int arm, const std::vector<CommonSummary>& summaries,
                    const RidgeState& own_specific, const Eigen::VectorXd& x_specific);

class NetLinUcbPolicy : public Policy {
  public:
    NetLinUcbPolicy(const Dimensions& dims, int n_arms, const Topology& topology,
                    double alpha, const WeightsConfig& weights_config);
    std::string name() const override { return "netlinucb"; }

    // One round: refresh the weight matrices from current counts/contexts,
    // score every (node, arm) from start-of-round states, then apply each
    // node's reward to its own blocks.
    std::vector<NodeDecision> step(int t, const std::vector<Context>& contexts,
                                   const RewardCallback& observe) override;

    const RidgeBlockState& state(int node, int arm) const { return states_[node][arm]; }
    const WeightMatrixSet& weight_matrices() const { return weights_; }
    const ArmCounts& counts() const { return counts_; }

  private:
    Dimensions dims_;
    int n_arms_;
    Topology topology_;
    double alpha_;
    WeightsConfig weights_config_;
    std::vector<std::vector<RidgeBlockState>> states_;  // [node][arm]
    WeightMatrixSet weights_;
    ArmCounts counts_;
};

}  // namespace banditnet
