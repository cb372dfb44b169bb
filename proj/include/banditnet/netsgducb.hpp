// ============================================================================
//  netsgducb.hpp — decentralized momentum-SGD policy with diagonal widths
//
//  PURPOSE
//    Each (node, arm) pair keeps a parameter estimate trained by momentum
//    SGD on the squared prediction error, plus an EMA of squared gradient
//    components whose elementwise reciprocal yields a confidence width.  For
//    scoring, a node mixes its neighbors' common-block estimates and width
//    accumulators with its adaptive weight column; the mix is transient and
//    never written back (unless consensus feedback is switched on).  Every
//    accumulator decays once per round; the gradient/momentum/estimate
//    updates touch only the arm the node actually pulled.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"
#include "banditnet/netlinucb.hpp"  // UcbScore
#include "banditnet/policy.hpp"
#include "banditnet/weights.hpp"

#include <cstdint>
#include <vector>

namespace banditnet {

// ----------------------------------------------------------------------------
// state and hyperparameters
// ----------------------------------------------------------------------------

struct SgdHyperparams {
    double eta = 2.0;           // SGD step size
    double mu = 0.5;            // momentum retention
    double gamma = 0.95;        // EMA retention of the width accumulator
    double alpha_scale = 0.001; // exploration strength, multiplies (1 + sigma^2)
    bool consensus_feedback = false;  // write the mixed common estimate back
                                      // into the node's own state before its
                                      // gradient step

    double alpha(double noise_sigma) const {
        return (1.0 + noise_sigma * noise_sigma) * alpha_scale;
    }
};

// Full-length (common + specific) learner state for one (node, arm) pair.
struct SgdArmState {
    Eigen::VectorXd theta;     // point estimate, starts at 0
    Eigen::VectorXd momentum;  // gradient EMA, starts at 0
    Eigen::VectorXd g_diag;    // squared-gradient EMA, starts at 1 per entry

    explicit SgdArmState(int dim);
};

// ----------------------------------------------------------------------------
// single-learner ops
// ----------------------------------------------------------------------------

// Gradient of 0.5 * (reward - <x, theta>)^2 at theta: -(reward - <x, theta>) x.
Eigen::VectorXd sgd_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& x,
                             double reward);

// momentum <- mu*momentum + (1-mu)*grad;  theta <- theta - eta*momentum;
// g_diag <- gamma*g_diag + (1-gamma)*grad.^2 — in that order.
void sgd_apply(SgdArmState& state, const Eigen::VectorXd& grad,
               const SgdHyperparams& hyper);

// The no-pull round update: g_diag <- gamma * g_diag (theta and momentum are
// untouched).  Keeps stale arms' widths growing so they get revisited.
void sgd_decay(SgdArmState& state, const SgdHyperparams& hyper);

// ----------------------------------------------------------------------------
// network ops
// ----------------------------------------------------------------------------

// sum_j omega_{j,node} * theta_j[common block] over the node's component.
// `ledger`, if given, is charged d_common scalars per cross-node term.
Eigen::VectorXd aggregate_common(const std::vector<std::vector<SgdArmState>>& states,
                                 const WeightMatrixSet& weights,
                                 const Topology& topology, int node, int arm,
                                 int d_common, std::int64_t* ledger = nullptr);

// Point: <x_common, mixed common estimate> + <x_specific, own specific block>.
// Radius: sqrt( sum_j omega^2 * sum_h x_c,h^2 / G_{j,h}  +  own specific
// quad ), i.e. squared weights against the neighbors' common accumulators.
// `ledger` is charged d_common per cross-node accumulator fetched.
UcbScore netsgd_ucb(const std::vector<std::vector<SgdArmState>>& states,
                    const WeightMatrixSet& weights, const Topology& topology,
                    int node, int arm, const Context& ctx, int d_common,
                    const Eigen::VectorXd& aggregated_common,
                    std::int64_t* ledger = nullptr);

// ----------------------------------------------------------------------------
// policy
// ----------------------------------------------------------------------------

class NetSgdUcbPolicy : public Policy {
  public:
    NetSgdUcbPolicy(const Dimensions& dims, int n_arms, const Topology& topology,
                    const SgdHyperparams& hyper, double noise_sigma,
                    const WeightsConfig& weights_config);
    std::string name() const override { return "netsgducb"; }

    std::vector<NodeDecision> step(int t, const std::vector<Context>& contexts,
                                   const RewardCallback& observe) override;

    const SgdArmState& state(int node, int arm) const { return states_[node][arm]; }
    const WeightMatrixSet& weight_matrices() const { return weights_; }
    const ArmCounts& counts() const { return counts_; }

  private:
    Dimensions dims_;
    int n_arms_;
    Topology topology_;
    SgdHyperparams hyper_;
    double alpha_;
    WeightsConfig weights_config_;
    std::vector<std::vector<SgdArmState>> states_;  // [node][arm]
    WeightMatrixSet weights_;
    ArmCounts counts_;
};

}  // namespace banditnet
