// ============================================================================
//  ridge.hpp — online ridge regression and the two ridge baselines
//
//  PURPOSE
//    RidgeState maintains W = I + sum x x^T and b = sum r x with a rank-one
//    (Sherman–Morrison) inverse that is re-solved directly every 512 updates
//    to cap drift.  On top of it: the shared UCB argmax helper, the stacked
//    one-model embedding, and the two baseline policies — fully independent
//    per-node learners and one global model over the stacked embedding.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"
#include "banditnet/policy.hpp"

#include <vector>

namespace banditnet {

// ----------------------------------------------------------------------------
// ridge state
// ----------------------------------------------------------------------------

// Number of rank-one inverse updates between direct re-solves.
inline constexpr int kInverseRefreshInterval = 512;

class RidgeState {
  public:
    explicit RidgeState(int dim);

    // W += x x^T, b += reward * x, inverse updated by Sherman–Morrison.
    void update(const Eigen::VectorXd& x, double reward);
    // Point estimate W^{-1} b.
    Eigen::VectorXd point() const { return w_inv_ * b_; }
    // Quadratic form x^T W^{-1} x (nonnegative; squared confidence width).
    double quad(const Eigen::VectorXd& x) const { return x.dot(w_inv_ * x); }

    const Eigen::MatrixXd& design() const { return w_; }
    const Eigen::MatrixXd& inverse() const { return w_inv_; }
    const Eigen::VectorXd& moment() const { return b_; }
    int dim() const { return static_cast<int>(b_.size()); }
    long long n_updates() const { return n_updates_; }

  private:
    Eigen::MatrixXd w_;
    Eigen::MatrixXd w_inv_;
    Eigen::VectorXd b_;
    long long n_updates_ = 0;
};

// Separate ridge problems for the common and specific blocks of one
// (node, arm) pair.
struct RidgeBlockState {
    RidgeState common;
    RidgeState specific;
    RidgeBlockState(int d_common, int d_specific)
        : common(d_common), specific(d_specific) {}
};

// ----------------------------------------------------------------------------
// selection helper
// ----------------------------------------------------------------------------

// argmax_k points[k] + alpha * radii[k]; ties go to the lowest index.
int select_ucb(const std::vector<double>& points, const std::vector<double>& radii,
               double alpha);

// ----------------------------------------------------------------------------
// stacked embedding
// ----------------------------------------------------------------------------

// [x_common | 0 ... 0 | x_specific | 0 ... 0]: the node's split context
// embedded into the global feature layout used by the one-model baseline.
Eigen::VectorXd shared_embedding(const Dimensions& dims, int node, const Context& ctx);

// ----------------------------------------------------------------------------
// baseline policies
// ----------------------------------------------------------------------------

// Each node runs its own per-arm ridge model on its concatenated context.
// No communication at all.
class DisjointLinUcbPolicy : public Policy {
  public:
    DisjointLinUcbPolicy(const Dimensions& dims, int n_arms, double alpha);
    std::string name() const override { return "disjoint_linucb"; }
    std::vector<NodeDecision> step(int t, const std::vector<Context>& contexts,
                                   const RewardCallback& observe) override;
    const RidgeState& state(int node, int arm) const { return states_[node][arm]; }

  private:
    Dimensions dims_;
    double alpha_;
    std::vector<std::vector<RidgeState>> states_;  // [node][arm]
};

// One global per-arm ridge model over the stacked embedding; nodes take turns
// within a round and each update is immediately visible to later nodes.
// Charged one observation broadcast per node per round.
class SharedLinUcbPolicy : public Policy {
  public:
    SharedLinUcbPolicy(const Dimensions& dims, int n_arms, double alpha);
    std::string name() const override { return "shared_linucb"; }
    std::vector<NodeDecision> step(int t, const std::vector<Context>& contexts,
                                   const RewardCallback& observe) override;
    const RidgeState& state(int arm) const { return states_[arm]; }

  private:
    Dimensions dims_;
    double alpha_;
    std::vector<RidgeState> states_;  // [arm], dimension = stacked_dim
};

}  // namespace banditnet
