#include "banditnet/netsgducb.hpp"

#include "banditnet/ridge.hpp"  // select_ucb

#include <cmath>
#include <stdexcept>

namespace banditnet {

// ----------------------------------------------------------------------------
// single-learner ops
// ----------------------------------------------------------------------------

SgdArmState::SgdArmState(int dim) {
    if (dim < 1) throw std::invalid_argument("SgdArmState: dim must be >= 1");
    theta = Eigen::VectorXd::Zero(dim);
    momentum = Eigen::VectorXd::Zero(dim);
    g_diag = Eigen::VectorXd::Ones(dim);
}

Eigen::VectorXd sgd_gradient(const Eigen::VectorXd& theta, const Eigen::VectorXd& x,
                             double reward) {
    if (theta.size() != x.size())
        throw std::invalid_argument("sgd_gradient: theta/x dimension mismatch");
    return -(reward - x.dot(theta)) * x;
}

void sgd_apply(SgdArmState& state, const Eigen::VectorXd& grad,
               const SgdHyperparams& hyper) {
    if (grad.size() != state.theta.size())
        throw std::invalid_argument("sgd_apply: grad/state dimension mismatch");
    state.momentum = hyper.mu * state.momentum + (1.0 - hyper.mu) * grad;
    state.theta -= hyper.eta * state.momentum;
    state.g_diag = hyper.gamma * state.g_diag +
                   (1.0 - hyper.gamma) * grad.array().square().matrix();
}

void sgd_decay(SgdArmState& state, const SgdHyperparams& hyper) {
    state.g_diag *= hyper.gamma;
}

// ----------------------------------------------------------------------------
// network ops
// ----------------------------------------------------------------------------

Eigen::VectorXd aggregate_common(const std::vector<std::vector<SgdArmState>>& states,
                                 const WeightMatrixSet& weights,
                                 const Topology& topology, int node, int arm,
                                 int d_common, std::int64_t* ledger) {
    Eigen::VectorXd mixed = Eigen::VectorXd::Zero(d_common);
    for (int j : topology.neighbors(node)) {
        mixed += weights.weight(arm, j, node) * states.at(j).at(arm).theta.head(d_common);
        if (ledger && j != node) *ledger += d_common;
    }
    return mixed;
}

UcbScore netsgd_ucb(const std::vector<std::vector<SgdArmState>>& states,
                    const WeightMatrixSet& weights, const Topology& topology,
                    int node, int arm, const Context& ctx, int d_common,
                    const Eigen::VectorXd& aggregated_common, std::int64_t* ledger) {
    const SgdArmState& own = states.at(node).at(arm);
    const Eigen::ArrayXd x_common_sq = ctx.common.array().square();

    double point = ctx.common.dot(aggregated_common) +
                   ctx.specific.dot(own.theta.tail(ctx.specific.size()));

    double quad = 0.0;
    for (int j : topology.neighbors(node)) {
        const double w = weights.weight(arm, j, node);
        const Eigen::ArrayXd g_common =
            states.at(j).at(arm).g_diag.head(d_common).array();
        quad += w * w * (x_common_sq / g_common).sum();
        if (ledger && j != node) *ledger += d_common;
    }
    const Eigen::ArrayXd g_specific =
        own.g_diag.tail(ctx.specific.size()).array();
    quad += (ctx.specific.array().square() / g_specific).sum();
    return UcbScore{point, std::sqrt(quad)};
}

// ----------------------------------------------------------------------------
// policy
// ----------------------------------------------------------------------------

NetSgdUcbPolicy::NetSgdUcbPolicy(const Dimensions& dims, int n_arms,
                                 const Topology& topology,
                                 const SgdHyperparams& hyper, double noise_sigma,
                                 const WeightsConfig& weights_config)
    : dims_(dims),
      n_arms_(n_arms),
      topology_(topology),
      hyper_(hyper),
      alpha_(hyper.alpha(noise_sigma)),
      weights_config_(weights_config),
      weights_(WeightMatrixSet::identity(dims.n_nodes(), n_arms)),
      counts_(dims.n_nodes(), n_arms) {
    dims_.validate();
    if (topology_.n_nodes() != dims_.n_nodes())
        throw std::invalid_argument("NetSgdUcbPolicy: topology/dims node mismatch");
    states_.reserve(dims_.n_nodes());
    for (int i = 0; i < dims_.n_nodes(); ++i) {
        std::vector<SgdArmState> row;
        row.reserve(n_arms_);
        for (int k = 0; k < n_arms_; ++k) row.emplace_back(dims_.node_dim(i));
        states_.push_back(std::move(row));
    }
}

std::vector<NodeDecision> NetSgdUcbPolicy::step(int,
                                                const std::vector<Context>& contexts,
                                                const RewardCallback& observe) {
    const int n = dims_.n_nodes();
    update_weights(weights_, counts_, contexts, topology_, weights_config_);

    // Phase 1: score every (node, arm) from start-of-round states.  The mixed
    // common estimates are cached so consensus feedback reuses the snapshot.
    std::vector<NodeDecision> out(n);
    std::vector<std::vector<Eigen::VectorXd>> mixed(n);
    for (int i = 0; i < n; ++i) {
        std::int64_t ledger = 0;
        mixed[i].reserve(n_arms_);
        std::vector<double> points(n_arms_), radii(n_arms_);
        for (int k = 0; k < n_arms_; ++k) {
            mixed[i].push_back(aggregate_common(states_, weights_, topology_, i, k,
                                                dims_.d_common, &ledger));
            const UcbScore score = netsgd_ucb(states_, weights_, topology_, i, k,
                                              contexts[i], dims_.d_common,
                                              mixed[i][k], &ledger);
            points[k] = score.point;
            radii[k] = score.radius;
        }
        const int chosen = select_ucb(points, radii, alpha_);
        out[i] = NodeDecision{chosen, radii[chosen], ledger};
    }

    // Phase 2: one full update for the pulled arm, one width decay for all
    // the others; estimates of unpulled arms stay frozen.
    for (int i = 0; i < n; ++i) {
        const int chosen = out[i].arm;
        const double reward = observe(i, chosen);
        SgdArmState& state = states_[i][chosen];
        if (hyper_.consensus_feedback)
            state.theta.head(dims_.d_common) = mixed[i][chosen];
        const Eigen::VectorXd x = concat_context(contexts[i]);
        sgd_apply(state, sgd_gradient(state.theta, x, reward), hyper_);
        for (int k = 0; k < n_arms_; ++k)
            if (k != chosen) sgd_decay(states_[i][k], hyper_);
        counts_.record_pull(i, chosen);
    }
    return out;
}

}  // namespace banditnet
