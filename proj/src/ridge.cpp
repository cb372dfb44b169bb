#include "banditnet/ridge.hpp"

#include <cmath>
#include <stdexcept>

namespace banditnet {

// ----------------------------------------------------------------------------
// ridge state
// ----------------------------------------------------------------------------

RidgeState::RidgeState(int dim) {
    if (dim < 1) throw std::invalid_argument("RidgeState: dim must be >= 1");
    w_ = Eigen::MatrixXd::Identity(dim, dim);
    w_inv_ = Eigen::MatrixXd::Identity(dim, dim);
    b_ = Eigen::VectorXd::Zero(dim);
}

void RidgeState::update(const Eigen::VectorXd& x, double reward) {
    if (x.size() != b_.size())
        throw std::invalid_argument("RidgeState::update: dimension mismatch");
    w_.noalias() += x * x.transpose();
    b_.noalias() += reward * x;
    ++n_updates_;
    if (n_updates_ % kInverseRefreshInterval == 0) {
        // Periodic direct solve caps the drift of the rank-one updates.
        w_inv_ = w_.ldlt().solve(Eigen::MatrixXd::Identity(dim(), dim()));
    } else {
        const Eigen::VectorXd u = w_inv_ * x;
        const double denom = 1.0 + x.dot(u);
        w_inv_.noalias() -= (u * u.transpose()) / denom;
    }
}

// ----------------------------------------------------------------------------
// selection helper
// ----------------------------------------------------------------------------

int select_ucb(const std::vector<double>& points, const std::vector<double>& radii,
               double alpha) {
    if (points.empty() || points.size() != radii.size())
        throw std::invalid_argument("select_ucb: points/radii size mismatch");
    int best = 0;
    double best_score = points[0] + alpha * radii[0];
    for (int k = 1; k < static_cast<int>(points.size()); ++k) {
        const double score = points[k] + alpha * radii[k];
        if (score > best_score) {
            best_score = score;
            best = k;
        }
    }
    return best;
}

// ----------------------------------------------------------------------------
// stacked embedding
// ----------------------------------------------------------------------------

Eigen::VectorXd shared_embedding(const Dimensions& dims, int node, const Context& ctx) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dims.stacked_dim());
    out.head(dims.d_common) = ctx.common;
    out.segment(dims.stacked_offset(node), dims.d_specific.at(node)) = ctx.specific;
    return out;
}

// ----------------------------------------------------------------------------
// disjoint baseline
// ----------------------------------------------------------------------------

DisjointLinUcbPolicy::DisjointLinUcbPolicy(const Dimensions& dims, int n_arms,
                                           double alpha)
    : dims_(dims), alpha_(alpha) {
    dims_.validate();
    states_.reserve(dims_.n_nodes());
    for (int i = 0; i < dims_.n_nodes(); ++i)
        states_.emplace_back(n_arms, RidgeState(dims_.node_dim(i)));
}

std::vector<NodeDecision> DisjointLinUcbPolicy::step(
    int, const std::vector<Context>& contexts, const RewardCallback& observe) {
    const int n_arms = static_cast<int>(states_.front().size());
    std::vector<NodeDecision> out(dims_.n_nodes());
    for (int i = 0; i < dims_.n_nodes(); ++i) {
        const Eigen::VectorXd x = concat_context(contexts[i]);
        std::vector<double> points(n_arms), radii(n_arms);
        for (int k = 0; k < n_arms; ++k) {
            points[k] = states_[i][k].point().dot(x);
            radii[k] = std::sqrt(states_[i][k].quad(x));
        }
        const int chosen = select_ucb(points, radii, alpha_);
        const double reward = observe(i, chosen);
        states_[i][chosen].update(x, reward);
        out[i] = NodeDecision{chosen, radii[chosen], 0};
    }
    return out;
}

// ----------------------------------------------------------------------------
// one-model baseline
// ----------------------------------------------------------------------------

SharedLinUcbPolicy::SharedLinUcbPolicy(const Dimensions& dims, int n_arms,
                                       double alpha)
    : dims_(dims), alpha_(alpha) {
    dims_.validate();
    states_.assign(n_arms, RidgeState(dims_.stacked_dim()));
}

std::vector<NodeDecision> SharedLinUcbPolicy::step(
    int, const std::vector<Context>& contexts, const RewardCallback& observe) {
    const int n_arms = static_cast<int>(states_.size());
    const int n = dims_.n_nodes();
    std::vector<NodeDecision> out(n);
    for (int i = 0; i < n; ++i) {  // sequential: later nodes see earlier updates
        const Eigen::VectorXd x = shared_embedding(dims_, i, contexts[i]);
        std::vector<double> points(n_arms), radii(n_arms);
        for (int k = 0; k < n_arms; ++k) {
            points[k] = states_[k].point().dot(x);
            radii[k] = std::sqrt(states_[k].quad(x));
        }
        const int chosen = select_ucb(points, radii, alpha_);
        const double reward = observe(i, chosen);
        states_[chosen].update(x, reward);
        // Observation broadcast: embedded context + reward to every peer.
        const std::int64_t cost =
            static_cast<std::int64_t>(n - 1) * (dims_.node_dim(i) + 1);
        out[i] = NodeDecision{chosen, radii[chosen], cost};
    }
    return out;
}

}  // namespace banditnet
