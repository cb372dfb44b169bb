#include "banditnet/netlinucb.hpp"

#include <cmath>
#include <stdexcept>

namespace banditnet {

std::vector<CommonSummary> request_summaries(
    const std::vector<std::vector<RidgeBlockState>>& states, const Topology& topology,
    int node, int arm, const Eigen::VectorXd& x_common, std::int64_t* ledger) {
    const std::vector<int>& peers = topology.neighbors(node);
    std::vector<CommonSummary> out;
    out.reserve(peers.size());
    for (int j : peers) {
        const RidgeState& block = states.at(j).at(arm).common;
        out.push_back(CommonSummary{block.point().dot(x_common), block.quad(x_common)});
        if (ledger && j != node)
            *ledger += static_cast<std::int64_t>(x_common.size()) + 2;
    }
    return out;
}

UcbScore netlin_ucb(const WeightMatrixSet& weights, const Topology& topology,
                    int node, int arm, const std::vector<CommonSummary>& summaries,
                    const RidgeState& own_specific, const Eigen::VectorXd& x_specific) {
    const std::vector<int>& peers = topology.neighbors(node);
    if (summaries.size() != peers.size())
        throw std::invalid_argument("netlin_ucb: summaries/neighbors size mismatch");
    double point = 0.0;
    double quad = 0.0;
    for (std::size_t idx = 0; idx < peers.size(); ++idx) {
        const double w = weights.weight(arm, peers[idx], node);
        point += w * summaries[idx].dot;
        quad += w * w * summaries[idx].quad;
    }
    point += own_specific.point().dot(x_specific);
    quad += own_specific.quad(x_specific);
    return UcbScore{point, std::sqrt(quad)};
}

NetLinUcbPolicy::NetLinUcbPolicy(const Dimensions& dims, int n_arms,
                                 const Topology& topology, double alpha,
                                 const WeightsConfig& weights_config)
    : dims_(dims),
      n_arms_(n_arms),
      topology_(topology),
      alpha_(alpha),
      weights_config_(weights_config),
      weights_(WeightMatrixSet::identity(dims.n_nodes(), n_arms)),
      counts_(dims.n_nodes(), n_arms) {
    dims_.validate();
    if (topology_.n_nodes() != dims_.n_nodes())
        throw std::invalid_argument("NetLinUcbPolicy: topology/dims node mismatch");
    states_.reserve(dims_.n_nodes());
    for (int i = 0; i < dims_.n_nodes(); ++i) {
        std::vector<RidgeBlockState> row;
        row.reserve(n_arms_);
        for (int k = 0; k < n_arms_; ++k)
            row.emplace_back(dims_.d_common, dims_.d_specific[i]);
        states_.push_back(std::move(row));
    }
}

std::vector<NodeDecision> NetLinUcbPolicy::step(int,
                                                const std::vector<Context>& contexts,
                                                const RewardCallback& observe) {
    const int n = dims_.n_nodes();
    update_weights(weights_, counts_, contexts, topology_, weights_config_);

    // Score everything from start-of-round states, then update, so no node's
    // fresh reward leaks into a peer's decision within the same round.
    std::vector<NodeDecision> out(n);
    for (int i = 0; i < n; ++i) {
        std::int64_t ledger = 0;
        std::vector<double> points(n_arms_), radii(n_arms_);
        for (int k = 0; k < n_arms_; ++k) {
            const auto summaries = request_summaries(states_, topology_, i, k,
                                                     contexts[i].common, &ledger);
            const UcbScore score = netlin_ucb(weights_, topology_, i, k, summaries,
                                              states_[i][k].specific,
                                              contexts[i].specific);
            points[k] = score.point;
            radii[k] = score.radius;
        }
        const int chosen = select_ucb(points, radii, alpha_);
        out[i] = NodeDecision{chosen, radii[chosen], ledger};
    }
    for (int i = 0; i < n; ++i) {
        const double reward = observe(i, out[i].arm);
        states_[i][out[i].arm].common.update(contexts[i].common, reward);
        states_[i][out[i].arm].specific.update(contexts[i].specific, reward);
        counts_.record_pull(i, out[i].arm);
    }
    return out;
}

}  // namespace banditnet
