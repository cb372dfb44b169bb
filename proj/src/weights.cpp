#include "banditnet/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace banditnet {

// ----------------------------------------------------------------------------
// pull counts
// ----------------------------------------------------------------------------

ArmCounts::ArmCounts(int n_nodes, int n_arms) {
    if (n_nodes < 1) throw std::invalid_argument("ArmCounts: n_nodes must be >= 1");
    if (n_arms < 1) throw std::invalid_argument("ArmCounts: n_arms must be >= 1");
    counts_ = Eigen::MatrixXi::Ones(n_nodes, n_arms);
}

long long ArmCounts::arm_total(int arm) const {
    long long total = 0;
    for (int i = 0; i < counts_.rows(); ++i) total += counts_(i, arm);
    return total;
}

// ----------------------------------------------------------------------------
// similarity scores
// ----------------------------------------------------------------------------

double arm_selection_similarity(const ArmCounts& counts, int arm, int i, int j) {
    const double total = static_cast<double>(counts.arm_total(arm));
    return (static_cast<double>(counts(i, arm)) * static_cast<double>(counts(j, arm))) /
           (total * total);
}

double context_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return (1.0 + a.dot(b) / (na * nb)) / 2.0;
}

// ----------------------------------------------------------------------------
// weight matrices
// ----------------------------------------------------------------------------

WeightMatrixSet WeightMatrixSet::identity(int n_nodes, int n_arms) {
    WeightMatrixSet set;
    set.matrices.assign(n_arms, Eigen::MatrixXd::Identity(n_nodes, n_nodes));
    return set;
}

void WeightMatrixSet::check_invariants(const Topology& topology, double tol) const {
    for (int k = 0; k < n_arms(); ++k) {
        const Eigen::MatrixXd& omega = matrices[k];
        for (int i = 0; i < omega.cols(); ++i) {
            double col_sum = 0.0;
            for (int j = 0; j < omega.rows(); ++j) {
                const double w = omega(j, i);
                if (w < 0.0)
                    throw std::logic_error("WeightMatrixSet: negative entry at arm " +
                                           std::to_string(k));
                if (!topology.connected(i, static_cast<int>(j)) && w != 0.0)
                    throw std::logic_error(
                        "WeightMatrixSet: nonzero cross-component entry at arm " +
                        std::to_string(k));
                col_sum += w;
            }
            if (std::abs(col_sum - 1.0) > tol)
                throw std::logic_error("WeightMatrixSet: column " + std::to_string(i) +
                                       " of arm " + std::to_string(k) + " sums to " +
                                       std::to_string(col_sum));
        }
    }
}

void update_weights(WeightMatrixSet& weights, const ArmCounts& counts,
                    const std::vector<Context>& contexts, const Topology& topology,
                    const WeightsConfig& config) {
    const int n = counts.n_nodes();
    if (topology.n_nodes() != n)
        throw std::invalid_argument("update_weights: topology/counts node mismatch");
    if (static_cast<int>(contexts.size()) != n)
        throw std::invalid_argument("update_weights: contexts/counts node mismatch");
    if (weights.n_arms() != counts.n_arms())
        throw std::invalid_argument("update_weights: weights/counts arm mismatch");

    for (int k = 0; k < counts.n_arms(); ++k) {
        Eigen::MatrixXd fresh = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            double col_sum = 0.0;
            for (int j : topology.neighbors(i)) {
                const double raw =
                    2.0 * config.beta * arm_selection_similarity(counts, k, i, j) +
                    2.0 * (1.0 - config.beta) *
                        context_similarity(contexts[j].common, contexts[i].common);
                fresh(j, i) = raw;
                col_sum += raw;
            }
            if (col_sum > 0.0) {
                for (int j : topology.neighbors(i)) fresh(j, i) /= col_sum;
            } else {
                for (int j : topology.neighbors(i)) fresh(j, i) = 0.0;
                fresh(i, i) = 1.0;
            }
        }
        // EMA written so that fresh == old is an exact fixed point in floating
        // point (keeps singleton components at identity bit-for-bit).
        weights.matrices[k] += (1.0 - config.rho) * (fresh - weights.matrices[k]);
    }
}

}  // namespace banditnet
