// ============================================================================
//  weights.hpp — adaptive cross-node mixing weights
//
//  PURPOSE
//    Per-arm column-stochastic weight matrices that decide how much each node
//    trusts its neighbors' shared-block information.  Raw affinity between
//    two nodes combines how similarly often they picked the arm with how
//    aligned their current common contexts are; columns are normalized inside
//    each topology component and smoothed across rounds by an EMA.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"

#include <vector>

namespace banditnet {

// ----------------------------------------------------------------------------
// pull counts
// ----------------------------------------------------------------------------

// Per-(node, arm) pull counters.  Initialized to 1 so similarity ratios are
// well defined before any pull.
class ArmCounts {
  public:
    ArmCounts(int n_nodes, int n_arms);
    int operator()(int node, int arm) const { return counts_(node, arm); }
    void record_pull(int node, int arm) { counts_(node, arm) += 1; }
    int n_nodes() const { return static_cast<int>(counts_.rows()); }
    int n_arms() const { return static_cast<int>(counts_.cols()); }
    // Sum of the arm's counts over every node in the network.
    long long arm_total(int arm) const;

  private:
    Eigen::MatrixXi counts_;
};

// ----------------------------------------------------------------------------
// similarity scores
// ----------------------------------------------------------------------------

// n_i * n_j / (sum_q n_q)^2 for the given arm; in (0, 1], equal to 1 only for
// a single-node network.
double arm_selection_similarity(const ArmCounts& counts, int arm, int i, int j);

// (1 + cos(a, b)) / 2 in [0, 1]; defined as 0 when either norm is 0.
double context_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// ----------------------------------------------------------------------------
// weight matrices
// ----------------------------------------------------------------------------

struct WeightsConfig {
    double rho = 0.9;   // EMA retention of the previous weights
    double beta = 0.5;  // mix between arm-selection and context similarity
};

// One N x N matrix per arm; entry (j, i) is the weight node i places on node
// j's shared-block information.  Columns sum to 1 within each component;
// cross-component entries are exactly 0.  Starts as the identity.
struct WeightMatrixSet {
    std::vector<Eigen::MatrixXd> matrices;

    static WeightMatrixSet identity(int n_nodes, int n_arms);
    int n_arms() const { return static_cast<int>(matrices.size()); }
    double weight(int arm, int from, int to) const { return matrices[arm](from, to); }
    // Throws std::logic_error if stochasticity/nonnegativity/masking fail.
    void check_invariants(const Topology& topology, double tol = 1e-9) const;
};

// Recomputes every arm's matrix from the current counts and contexts, then
// folds it into the running EMA: omega <- omega + (1 - rho)(fresh - omega).
// Raw affinity = 2*beta*arm_selection_similarity + 2*(1-beta)*context_similarity
// (the plain sum at beta = 0.5); entries outside a node's component are 0 and
// columns are normalized to sum 1 inside it (identity column as fallback if a
// column comes out all zero).
void update_weights(WeightMatrixSet& weights, const ArmCounts& counts,
                    const std::vector<Context>& contexts, const Topology& topology,
                    const WeightsConfig& config);

}  // namespace banditnet
