// ============================================================================
//  core.hpp — shared value types for the networked bandit simulator
//
//  PURPOSE
//    Dimension bookkeeping, split contexts, clique topologies, per-round
//    trace records, and the seed-derivation scheme that keeps every random
//    draw reproducible and addressable by (seed, purpose, node, arm, round).
// ============================================================================
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace banditnet {

// ----------------------------------------------------------------------------
// dimensions
// ----------------------------------------------------------------------------

// Feature-space layout: every node sees a common block of d_common features
// plus its own specific block of d_specific[i] features.
struct Dimensions {
    int d_common = 1;
    std::vector<int> d_specific;  // one entry per node, each >= 1

    int n_nodes() const { return static_cast<int>(d_specific.size()); }
    int node_dim(int node) const { return d_common + d_specific.at(node); }
    // Length of the stacked one-model embedding: [common | specific_0 | ... ].
    int stacked_dim() const;
    // Offset of node i's specific block inside the stacked embedding.
    int stacked_offset(int node) const;
    double mean_specific_dim() const;

    void validate() const;  // throws std::invalid_argument naming the field
};

// ----------------------------------------------------------------------------
// contexts
// ----------------------------------------------------------------------------

// One node's observed context at one round, kept in split form.
struct Context {
    Eigen::VectorXd common;
    Eigen::VectorXd specific;
};

// [common; specific] in that order.
Eigen::VectorXd concat_context(const Context& ctx);

// v / max(1, ||v||_2).  Throws std::invalid_argument on non-finite input.
Eigen::VectorXd clamp_to_unit_ball(const Eigen::VectorXd& v);

// ----------------------------------------------------------------------------
// topology
// ----------------------------------------------------------------------------

// Disjoint union of cliques.  Nodes are numbered 0..N-1 in component order.
class Topology {
  public:
    static Topology cliques(const std::vector<int>& sizes);
    static Topology fully_connected(int n_nodes);
    static Topology singletons(int n_nodes);
    // Label grammar: "SIZExCOUNT" = COUNT cliques of SIZE nodes ("3x4" is four
    // triangles, "1x12" is twelve isolated nodes), or a bare integer "12" for
    // one fully connected component.
    static Topology parse(const std::string& label);

    int n_nodes() const { return static_cast<int>(component_of_.size()); }
    int n_components() const { return static_cast<int>(members_.size()); }
    int component_of(int node) const { return component_of_.at(node); }
    int component_size(int node) const;
    bool connected(int i, int j) const;
    // Component members (ascending, includes `node` itself).
    const std::vector<int>& neighbors(int node) const;
    const std::vector<std::vector<int>>& components() const { return members_; }
    const std::string& label() const { return label_; }

  private:
    std::vector<int> component_of_;
    std::vector<std::vector<int>> members_;
    std::string label_;
};

// ----------------------------------------------------------------------------
// per-round trace record
// ----------------------------------------------------------------------------

// Immutable record of one (round, node) decision, as written to trace CSVs.
struct RoundRecord {
    int t = 0;          // 1-based round index
    int node = 0;       // 0-based node id
    int arm = 0;        // chosen arm (0-based)
    int opt_arm = 0;    // arm with highest expected reward for this context
    double inst_regret = 0.0;  // expected-reward gap, optimal minus chosen
    double cum_regret = 0.0;   // running network cumulative regret, row order
    double radius = 0.0;       // chosen arm's confidence width (no alpha)
    std::int64_t comm_scalars = 0;  // cross-node scalars this node triggered
};

// ----------------------------------------------------------------------------
// seed derivation
// ----------------------------------------------------------------------------

// Purpose tags keep independent random streams from colliding.
enum class Stream : std::uint64_t {
    theta_common = 1,
    theta_specific = 2,
    context = 3,
    noise = 4,
    policy = 5,
    instance = 6,
};

std::uint64_t splitmix64(std::uint64_t x);
// Hash-combines (seed, purpose, a, b, c) into a stream seed.
std::uint64_t derive_seed(std::uint64_t seed, Stream purpose,
                          std::uint64_t a = 0, std::uint64_t b = 0,
                          std::uint64_t c = 0);
std::mt19937_64 make_engine(std::uint64_t seed, Stream purpose,
                            std::uint64_t a = 0, std::uint64_t b = 0,
                            std::uint64_t c = 0);

}  // namespace banditnet
