// ============================================================================
//  policy.hpp — common interface every bandit policy implements
//
//  PURPOSE
//    One round of play: given each node's context, choose an arm per node,
//    observe the chosen arm's reward through the provided callback, and
//    update internal state.  The harness drives policies exclusively through
//    this interface so all four strategies share one replication loop.
// ============================================================================
#pragma once

#include "banditnet/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace banditnet {

// What one node did this round, plus the wire cost its exchanges generated.
struct NodeDecision {
    int arm = 0;
    double radius = 0.0;            // chosen arm's confidence width, no alpha
    std::int64_t comm_scalars = 0;  // cross-node scalars this node triggered
};

// observe(node, arm) draws the realized reward for pulling `arm` at `node`
// this round.  Policies call it exactly once per node, for the chosen arm.
using RewardCallback = std::function<double(int node, int arm)>;

class Policy {
  public:
    virtual ~Policy() = default;
    virtual std::string name() const = 0;
    // t is the 1-based round index; contexts has one entry per node.
    virtual std::vector<NodeDecision> step(int t,
                                           const std::vector<Context>& contexts,
                                           const RewardCallback& observe) = 0;
};

}  // namespace banditnet
