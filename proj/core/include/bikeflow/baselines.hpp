#pragma once

#include "bikeflow/flow_network.hpp"
#include "bikeflow/infomap.hpp"
#include "bikeflow/partition.hpp"

#include <cstdint>

namespace bikeflow {

// Modularity-based comparison methods. All of them work on the symmetrized
// weights w'(a,b) = w(a,b) + w(b,a); a self-loop of weight w contributes 2w to
// its node's strength.

struct ModularityScore {
    double q = 0.0;
    double resolution = 1.0;
};

/// Q = sum_i (e_ii - resolution * a_i^2). Throws ArgumentError on a network
/// without edges, or if a node with positive strength is unassigned.
ModularityScore modularity(const FlowNetwork &net, const Partition &part, double resolution = 1.0);

/// Two-phase Louvain: seeded random-order local moves maximizing the
/// modularity gain, then aggregation of modules into nodes, repeated until a
/// level makes no move. `objective` holds Q of the returned partition.
OptimizationResult louvain(const FlowNetwork &net, std::uint64_t seed, double resolution = 1.0);

/// Clauset-Newman-Moore agglomeration: from singletons, repeatedly merge the
/// connected pair with the largest positive gain (ties to the lowest id
/// pair). Deterministic.
OptimizationResult greedy_modularity(const FlowNetwork &net, double resolution = 1.0);

} // namespace bikeflow
