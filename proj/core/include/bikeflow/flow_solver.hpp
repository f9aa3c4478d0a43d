#pragma once

#include "bikeflow/flow_network.hpp"

#include <string_view>
#include <vector>

namespace bikeflow {

enum class FlowModel { empirical, random_walk };

std::string_view to_string(FlowModel model);
/// Accepts "empirical" and "random_walk" (also "random-walk"). Throws ArgumentError.
FlowModel parse_flow_model(std::string_view text);

struct FlowEdge {
    NodeIndex origin = 0;
    NodeIndex destination = 0;
    double flow = 0.0; ///< probability per step of traversing this edge
};

/// Stationary node visit rates and per-edge flow rates.
///
/// `edges` is aligned index-for-index with the source network's edges().
/// `teleport_out[a]` is the visit mass leaving node a by a uniform jump; the
/// jump lands on each of the `node_visit.size()` nodes with equal probability.
/// It is all zero under the empirical model.
struct FlowState {
    FlowModel model = FlowModel::empirical;
    double tau = 0.0;
    std::vector<double> node_visit;
    std::vector<FlowEdge> edges;
    std::vector<double> teleport_out;
    int iterations = 0;
    double residual = 0.0;

    std::size_t node_count() const noexcept { return node_visit.size(); }
};

/// Flow taken directly from normalized trip counts: an edge carries
/// w / W and a node's visit rate is its out-strength over W. Throws
/// ArgumentError on a network with no edges.
FlowState empirical_flow(const FlowNetwork &net);

struct RandomWalkOptions {
    double tau = 0.15;
    double tol = 1e-12;
    int max_iter = 10000;
    /// When false, self-loops carry no flow and do not count toward a node's
    /// out-strength in the transition matrix.
    bool include_self_loops = true;
};

/// Stationary distribution of the teleporting random walk: with probability
/// tau jump uniformly to any node, otherwise follow an out-edge in proportion
/// to its weight. Nodes without out-edges always jump.
///
/// Iterates the lazy chain (I + P) / 2, which shares P's stationary vector
/// and converges on periodic graphs. Stops once ||pP - p||_1 < tol. Throws
/// ConvergenceError carrying the last residual after max_iter steps.
FlowState random_walk_flow(const FlowNetwork &net, const RandomWalkOptions &options = {});

} // namespace bikeflow
