#pragma once

#include "bikeflow/flow_solver.hpp"
#include "bikeflow/partition.hpp"

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

namespace bikeflow {

/// Per-module flow aggregates of the two-level map equation.
struct ModuleFlow {
    std::vector<double> exit;  ///< q_i, flow leaving module i per step
    std::vector<double> visit; ///< sum of node visit rates in module i
    std::vector<double> stay;  ///< exit[i] + visit[i], weight of module i's codebook
    double total_exit = 0.0;   ///< sum of exit, weight of the index codebook
};

/// x * log2(x), with 0 * log2(0) = 0.
double plogp(double x);

/// Module aggregates for `part`. Exit flow counts every edge from a module to
/// a node outside it, plus the share of teleported flow that lands outside.
/// Throws ArgumentError if the sizes differ or a node with positive visit
/// rate is unassigned.
ModuleFlow module_flows(const FlowState &flow, const Partition &part);

/// Two-level map equation in bits:
///     L = q H(Q) + sum_i p_i H(P_i)
/// where Q is the distribution of module exit rates and P_i is module i's
/// exit rate together with its node visit rates, normalized by p_i.
double codelength(const FlowState &flow, const Partition &part);

/// codelength after moving `node` to `target` minus codelength before,
/// evaluated from the two affected modules only. `target` may equal
/// part.module_count() to move the node into a fresh module; a target equal
/// to the node's current module yields 0.
double codelength_delta(const FlowState &flow, const Partition &part, NodeIndex node,
                        ModuleId target);

/// Incremental map equation bookkeeping for local-move optimization.
///
/// The movable units are the flow's nodes, or, after coarsened(), whole
/// modules of a previous level that move as one. Module ids range over
/// [0, node_count()), so every unit can hold its own module.
class MapEquationState {
public:
    struct Link {
        NodeIndex neighbor;
        double flow;
    };

    /// Flow between a node and the members of two modules, self-loops
    /// excluded.
    struct Linkage {
        double out_to_source = 0.0;
        double in_from_source = 0.0;
        double out_to_target = 0.0;
        double in_from_target = 0.0;
    };

    MapEquationState(const FlowState &flow, const Partition &part);

    std::size_t node_count() const noexcept { return assignment_.size(); }
    ModuleId module_of(NodeIndex node) const { return assignment_[node]; }
    double node_visit(NodeIndex node) const { return visit_[node]; }

    std::span<const Link> out_links(NodeIndex node) const;
    std::span<const Link> in_links(NodeIndex node) const;

    /// Total flow on a node's out-edges to other nodes.
    double out_flow(NodeIndex node) const { return out_flow_[node]; }

    Linkage linkage(NodeIndex node, ModuleId target) const;

    double codelength() const;
    double delta(NodeIndex node, ModuleId target, const Linkage &link) const;
    double delta(NodeIndex node, ModuleId target) const {
        return delta(node, target, linkage(node, target));
    }
    void move(NodeIndex node, ModuleId target, const Linkage &link);

    /// Rebuilds all module sums from scratch, discarding accumulated rounding.
    void recompute();

    Partition partition() const { return Partition(assignment_); }

    /// One unit per non-empty module, each in its own module; unit i is
    /// module i of partition().compacted(). The codelength is unchanged.
    MapEquationState coarsened() const;

private:
    MapEquationState() = default;
    void index_links(std::vector<std::tuple<NodeIndex, NodeIndex, double>> &links);

    struct ModuleSums {
        double exit_edges = 0.0; ///< edge flow leaving the module
        double teleport = 0.0;   ///< teleported mass originating in the module
        double visit = 0.0;
        std::size_t members = 0;
    };

    double exit_of(const ModuleSums &m) const;
    void check_target(ModuleId target) const;

    std::vector<double> visit_;
    std::vector<double> teleport_;
    std::vector<std::uint32_t> members_; ///< original nodes per unit
    std::vector<double> leak_;           ///< flow from a unit to unassigned nodes, once coarsened
    std::size_t universe_ = 0;           ///< original node count
    std::vector<ModuleId> assignment_;
    std::vector<std::uint32_t> out_offsets_, in_offsets_;
    std::vector<Link> out_links_, in_links_;
    std::vector<double> out_flow_;
    std::vector<ModuleSums> modules_;
    double node_term_ = 0.0;
    double sum_exit_plogp_ = 0.0;
    double sum_stay_plogp_ = 0.0;
    double total_exit_ = 0.0;
};

} // namespace bikeflow
