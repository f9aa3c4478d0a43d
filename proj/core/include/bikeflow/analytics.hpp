#pragma once

#include "bikeflow/flow_network.hpp"
#include "bikeflow/partition.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bikeflow {

/// Trip counts between modules.
///
/// Rows 0..module_count-1 are modules. When any station is unassigned, one
/// extra residual row (index module_count) collects trips that start or end
/// there, so the totals still reconcile with the network.
struct InteractionTable {
    struct Row {
        std::size_t stations = 0;
        std::uint64_t within = 0; ///< trips starting and ending in the module, self-loops included
        std::uint64_t out = 0;
        std::uint64_t in = 0;
    };

    std::size_t module_count = 0;
    bool has_residual = false;
    std::vector<Row> rows;
    /// (module_count + has_residual)^2 row-major; entry (i, j) counts trips
    /// from module i to module j.
    std::vector<std::uint64_t> matrix;
    std::uint64_t total_trips = 0;

    std::size_t dimension() const { return rows.size(); }
    std::uint64_t at(std::size_t from, std::size_t to) const {
        return matrix.at(from * dimension() + to);
    }
};

/// Throws ArgumentError when the partition size differs from the network.
InteractionTable interaction_table(const FlowNetwork &net, const Partition &part);

/// Share of trips that start and end in the same module (the residual row
/// does not count as a module). Throws ArgumentError on a table without trips.
double self_containment(const InteractionTable &table);

/// Modules collapsed to points at their stations' mean coordinate.
struct CommunityGraph {
    struct Node {
        ModuleId module = 0;
        std::optional<Coordinate> centroid; ///< absent if no member has coordinates
        std::size_t stations = 0;
        std::size_t located_stations = 0;
        std::uint64_t within = 0;
    };
    struct Link {
        ModuleId from = 0;
        ModuleId to = 0;
        std::uint64_t trips = 0;
    };
    std::vector<Node> nodes;
    std::vector<Link> links; ///< only pairs with trips > 0, ordered by (from, to)

    /// Modules whose centroid could not be placed.
    std::vector<ModuleId> unlocated() const;
};

/// Centroids are unweighted means of member latitude and longitude.
CommunityGraph community_graph(const FlowNetwork &net, const Partition &part);

} // namespace bikeflow
