#include "bikeflow/analytics.hpp"

#include "bikeflow/error.hpp"

#include <fmt/format.h>

namespace bikeflow {

InteractionTable interaction_table(const FlowNetwork &net, const Partition &part) {
    if (part.node_count() != net.node_count()) {
        throw ArgumentError(fmt::format("partition covers {} stations, network has {}",
                                        part.node_count(), net.node_count()));
    }
    InteractionTable table;
    table.module_count = part.module_count();
    for (std::size_t a = 0; a < part.node_count(); ++a) {
        if (!part.assigned(a)) {
            table.has_residual = true;
            break;
        }
    }
    const std::size_t dim = table.module_count + (table.has_residual ? 1 : 0);
    const auto row_of = [&](NodeIndex a) {
        const ModuleId m = part.module_of(a);
        return m == kUnassigned ? table.module_count : static_cast<std::size_t>(m);
    };

    table.rows.resize(dim);
    table.matrix.assign(dim * dim, 0);
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        ++table.rows[row_of(a)].stations;
    }
    for (const Edge &e : net.edges()) {
        const std::size_t i = row_of(e.origin);
        const std::size_t j = row_of(e.destination);
        table.matrix[i * dim + j] += e.weight;
        if (i == j) {
            table.rows[i].within += e.weight;
        } else {
            table.rows[i].out += e.weight;
            table.rows[j].in += e.weight;
        }
        table.total_trips += e.weight;
    }
    return table;
}

double self_containment(const InteractionTable &table) {
    if (table.total_trips == 0) {
        throw ArgumentError("self-containment is undefined without trips");
    }
    std::uint64_t within = 0;
    for (std::size_t i = 0; i < table.module_count; ++i) {
        within += table.rows[i].within;
    }
    return static_cast<double>(within) / static_cast<double>(table.total_trips);
}

std::vector<ModuleId> CommunityGraph::unlocated() const {
    std::vector<ModuleId> out;
    for (const Node &n : nodes) {
        if (!n.centroid) {
            out.push_back(n.module);
        }
    }
    return out;
}

CommunityGraph community_graph(const FlowNetwork &net, const Partition &part) {
    const InteractionTable table = interaction_table(net, part);
    const std::size_t m = table.module_count;

    CommunityGraph graph;
    graph.nodes.resize(m);
    std::vector<double> lat(m, 0.0), lon(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        graph.nodes[i].module = static_cast<ModuleId>(i);
        graph.nodes[i].stations = table.rows[i].stations;
        graph.nodes[i].within = table.rows[i].within;
    }
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        const ModuleId id = part.module_of(a);
        const auto &coord = net.station(a).coord;
        if (id == kUnassigned || !coord) {
            continue;
        }
        const auto i = static_cast<std::size_t>(id);
        lat[i] += coord->lat;
        lon[i] += coord->lon;
        ++graph.nodes[i].located_stations;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto k = static_cast<double>(graph.nodes[i].located_stations);
        if (k > 0) {
            graph.nodes[i].centroid = Coordinate{lat[i] / k, lon[i] / k};
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const std::uint64_t trips = table.at(i, j);
            if (i != j && trips > 0) {
                graph.links.push_back(
                    {static_cast<ModuleId>(i), static_cast<ModuleId>(j), trips});
            }
        }
    }
    return graph;
}

} // namespace bikeflow
