#include "bikeflow/dynamics.hpp"

#include "bikeflow/error.hpp"
#include "bikeflow/partition_compare.hpp"

namespace bikeflow {

namespace {

void detect_hour(std::span<const TripRecord> trips, std::span<const Station> stations,
                 const DynamicsOptions &options, HourlyAssignment::Hour &hour) {
    const std::vector<Station> all(stations.begin(), stations.end());
    const FlowNetwork full = build_network(trips, all);

    // Keep stations meeting the activity threshold, and edges among them.
    std::vector<NodeIndex> kept;
    std::vector<std::int64_t> local(full.node_count(), -1);
    for (NodeIndex a = 0; a < full.node_count(); ++a) {
        if (full.out_strength(a) + full.in_strength(a) >= options.min_flow) {
            local[a] = static_cast<std::int64_t>(kept.size());
            kept.push_back(a);
        }
    }
    std::vector<Station> sub_stations;
    for (NodeIndex a : kept) {
        sub_stations.push_back(full.station(a));
    }
    std::vector<Edge> sub_edges;
    for (const Edge &e : full.edges()) {
        if (local[e.origin] >= 0 && local[e.destination] >= 0) {
            sub_edges.push_back(Edge{static_cast<NodeIndex>(local[e.origin]),
                                     static_cast<NodeIndex>(local[e.destination]), e.weight});
        }
    }
    const FlowNetwork sub(std::move(sub_stations), std::move(sub_edges));
    if (sub.total_weight() == 0) {
        return;
    }

    const FlowState flow = options.model == FlowModel::empirical
                               ? empirical_flow(sub)
                               : random_walk_flow(sub, options.walk);
    OptimizerConfig cfg = options.optimizer;
    cfg.seed = hour.seed;
    const OptimizationResult result = infomap(flow, sub, cfg);

    hour.modules = result.module_count();
    hour.codelength = result.objective;
    hour.module_visit.assign(hour.modules, 0.0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const ModuleId m = result.partition.module_of(i);
        hour.labels[kept[i]] = m;
        if (m != kUnassigned) {
            hour.module_visit[static_cast<std::size_t>(m)] += flow.node_visit[i];
        }
    }
}

} // namespace

HourlyAssignment hourly_communities(std::span<const TripRecord> trips,
                                    std::span<const Station> stations,
                                    const DynamicsOptions &options) {
    HourlyAssignment out;
    out.stations.reserve(stations.size());
    for (const Station &s : stations) {
        out.stations.push_back(s.id);
    }
    for (int h = 0; h < kHoursPerDay; ++h) {
        auto &hour = out.hours[static_cast<std::size_t>(h)];
        hour.labels.assign(stations.size(), kUnassigned);
        hour.seed = options.optimizer.seed ^ static_cast<std::uint64_t>(h);
        const std::vector<TripRecord> slice = filter_by_hour(trips, h);
        hour.trips = slice.size();
        if (!slice.empty()) {
            detect_hour(slice, stations, options, hour);
        }
    }
    return out;
}

ColumnSimilarity column_similarity(std::span<const ModuleId> a, std::span<const ModuleId> b) {
    if (a.size() != b.size()) {
        throw ArgumentError("hour columns cover different station sets");
    }
    const PartitionSimilarity s = compare_partitions(Partition({a.begin(), a.end()}),
                                                     Partition({b.begin(), b.end()}));
    ColumnSimilarity out;
    out.compared = s.compared;
    out.insufficient_overlap = s.compared < 2;
    out.nmi = out.insufficient_overlap ? 0.0 : s.nmi;
    return out;
}

} // namespace bikeflow
