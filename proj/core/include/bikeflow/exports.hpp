#pragma once

#include "bikeflow/analytics.hpp"
#include "bikeflow/dynamics.hpp"
#include "bikeflow/flow_network.hpp"
#include "bikeflow/flow_solver.hpp"
#include "bikeflow/infomap.hpp"
#include "bikeflow/partition.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace bikeflow {

/// Flows and codelengths are written with 12 significant digits.
std::string format_number(double value);

/// `station_id,module_id`; unassigned stations get an empty module field.
void write_partition(std::ostream &out, const FlowNetwork &net, const Partition &part);

/// Reads a partition for `net`. Every network station must appear exactly
/// once; extra or missing ids raise IngestError listing them.
Partition read_partition(std::istream &in, const FlowNetwork &net);

/// `station_id,visit_rate`.
void write_flow(std::ostream &out, const FlowNetwork &net, const FlowState &flow);

/// `Cluster,Stations,within,out,in`, one row per module, then a row labelled
/// `unassigned` when the table has a residual.
void write_interaction_table(std::ostream &out, const InteractionTable &table);

/// `origin_module,destination_module,trips`.
void write_community_edges(std::ostream &out, const CommunityGraph &graph);

/// FeatureCollection with one Point per module (null geometry and
/// `centroid_missing: true` when unlocated) and a LineString per directed
/// inter-module link between located modules.
void write_community_geojson(std::ostream &out, const CommunityGraph &graph);

/// `station_id,h00,...,h23`; empty cell = unassigned.
void write_hourly_matrix(std::ostream &out, const HourlyAssignment &hourly);

/// `hour,trips,modules,codelength`.
void write_hourly_summary(std::ostream &out, const HourlyAssignment &hourly);

struct ComparisonRow {
    std::string method;
    std::size_t modules = 0;
    double objective = 0.0;
    ObjectiveKind objective_kind = ObjectiveKind::codelength_bits;
    double nmi = 0.0;
    double ari = 0.0;
};

/// `method,modules,objective,objective_kind,nmi,ari`.
void write_comparison(std::ostream &out, std::span<const ComparisonRow> rows);

} // namespace bikeflow
