#include "bikeflow/exports.hpp"

#include "bikeflow/csv.hpp"
#include "bikeflow/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <set>

namespace bikeflow {

std::string format_number(double value) {
    return fmt::format("{:.12g}", value);
}

void write_partition(std::ostream &out, const FlowNetwork &net, const Partition &part) {
    if (part.node_count() != net.node_count()) {
        throw ArgumentError("partition does not match network");
    }
    out << "station_id,module_id\n";
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        out << net.station(a).id << ',';
        if (part.assigned(a)) {
            out << part.module_of(a);
        }
        out << '\n';
    }
}

Partition read_partition(std::istream &in, const FlowNetwork &net) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row.size() != 2 || csv::trim(row[0]) != "station_id" ||
        csv::trim(row[1]) != "module_id") {
        throw SchemaError("partition file must start with header 'station_id,module_id'");
    }
    std::vector<ModuleId> assignment(net.node_count(), kUnassigned);
    std::vector<bool> seen(net.node_count(), false);
    std::set<StationId> unknown;
    while (reader.next(row)) {
        if (row.size() == 1 && csv::trim(row[0]).empty()) {
            continue;
        }
        if (row.size() != 2) {
            throw SchemaError(fmt::format("partition line {}: expected 2 fields", reader.line()));
        }
        const auto id = csv::parse_int(row[0]);
        if (!id) {
            throw SchemaError(fmt::format("partition line {}: bad station id", reader.line()));
        }
        const auto node = net.index_of(*id);
        if (!node) {
            unknown.insert(*id);
            continue;
        }
        if (seen[*node]) {
            throw IngestError(fmt::format("partition lists station {} twice", *id));
        }
        seen[*node] = true;
        if (!csv::trim(row[1]).empty()) {
            const auto m = csv::parse_int(row[1]);
            if (!m || *m < 0 || *m > INT32_MAX) {
                throw SchemaError(fmt::format("partition line {}: bad module id", reader.line()));
            }
            assignment[*node] = static_cast<ModuleId>(*m);
        }
    }
    std::set<StationId> missing;
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        if (!seen[a]) {
            missing.insert(net.station(a).id);
        }
    }
    if (!unknown.empty() || !missing.empty()) {
        throw IngestError(fmt::format(
            "partition and network disagree: unknown station ids [{}], missing station ids [{}]",
            fmt::join(unknown, ", "), fmt::join(missing, ", ")));
    }
    return Partition(std::move(assignment));
}

void write_flow(std::ostream &out, const FlowNetwork &net, const FlowState &flow) {
    out << "station_id,visit_rate\n";
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        out << net.station(a).id << ',' << format_number(flow.node_visit.at(a)) << '\n';
    }
}

void write_interaction_table(std::ostream &out, const InteractionTable &table) {
    out << "Cluster,Stations,within,out,in\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &r = table.rows[i];
        if (i < table.module_count) {
            out << i;
        } else {
            out << "unassigned";
        }
        out << ',' << r.stations << ',' << r.within << ',' << r.out << ',' << r.in << '\n';
    }
}

void write_community_edges(std::ostream &out, const CommunityGraph &graph) {
    out << "origin_module,destination_module,trips\n";
    for (const auto &l : graph.links) {
        out << l.from << ',' << l.to << ',' << l.trips << '\n';
    }
}

void write_community_geojson(std::ostream &out, const CommunityGraph &graph) {
    using nlohmann::ordered_json;
    std::vector<std::uint64_t> outbound(graph.nodes.size(), 0), inbound(graph.nodes.size(), 0);
    for (const auto &l : graph.links) {
        outbound[static_cast<std::size_t>(l.from)] += l.trips;
        inbound[static_cast<std::size_t>(l.to)] += l.trips;
    }

    ordered_json features = ordered_json::array();
    for (const auto &n : graph.nodes) {
        const auto i = static_cast<std::size_t>(n.module);
        ordered_json f;
        f["type"] = "Feature";
        if (n.centroid) {
            f["geometry"] = {{"type", "Point"},
                             {"coordinates", {n.centroid->lon, n.centroid->lat}}};
        } else {
            f["geometry"] = nullptr;
        }
        f["properties"] = {{"kind", "community"},
                           {"module", n.module},
                           {"stations", n.stations},
                           {"located_stations", n.located_stations},
                           {"within_trips", n.within},
                           {"out_trips", outbound[i]},
                           {"in_trips", inbound[i]},
                           {"centroid_missing", !n.centroid.has_value()}};
        features.push_back(std::move(f));
    }
    for (const auto &l : graph.links) {
        const auto &a = graph.nodes[static_cast<std::size_t>(l.from)];
        const auto &b = graph.nodes[static_cast<std::size_t>(l.to)];
        if (!a.centroid || !b.centroid) {
            continue;
        }
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "LineString"},
                         {"coordinates",
                          {{a.centroid->lon, a.centroid->lat}, {b.centroid->lon, b.centroid->lat}}}};
        f["properties"] = {{"kind", "interaction"},
                           {"origin_module", l.from},
                           {"destination_module", l.to},
                           {"trips", l.trips}};
        features.push_back(std::move(f));
    }
    ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = std::move(features);
    out << doc.dump(2) << '\n';
}

void write_hourly_matrix(std::ostream &out, const HourlyAssignment &hourly) {
    out << "station_id";
    for (int h = 0; h < kHoursPerDay; ++h) {
        out << fmt::format(",h{:02d}", h);
    }
    out << '\n';
    for (std::size_t s = 0; s < hourly.stations.size(); ++s) {
        out << hourly.stations[s];
        for (int h = 0; h < kHoursPerDay; ++h) {
            out << ',';
            const ModuleId m = hourly.label(s, h);
            if (m != kUnassigned) {
                out << m;
            }
        }
        out << '\n';
    }
}

void write_hourly_summary(std::ostream &out, const HourlyAssignment &hourly) {
    out << "hour,trips,modules,codelength\n";
    for (int h = 0; h < kHoursPerDay; ++h) {
        const auto &hour = hourly.hours[static_cast<std::size_t>(h)];
        out << h << ',' << hour.trips << ',' << hour.modules << ','
            << format_number(hour.codelength) << '\n';
    }
}

void write_comparison(std::ostream &out, std::span<const ComparisonRow> rows) {
    out << "method,modules,objective,objective_kind,nmi,ari\n";
    for (const auto &r : rows) {
        out << csv::escape(r.method) << ',' << r.modules << ',' << format_number(r.objective)
            << ',' << to_string(r.objective_kind) << ',' << format_number(r.nmi) << ','
            << format_number(r.ari) << '\n';
    }
}

} // namespace bikeflow
