#include "bikeflow/flow_network.hpp"

#include "bikeflow/csv.hpp"
#include "bikeflow/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace bikeflow {

FlowNetwork::FlowNetwork(std::vector<Station> stations, std::vector<Edge> edges)
    : stations_(std::move(stations)) {
    const std::size_t n = stations_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Station &s = stations_[i];
        if (!index_.emplace(s.id, static_cast<NodeIndex>(i)).second) {
            throw ArgumentError(fmt::format("duplicate station id {}", s.id));
        }
        if (s.coord && (!(s.coord->lat >= -90.0 && s.coord->lat <= 90.0) ||
                        !(s.coord->lon >= -180.0 && s.coord->lon <= 180.0))) {
            throw ArgumentError(fmt::format("station {} has coordinate out of range ({}, {})",
                                            s.id, s.coord->lat, s.coord->lon));
        }
    }
    for (const Edge &e : edges) {
        if (e.origin >= n || e.destination >= n) {
            throw ArgumentError(fmt::format("edge ({}, {}) references a node outside 0..{}",
                                            e.origin, e.destination, n));
        }
    }

    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
        return a.origin != b.origin ? a.origin < b.origin : a.destination < b.destination;
    });
    for (const Edge &e : edges) {
        if (e.weight == 0) {
            continue;
        }
        if (!edges_.empty() && edges_.back().origin == e.origin &&
            edges_.back().destination == e.destination) {
            edges_.back().weight += e.weight;
        } else {
            edges_.push_back(e);
        }
        total_weight_ += e.weight;
    }

    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    in_strength_.assign(n, 0);
    for (const Edge &e : edges_) {
        ++out_offsets_[e.origin + 1];
        ++in_offsets_[e.destination + 1];
        in_strength_[e.destination] += e.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
    in_ids_.resize(edges_.size());
    std::vector<std::uint32_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::uint32_t k = 0; k < edges_.size(); ++k) {
        in_ids_[cursor[edges_[k].destination]++] = k;
    }
}

std::span<const Edge> FlowNetwork::out_edges(NodeIndex node) const {
    if (node >= node_count()) {
        throw ArgumentError(fmt::format("node index {} out of range", node));
    }
    return std::span<const Edge>(edges_).subspan(out_offsets_[node],
                                                 out_offsets_[node + 1] - out_offsets_[node]);
}

std::span<const std::uint32_t> FlowNetwork::in_edge_ids(NodeIndex node) const {
    if (node >= node_count()) {
        throw ArgumentError(fmt::format("node index {} out of range", node));
    }
    return std::span<const std::uint32_t>(in_ids_).subspan(
        in_offsets_[node], in_offsets_[node + 1] - in_offsets_[node]);
}

std::optional<NodeIndex> FlowNetwork::index_of(StationId id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::uint64_t FlowNetwork::out_strength(NodeIndex node) const {
    std::uint64_t total = 0;
    for (const Edge &e : out_edges(node)) {
        total += e.weight;
    }
    return total;
}

std::uint64_t FlowNetwork::in_strength(NodeIndex node) const {
    if (node >= node_count()) {
        throw ArgumentError(fmt::format("node index {} out of range", node));
    }
    return in_strength_[node];
}

std::uint64_t FlowNetwork::self_loop_weight(NodeIndex node) const {
    for (const Edge &e : out_edges(node)) {
        if (e.destination == node) {
            return e.weight;
        }
    }
    return 0;
}

FlowNetwork FlowNetwork::scaled(std::uint64_t factor) const {
    if (factor == 0) {
        throw ArgumentError("scale factor must be positive");
    }
    std::vector<Edge> edges = edges_;
    for (Edge &e : edges) {
        e.weight *= factor;
    }
    return FlowNetwork(stations_, std::move(edges));
}

FlowNetwork build_network(std::span<const TripRecord> trips, std::vector<Station> stations) {
    std::unordered_map<StationId, NodeIndex> index;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        index.emplace(stations[i].id, static_cast<NodeIndex>(i));
    }

    std::map<std::pair<NodeIndex, NodeIndex>, std::uint64_t> counts;
    std::set<StationId> unknown;
    for (const TripRecord &t : trips) {
        const auto a = index.find(t.start_station_id);
        const auto b = index.find(t.end_station_id);
        if (a == index.end()) {
            unknown.insert(t.start_station_id);
        }
        if (b == index.end()) {
            unknown.insert(t.end_station_id);
        }
        if (a != index.end() && b != index.end()) {
            ++counts[{a->second, b->second}];
        }
    }
    if (!unknown.empty()) {
        throw IngestError(
            fmt::format("trips reference unknown station ids: {}", fmt::join(unknown, ", ")));
    }

    std::vector<Edge> edges;
    edges.reserve(counts.size());
    for (const auto &[key, weight] : counts) {
        edges.push_back(Edge{key.first, key.second, weight});
    }
    return FlowNetwork(std::move(stations), std::move(edges));
}

std::vector<Station> read_stations(std::istream &in) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row)) {
        throw SchemaError("station file has no header row");
    }
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < row.size(); ++i) {
        col.emplace(csv::trim(row[i]), i);
    }
    for (const char *name : {"id", "name", "lat", "lon"}) {
        if (!col.count(name)) {
            throw SchemaError(fmt::format("station file header lacks column '{}'", name));
        }
    }
    const std::size_t width = row.size();

    std::vector<Station> stations;
    while (reader.next(row)) {
        if (row.size() == 1 && csv::trim(row[0]).empty()) {
            continue;
        }
        if (row.size() != width) {
            throw SchemaError(fmt::format("station file line {}: expected {} fields, found {}",
                                          reader.line(), width, row.size()));
        }
        const auto id = csv::parse_int(row[col["id"]]);
        if (!id) {
            throw SchemaError(fmt::format("station file line {}: bad id '{}'", reader.line(),
                                          row[col["id"]]));
        }
        Station s;
        s.id = *id;
        s.name = csv::trim(row[col["name"]]);
        const auto lat = csv::parse_double(row[col["lat"]]);
        const auto lon = csv::parse_double(row[col["lon"]]);
        if (lat && lon) {
            s.coord = Coordinate{*lat, *lon};
        } else if (lat || lon) {
            throw SchemaError(fmt::format("station file line {}: lat and lon must both be set",
                                          reader.line()));
        }
        stations.push_back(std::move(s));
    }
    return stations;
}

void write_edge_list(std::ostream &out, const FlowNetwork &net) {
    out << "origin_id,destination_id,weight\n";
    for (const Edge &e : net.edges()) {
        out << net.station(e.origin).id << ',' << net.station(e.destination).id << ','
            << e.weight << '\n';
    }
}

FlowNetwork read_edge_list(std::istream &in, std::optional<std::vector<Station>> stations) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row.size() < 3 || csv::trim(row[0]) != "origin_id" ||
        csv::trim(row[1]) != "destination_id" || csv::trim(row[2]) != "weight") {
        throw SchemaError("edge list must start with header 'origin_id,destination_id,weight'");
    }
    struct RawEdge {
        StationId a, b;
        std::uint64_t w;
    };
    std::vector<RawEdge> raw;
    while (reader.next(row)) {
        if (row.size() == 1 && csv::trim(row[0]).empty()) {
            continue;
        }
        if (row.size() != 3) {
            throw SchemaError(fmt::format("edge list line {}: expected 3 fields", reader.line()));
        }
        const auto a = csv::parse_int(row[0]);
        const auto b = csv::parse_int(row[1]);
        const auto w = csv::parse_int(row[2]);
        if (!a || !b || !w || *w < 0) {
            throw SchemaError(fmt::format("edge list line {}: malformed edge", reader.line()));
        }
        raw.push_back(RawEdge{*a, *b, static_cast<std::uint64_t>(*w)});
    }

    std::vector<Station> nodes;
    if (stations) {
        nodes = std::move(*stations);
    } else {
        std::set<StationId> ids;
        for (const RawEdge &e : raw) {
            ids.insert(e.a);
            ids.insert(e.b);
        }
        for (StationId id : ids) {
            nodes.push_back(Station{id, {}, std::nullopt});
        }
    }
    std::unordered_map<StationId, NodeIndex> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        index.emplace(nodes[i].id, static_cast<NodeIndex>(i));
    }
    std::set<StationId> unknown;
    std::vector<Edge> edges;
    for (const RawEdge &e : raw) {
        const auto a = index.find(e.a);
        const auto b = index.find(e.b);
        if (a == index.end()) {
            unknown.insert(e.a);
        }
        if (b == index.end()) {
            unknown.insert(e.b);
        }
        if (a != index.end() && b != index.end()) {
            edges.push_back(Edge{a->second, b->second, e.w});
        }
    }
    if (!unknown.empty()) {
        throw IngestError(
            fmt::format("edge list references unknown station ids: {}", fmt::join(unknown, ", ")));
    }
    return FlowNetwork(std::move(nodes), std::move(edges));
}

} // namespace bikeflow
