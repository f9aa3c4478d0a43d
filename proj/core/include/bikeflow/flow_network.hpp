#pragma once

#include "bikeflow/trip_ingest.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bikeflow {

using NodeIndex = std::uint32_t;

struct Coordinate {
    double lat = 0.0; ///< degrees, [-90, 90]
    double lon = 0.0; ///< degrees, [-180, 180]
};

struct Station {
    StationId id = 0;
    std::string name;
    std::optional<Coordinate> coord;
};

/// A directed edge of the OD matrix. `weight` is a trip count.
struct Edge {
    NodeIndex origin = 0;
    NodeIndex destination = 0;
    std::uint64_t weight = 0;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// Directed weighted graph over stations. Immutable after construction.
///
/// Edges are stored sorted by (origin, destination) with at most one edge per
/// ordered pair and strictly positive weights. Self-loops are kept.
class FlowNetwork {
public:
    FlowNetwork() = default;

    /// Validates and canonicalizes: duplicate (origin, destination) pairs are
    /// summed, zero-weight edges dropped. Throws ArgumentError on an endpoint
    /// out of range, duplicate station ids or an invalid coordinate.
    FlowNetwork(std::vector<Station> stations, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return stations_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Station> stations() const noexcept { return stations_; }
    const Station &station(NodeIndex i) const { return stations_.at(i); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Edges leaving `node`, contiguous in edges().
    std::span<const Edge> out_edges(NodeIndex node) const;

    /// Indices into edges() of the edges entering `node`.
    std::span<const std::uint32_t> in_edge_ids(NodeIndex node) const;

    std::optional<NodeIndex> index_of(StationId id) const;

    /// Sum of out-edge weights, self-loops included. Throws ArgumentError on
    /// an invalid index.
    std::uint64_t out_strength(NodeIndex node) const;
    std::uint64_t in_strength(NodeIndex node) const;
    std::uint64_t self_loop_weight(NodeIndex node) const;

    std::uint64_t total_weight() const noexcept { return total_weight_; }

    /// Same topology with every weight multiplied by `factor`.
    FlowNetwork scaled(std::uint64_t factor) const;

private:
    std::vector<Station> stations_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> out_offsets_;
    std::vector<std::uint32_t> in_offsets_;
    std::vector<std::uint32_t> in_ids_;
    std::vector<std::uint64_t> in_strength_;
    std::unordered_map<StationId, NodeIndex> index_;
    std::uint64_t total_weight_ = 0;
};

/// Aggregates trips into the OD matrix over the given station universe.
/// Stations without trips stay as isolated nodes. Throws IngestError listing
/// every trip station id missing from `stations`.
FlowNetwork build_network(std::span<const TripRecord> trips, std::vector<Station> stations);

/// Station metadata CSV with header `id,name,lat,lon`; lat/lon may be empty.
std::vector<Station> read_stations(std::istream &in);

/// Edge list CSV `origin_id,destination_id,weight`.
void write_edge_list(std::ostream &out, const FlowNetwork &net);

/// Reads an edge list. With `stations`, node order and isolated nodes come
/// from that list and unknown ids are an IngestError; otherwise nodes are the
/// distinct ids in the file, sorted ascending.
FlowNetwork read_edge_list(std::istream &in,
                           std::optional<std::vector<Station>> stations = std::nullopt);

} // namespace bikeflow
