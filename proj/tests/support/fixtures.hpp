#pragma once

#include "bikeflow/flow_network.hpp"
#include "bikeflow/partition.hpp"
#include "bikeflow/random.hpp"
#include "bikeflow/trip_ingest.hpp"

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace bikeflow::testing {

/// Network on stations 1..n (ids = index + 1) from (origin, destination,
/// weight) triples over node indices.
FlowNetwork make_network(std::size_t n,
                         const std::vector<std::tuple<NodeIndex, NodeIndex, std::uint64_t>> &edges);

struct NamedNetwork {
    std::string name;
    FlowNetwork net;
};

/// Directed weighted graphs with 2..8 nodes: cycles, hubs, cliques joined by
/// bridges, a star, and seeded random digraphs.
std::vector<NamedNetwork> small_fixtures();

struct PlantedGraph {
    FlowNetwork net;
    Partition truth;
};

/// `groups` x `group_size` nodes; each ordered pair (u != v) gets a
/// Poisson-distributed weight with mean `within_mean` inside a group and
/// `within_mean / ratio` across groups.
PlantedGraph planted_partition(std::uint64_t seed, std::size_t groups = 6,
                               std::size_t group_size = 20, double within_mean = 1.0,
                               double ratio = 10.0);

/// Poisson draw built on bikeflow::Rng so fixtures are identical across
/// standard libraries.
std::uint64_t poisson(Rng &rng, double mean);

std::vector<Station> numbered_stations(std::size_t n, bool with_coordinates = true);

/// Weekday timestamp: 2014-06-02 (Monday) plus `day` days (weekends skipped)
/// at hour:minute.
Timestamp weekday_time(int day, int hour, int minute);

struct TripCorpus {
    std::vector<Station> stations;
    std::vector<TripRecord> trips;
    Partition truth; ///< planted groups over station indices
};

/// Two planted groups of stations with within-group trips in every hour.
TripCorpus two_community_all_hours(std::uint64_t seed);

/// Four planted groups; between 07:00 and 09:59 trips go to uniformly random
/// stations across all groups, in other daytime hours they stay within the
/// group, and night hours carry a handful of random trips.
TripCorpus peak_merge_corpus(std::uint64_t seed);

} // namespace bikeflow::testing
