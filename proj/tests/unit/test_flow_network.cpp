#include "bikeflow/error.hpp"
#include "bikeflow/flow_network.hpp"
#include "bikeflow/random.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bikeflow {
namespace {

using testing::numbered_stations;

TripRecord trip(StationId a, StationId b) {
    TripRecord t;
    t.start_station_id = a;
    t.end_station_id = b;
    t.bike_id = 1;
    return t;
}

TEST(BuildNetwork, CountsTripsPerOrderedPair) {
    std::vector<TripRecord> trips{trip(1, 2), trip(1, 2), trip(1, 2), trip(2, 1)};
    const auto net = build_network(trips, numbered_stations(2));
    ASSERT_EQ(net.edge_count(), 2u);
    EXPECT_EQ(net.edges()[0], (Edge{0, 1, 3}));
    EXPECT_EQ(net.edges()[1], (Edge{1, 0, 1}));
    EXPECT_EQ(net.total_weight(), 4u);
}

TEST(BuildNetwork, SelfLoopsAggregate) {
    const auto net = build_network(std::vector{trip(1, 1), trip(1, 1)}, numbered_stations(1));
    ASSERT_EQ(net.edge_count(), 1u);
    EXPECT_EQ(net.edges()[0], (Edge{0, 0, 2}));
}

TEST(BuildNetwork, IsolatedStationsRemain) {
    const auto net = build_network(std::vector{trip(1, 2)}, numbered_stations(4));
    EXPECT_EQ(net.node_count(), 4u);
    EXPECT_EQ(net.out_strength(3), 0u);
}

TEST(BuildNetwork, UnknownStationsListed) {
    try {
        build_network(std::vector{trip(1, 7), trip(8, 1)}, numbered_stations(2));
        FAIL() << "expected IngestError";
    } catch (const IngestError &e) {
        const std::string what = e.what();
        EXPECT_NE(what.find('7'), std::string::npos);
        EXPECT_NE(what.find('8'), std::string::npos);
    }
}

TEST(BuildNetworkProperty, TripOrderDoesNotMatter) {
    Rng rng(3);
    std::vector<TripRecord> trips;
    for (int i = 0; i < 500; ++i) {
        trips.push_back(trip(1 + static_cast<StationId>(rng.below(9)),
                             1 + static_cast<StationId>(rng.below(9))));
    }
    const auto base = build_network(trips, numbered_stations(9));
    for (int k = 0; k < 5; ++k) {
        rng.shuffle(std::span<TripRecord>(trips));
        const auto other = build_network(trips, numbered_stations(9));
        EXPECT_TRUE(std::equal(base.edges().begin(), base.edges().end(), other.edges().begin(),
                               other.edges().end()));
    }
    std::uint64_t out = 0, in = 0;
    for (NodeIndex a = 0; a < base.node_count(); ++a) {
        out += base.out_strength(a);
        in += base.in_strength(a);
    }
    EXPECT_EQ(out, trips.size());
    EXPECT_EQ(in, trips.size());
    EXPECT_EQ(base.total_weight(), trips.size());
}

TEST(OutStrength, Examples) {
    const auto net = testing::make_network(4, {{0, 1, 3}, {0, 2, 2}, {3, 3, 4}});
    EXPECT_EQ(net.out_strength(0), 5u);
    EXPECT_EQ(net.out_strength(1), 0u);
    EXPECT_EQ(net.out_strength(3), 4u);
    EXPECT_THROW(net.out_strength(4), ArgumentError);
}

TEST(FlowNetwork, CanonicalizesDuplicatesAndZeros) {
    const auto net = testing::make_network(2, {{0, 1, 2}, {0, 1, 3}, {1, 0, 0}});
    ASSERT_EQ(net.edge_count(), 1u);
    EXPECT_EQ(net.edges()[0].weight, 5u);
}

TEST(FlowNetwork, ValidatesStations) {
    auto stations = numbered_stations(2);
    stations[1].id = stations[0].id;
    EXPECT_THROW(FlowNetwork(stations, {}), ArgumentError);
    stations = numbered_stations(1);
    stations[0].coord = Coordinate{95.0, 0.0};
    EXPECT_THROW(FlowNetwork(stations, {}), ArgumentError);
    EXPECT_THROW(FlowNetwork(numbered_stations(1), {Edge{0, 1, 1}}), ArgumentError);
}

TEST(Stations, ReadsMetadataWithOptionalCoordinates) {
    std::ifstream in(std::string(BIKEFLOW_TEST_DATA_DIR) + "/stations_small.csv");
    const auto stations = read_stations(in);
    ASSERT_EQ(stations.size(), 4u);
    EXPECT_EQ(stations[1].name, "Bank, City");
    ASSERT_TRUE(stations[0].coord);
    EXPECT_DOUBLE_EQ(stations[0].coord->lat, 51.5142);
    EXPECT_FALSE(stations[3].coord);
}

TEST(EdgeList, RoundTrip) {
    const auto net = testing::make_network(3, {{0, 1, 3}, {1, 0, 1}, {2, 2, 5}});
    std::ostringstream out;
    write_edge_list(out, net);
    EXPECT_EQ(out.str(), "origin_id,destination_id,weight\n1,2,3\n2,1,1\n3,3,5\n");
    std::istringstream in(out.str());
    const auto back = read_edge_list(in);
    EXPECT_TRUE(std::equal(net.edges().begin(), net.edges().end(), back.edges().begin(),
                           back.edges().end()));
}

TEST(EdgeList, StationUniverseFromMetadata) {
    std::istringstream in("origin_id,destination_id,weight\n1,2,3\n");
    const auto net = read_edge_list(in, numbered_stations(4));
    EXPECT_EQ(net.node_count(), 4u);
    std::istringstream bad("origin_id,destination_id,weight\n1,9,3\n");
    EXPECT_THROW(read_edge_list(bad, numbered_stations(4)), IngestError);
    std::istringstream no_header("1,2,3\n");
    EXPECT_THROW(read_edge_list(no_header), SchemaError);
}

} // namespace
} // namespace bikeflow
