#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

namespace bikeflow::testing {
namespace {

TEST(SetPartitionEnumeration, MatchesBellNumbers) {
    const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (std::size_t k = 1; k <= 8; ++k) {
        std::vector<NodeIndex> nodes(k);
        for (NodeIndex i = 0; i < k; ++i) {
            nodes[i] = i;
        }
        std::set<std::vector<ModuleId>> distinct;
        const std::size_t count = for_each_set_partition(k, nodes, [&](const Partition &p) {
            distinct.insert({p.assignment().begin(), p.assignment().end()});
        });
        EXPECT_EQ(count, bell[k]) << "k=" << k;
        EXPECT_EQ(distinct.size(), bell[k]);
    }
}

TEST(SetPartitionEnumeration, LeavesUnlistedNodesUnassigned) {
    std::size_t seen = 0;
    for_each_set_partition(4, {1, 3}, [&](const Partition &p) {
        EXPECT_EQ(p.module_of(0), kUnassigned);
        EXPECT_EQ(p.module_of(2), kUnassigned);
        ++seen;
    });
    EXPECT_EQ(seen, 2u);
}

TEST(DenseStationary, HubGraphByHand) {
    const auto net = make_network(3, {{0, 1, 1}, {0, 2, 1}, {1, 0, 1}, {2, 0, 1}});
    const auto p = dense_stationary(net, 0.0);
    EXPECT_NEAR(p[0], 0.5, 1e-14);
    EXPECT_NEAR(p[1], 0.25, 1e-14);
    EXPECT_NEAR(p[2], 0.25, 1e-14);
}

TEST(PairCountingAri, CrossedHalvesIsMinusHalf) {
    // contingency table of all ones: index 0, expected 2/3, max 2
    const Partition a({0, 0, 1, 1});
    const Partition b({0, 1, 0, 1});
    EXPECT_NEAR(pair_counting_ari(a, b), -0.5, 1e-15);
}

} // namespace
} // namespace bikeflow::testing
