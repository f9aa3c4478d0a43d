#include "bikeflow/baselines.hpp"
#include "bikeflow/error.hpp"
#include "bikeflow/partition_compare.hpp"
#include "bikeflow/random.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace bikeflow {
namespace {

using testing::make_network;

TEST(Modularity, HandValues) {
    const auto two = make_network(4, {{0, 1, 1}, {2, 3, 1}});
    EXPECT_NEAR(modularity(two, Partition({0, 0, 1, 1})).q, 0.5, 1e-12);
    const auto edge = make_network(2, {{0, 1, 1}});
    EXPECT_NEAR(modularity(edge, Partition({0, 1})).q, -0.5, 1e-12);
    EXPECT_NEAR(modularity(edge, Partition({0, 0})).q, 0.0, 1e-12);
}

TEST(Modularity, MatchesDenseFormulaOnAllPartitions) {
    for (const auto &[name, net] : testing::small_fixtures()) {
        if (net.node_count() > 6) {
            continue;
        }
        std::vector<NodeIndex> all(net.node_count());
        for (std::size_t a = 0; a < all.size(); ++a) {
            all[a] = static_cast<NodeIndex>(a);
        }
        for (double gamma : {1.0, 0.5}) {
            testing::for_each_set_partition(net.node_count(), all, [&](const Partition &p) {
                EXPECT_NEAR(modularity(net, p, gamma).q, testing::dense_modularity(net, p, gamma),
                            1e-12)
                    << name;
            });
        }
    }
}

TEST(Modularity, RandomPartitionsNearZero) {
    const auto planted = testing::planted_partition(5);
    Rng rng(99);
    double sum = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        std::vector<ModuleId> labels(planted.net.node_count());
        for (auto &l : labels) {
            l = static_cast<ModuleId>(rng.below(6));
        }
        sum += modularity(planted.net, Partition(labels)).q;
    }
    EXPECT_LT(std::abs(sum / 20.0), 0.05);
}

TEST(Modularity, Rejections) {
    const auto empty = make_network(3, {});
    EXPECT_THROW(modularity(empty, Partition::singletons(3)), ArgumentError);
    const auto edge = make_network(2, {{0, 1, 1}});
    EXPECT_THROW(modularity(edge, Partition({0, kUnassigned})), ArgumentError);
    EXPECT_THROW(modularity(edge, Partition({0, 0}), 0.0), ArgumentError);
}

TEST(Modularity, ScalingInvariant) {
    for (const auto &[name, net] : testing::small_fixtures()) {
        const Partition p = Partition::singletons(net.node_count());
        EXPECT_NEAR(modularity(net, p).q, modularity(net.scaled(7), p).q, 1e-12) << name;
    }
}

TEST(Baselines, TwoCliquesSplit) {
    std::vector<std::tuple<NodeIndex, NodeIndex, std::uint64_t>> edges;
    for (NodeIndex g = 0; g < 2; ++g) {
        for (NodeIndex i = 0; i < 4; ++i) {
            for (NodeIndex j = i + 1; j < 4; ++j) {
                edges.emplace_back(4 * g + i, 4 * g + j, 1);
            }
        }
    }
    const auto net = make_network(8, edges);
    for (const auto &r : {louvain(net, 1), greedy_modularity(net)}) {
        EXPECT_EQ(r.module_count(), 2u);
        EXPECT_NEAR(r.objective, 0.5, 1e-12);
        EXPECT_EQ(r.objective_kind, ObjectiveKind::modularity);
    }
}

TEST(Baselines, StarIsOneModule) {
    const auto star = make_network(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    EXPECT_EQ(louvain(star, 3).module_count(), 1u);
    EXPECT_EQ(greedy_modularity(star).module_count(), 1u);
}

TEST(Baselines, EmptyNetworkGivesSingletons) {
    const auto empty = make_network(3, {});
    for (const auto &r : {louvain(empty, 1), greedy_modularity(empty)}) {
        EXPECT_EQ(r.partition, Partition::singletons(3));
        EXPECT_EQ(r.objective, 0.0);
    }
}

TEST(Baselines, ReportedQMatchesAndNeverBeatsBruteForce) {
    for (const auto &[name, net] : testing::small_fixtures()) {
        const auto best = testing::brute_force_max_modularity(net);
        for (const auto &r : {louvain(net, 11), greedy_modularity(net)}) {
            EXPECT_NEAR(r.objective, modularity(net, r.partition).q, 1e-10) << name;
            EXPECT_LE(r.objective, best.value + 1e-10) << name;
            EXPECT_TRUE(r.partition.is_dense()) << name;
        }
    }
}

TEST(Baselines, ScalingKeepsPartition) {
    for (const auto &[name, net] : testing::small_fixtures()) {
        EXPECT_EQ(louvain(net, 4).partition, louvain(net.scaled(5), 4).partition) << name;
        EXPECT_EQ(greedy_modularity(net).partition, greedy_modularity(net.scaled(5)).partition)
            << name;
    }
}

TEST(Baselines, LouvainDeterministic) {
    const auto planted = testing::planted_partition(2);
    EXPECT_EQ(louvain(planted.net, 8).partition, louvain(planted.net, 8).partition);
}

TEST(Baselines, PlantedRecovery) {
    int louvain_good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto planted = testing::planted_partition(seed);
        const auto r = louvain(planted.net, seed);
        louvain_good += compare_partitions(r.partition, planted.truth).nmi >= 0.9 ? 1 : 0;
    }
    EXPECT_GE(louvain_good, 9);
    const auto planted = testing::planted_partition(1);
    EXPECT_GE(compare_partitions(greedy_modularity(planted.net).partition, planted.truth).nmi, 0.8);
}

TEST(Baselines, ResolutionChangesGranularity) {
    const auto planted = testing::planted_partition(6);
    EXPECT_LE(louvain(planted.net, 1, 0.2).module_count(), louvain(planted.net, 1, 3.0).module_count());
    EXPECT_THROW(louvain(planted.net, 1, -1.0), ArgumentError);
}

} // namespace
} // namespace bikeflow
