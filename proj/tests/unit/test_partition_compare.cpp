#include "bikeflow/error.hpp"
#include "bikeflow/partition.hpp"
#include "bikeflow/partition_compare.hpp"
#include "bikeflow/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace bikeflow {
namespace {

TEST(ComparePartitions, IdenticalIsOne) {
    const Partition p({0, 0, 1, 2, 2, 2});
    const auto s = compare_partitions(p, p);
    EXPECT_NEAR(s.nmi, 1.0, 1e-12);
    EXPECT_NEAR(s.ari, 1.0, 1e-12);
    EXPECT_NEAR(compare_partitions(p, Partition({5, 5, 3, 1, 1, 1})).nmi, 1.0, 1e-12);
}

TEST(ComparePartitions, ConstantVersusAnythingIsZeroNmi) {
    const auto s = compare_partitions(Partition::single_module(5), Partition({0, 1, 1, 2, 0}));
    EXPECT_DOUBLE_EQ(s.nmi, 0.0);
}

TEST(ComparePartitions, CrossedHalvesAri) {
    const auto s = compare_partitions(Partition({0, 0, 1, 1}), Partition({0, 1, 0, 1}));
    EXPECT_NEAR(s.ari, -0.5, 1e-12);
    EXPECT_NEAR(s.nmi, 0.0, 1e-12);
}

TEST(ComparePartitions, OnlyCoAssignedNodesCount) {
    const auto s = compare_partitions(Partition({0, 0, kUnassigned, 1}),
                                      Partition({1, 1, 0, kUnassigned}));
    EXPECT_EQ(s.compared, 2u);
    EXPECT_NEAR(s.nmi, 1.0, 1e-12);
}

TEST(ComparePartitions, DifferentUniversesIsError) {
    EXPECT_THROW(compare_partitions(Partition({0, 1}), Partition({0})), ArgumentError);
}

TEST(ComparePartitionsProperty, AgreesWithPairCountingAndReferenceNmi) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(30);
        std::vector<ModuleId> a(n), b(n);
        const auto ka = 1 + rng.below(5), kb = 1 + rng.below(5);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.below(8) == 0 ? kUnassigned : static_cast<ModuleId>(rng.below(ka));
            b[i] = static_cast<ModuleId>(rng.below(kb));
        }
        const Partition pa(a), pb(b);
        const auto s = compare_partitions(pa, pb);
        if (s.compared < 2) {
            continue;
        }
        EXPECT_NEAR(s.ari, testing::pair_counting_ari(pa, pb), 1e-10);
        EXPECT_NEAR(s.nmi, testing::reference_nmi(pa, pb), 1e-10);
        EXPECT_GE(s.nmi, 0.0);
        EXPECT_LE(s.nmi, 1.0);
    }
}

TEST(Partition, CompactAndRelabel) {
    const Partition p({4, 4, kUnassigned, 9, 2});
    EXPECT_FALSE(p.is_dense());
    const auto c = p.compacted();
    EXPECT_EQ(c, Partition({0, 0, kUnassigned, 1, 2}));
    const std::vector<double> mass{0.1, 0.1, 0.0, 0.5, 0.3};
    EXPECT_EQ(p.relabeled_by_mass(mass), Partition({2, 2, kUnassigned, 0, 1}));
    EXPECT_THROW(Partition({-2}), ArgumentError);
}

} // namespace
} // namespace bikeflow
