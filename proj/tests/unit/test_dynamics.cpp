#include "bikeflow/dynamics.hpp"
#include "bikeflow/error.hpp"
#include "bikeflow/partition_compare.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace bikeflow {
namespace {

TEST(Dynamics, HourBucketsPartitionTheCorpus) {
    const auto corpus = testing::peak_merge_corpus(3);
    const auto hourly = hourly_communities(corpus.trips, corpus.stations);
    std::uint64_t total = 0;
    for (const auto &h : hourly.hours) {
        total += h.trips;
    }
    EXPECT_EQ(total, corpus.trips.size());
    std::size_t covered = 0;
    for (int h = 0; h < kHoursPerDay; ++h) {
        covered += filter_by_hour(corpus.trips, h).size();
    }
    EXPECT_EQ(covered, corpus.trips.size());
}

TEST(Dynamics, PeakHoursMergeCommunities) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto corpus = testing::peak_merge_corpus(seed);
        const auto hourly = hourly_communities(corpus.trips, corpus.stations);
        std::size_t peak_max = 0, midday_min = SIZE_MAX;
        for (int h = 7; h <= 9; ++h) {
            peak_max = std::max(peak_max, hourly.hours[h].modules);
        }
        for (int h = 11; h <= 14; ++h) {
            midday_min = std::min(midday_min, hourly.hours[h].modules);
        }
        EXPECT_LT(peak_max, midday_min) << "seed " << seed;
        // midday columns recover the planted groups
        const auto &noon = hourly.hours[12].labels;
        EXPECT_GE(compare_partitions(Partition(noon), corpus.truth).nmi, 0.95);
    }
}

TEST(Dynamics, StableCommunitiesAgreeAcrossHours) {
    const auto corpus = testing::two_community_all_hours(5);
    const auto hourly = hourly_communities(corpus.trips, corpus.stations);
    for (int h = 1; h < kHoursPerDay; ++h) {
        const auto s = column_similarity(hourly.hours[h - 1].labels, hourly.hours[h].labels);
        EXPECT_FALSE(s.insufficient_overlap);
        EXPECT_NEAR(s.nmi, 1.0, 1e-12) << "hour " << h;
    }
}

TEST(Dynamics, LabelsOrderedByVisit) {
    const auto corpus = testing::peak_merge_corpus(4);
    const auto hourly = hourly_communities(corpus.trips, corpus.stations);
    for (const auto &h : hourly.hours) {
        ASSERT_EQ(h.module_visit.size(), h.modules);
        for (std::size_t i = 1; i < h.module_visit.size(); ++i) {
            EXPECT_GE(h.module_visit[i - 1], h.module_visit[i]);
        }
    }
}

TEST(Dynamics, DeterministicAndSeededPerHour) {
    const auto corpus = testing::peak_merge_corpus(6);
    DynamicsOptions opt;
    opt.optimizer.seed = 40;
    const auto a = hourly_communities(corpus.trips, corpus.stations, opt);
    const auto b = hourly_communities(corpus.trips, corpus.stations, opt);
    for (int h = 0; h < kHoursPerDay; ++h) {
        EXPECT_EQ(a.hours[h].labels, b.hours[h].labels);
        EXPECT_EQ(a.hours[h].codelength, b.hours[h].codelength);
        EXPECT_EQ(a.hours[h].seed, 40u ^ static_cast<std::uint64_t>(h));
    }
}

TEST(Dynamics, MinFlowLeavesQuietStationsUnassigned) {
    const auto corpus = testing::peak_merge_corpus(2);
    DynamicsOptions opt;
    opt.min_flow = 1000;
    const auto hourly = hourly_communities(corpus.trips, corpus.stations, opt);
    for (const auto &h : hourly.hours) {
        EXPECT_EQ(h.modules, 0u);
        EXPECT_TRUE(std::all_of(h.labels.begin(), h.labels.end(),
                                [](ModuleId m) { return m == kUnassigned; }));
    }
}

TEST(Dynamics, EmptyHourIsUnassigned) {
    auto corpus = testing::two_community_all_hours(1);
    std::erase_if(corpus.trips, [](const TripRecord &t) { return hour_of_day(t.start_time) == 3; });
    const auto hourly = hourly_communities(corpus.trips, corpus.stations);
    EXPECT_EQ(hourly.hours[3].trips, 0u);
    EXPECT_EQ(hourly.label(0, 3), kUnassigned);
}

TEST(ColumnSimilarity, InsufficientOverlap) {
    const std::vector<ModuleId> a{0, kUnassigned, 1}, b{kUnassigned, 0, 0};
    const auto s = column_similarity(a, b);
    EXPECT_TRUE(s.insufficient_overlap);
    EXPECT_EQ(s.nmi, 0.0);
    const std::vector<ModuleId> c{0, 1};
    EXPECT_THROW(column_similarity(a, c), ArgumentError);
}

} // namespace
} // namespace bikeflow
