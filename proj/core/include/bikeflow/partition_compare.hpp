#pragma once

#include "bikeflow/partition.hpp"

namespace bikeflow {

struct PartitionSimilarity {
    double nmi = 0.0; ///< normalized mutual information, arithmetic-mean normalization
    double ari = 0.0; ///< adjusted Rand index
    std::size_t compared = 0; ///< nodes assigned in both partitions
};

/// Similarity over the nodes assigned in both partitions. When both
/// labelings are constant NMI and ARI are 1; when only one is, NMI is 0.
/// With fewer than two co-assigned nodes both scores are 0. Throws
/// ArgumentError when the node counts differ.
PartitionSimilarity compare_partitions(const Partition &a, const Partition &b);

} // namespace bikeflow
