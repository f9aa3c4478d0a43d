#include "bikeflow/partition_compare.hpp"

#include "bikeflow/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace bikeflow {

namespace {

double choose2(double x) {
    return x * (x - 1.0) / 2.0;
}

} // namespace

PartitionSimilarity compare_partitions(const Partition &a, const Partition &b) {
    if (a.node_count() != b.node_count()) {
        throw ArgumentError(fmt::format("partitions cover different node sets ({} vs {})",
                                        a.node_count(), b.node_count()));
    }
    std::map<std::pair<ModuleId, ModuleId>, double> joint;
    std::map<ModuleId, double> rows, cols;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.node_count(); ++i) {
        if (!a.assigned(i) || !b.assigned(i)) {
            continue;
        }
        ++n;
        joint[{a.module_of(i), b.module_of(i)}] += 1.0;
        rows[a.module_of(i)] += 1.0;
        cols[b.module_of(i)] += 1.0;
    }
    PartitionSimilarity out;
    out.compared = n;
    if (n < 2) {
        return out;
    }
    const double total = static_cast<double>(n);

    double ha = 0.0, hb = 0.0, mi = 0.0;
    for (const auto &[_, c] : rows) {
        ha -= (c / total) * std::log(c / total);
    }
    for (const auto &[_, c] : cols) {
        hb -= (c / total) * std::log(c / total);
    }
    for (const auto &[key, c] : joint) {
        const double pij = c / total;
        mi += pij * std::log(pij * total * total / (rows[key.first] * cols[key.second]));
    }
    if (ha + hb <= 0.0) {
        out.nmi = 1.0; // both labelings constant
    } else {
        out.nmi = std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
    }

    double sum_joint = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto &[_, c] : joint) {
        sum_joint += choose2(c);
    }
    for (const auto &[_, c] : rows) {
        sum_rows += choose2(c);
    }
    for (const auto &[_, c] : cols) {
        sum_cols += choose2(c);
    }
    const double expected = sum_rows * sum_cols / choose2(total);
    const double max_index = 0.5 * (sum_rows + sum_cols);
    const double denom = max_index - expected;
    out.ari = denom == 0.0 ? 1.0 : (sum_joint - expected) / denom;
    return out;
}

} // namespace bikeflow
