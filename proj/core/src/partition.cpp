#include "bikeflow/partition.hpp"

#include "bikeflow/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <numeric>

namespace bikeflow {

Partition::Partition(std::vector<ModuleId> assignment) : assignment_(std::move(assignment)) {
    ModuleId top = kUnassigned;
    for (ModuleId m : assignment_) {
        if (m < kUnassigned) {
            throw ArgumentError(fmt::format("invalid module id {}", m));
        }
        top = std::max(top, m);
    }
    module_count_ = static_cast<std::size_t>(top + 1);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<ModuleId> a(n);
    std::iota(a.begin(), a.end(), 0);
    return Partition(std::move(a));
}

Partition Partition::single_module(std::size_t n) {
    return Partition(std::vector<ModuleId>(n, 0));
}

bool Partition::is_dense() const {
    std::vector<bool> used(module_count_, false);
    for (ModuleId m : assignment_) {
        if (m != kUnassigned) {
            used[static_cast<std::size_t>(m)] = true;
        }
    }
    return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
}

Partition Partition::compacted() const {
    std::vector<ModuleId> map(module_count_, kUnassigned);
    std::vector<ModuleId> out(assignment_.size(), kUnassigned);
    ModuleId next = 0;
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        const ModuleId m = assignment_[i];
        if (m == kUnassigned) {
            continue;
        }
        auto &slot = map[static_cast<std::size_t>(m)];
        if (slot == kUnassigned) {
            slot = next++;
        }
        out[i] = slot;
    }
    return Partition(std::move(out));
}

Partition Partition::relabeled_by_mass(std::span<const double> mass) const {
    if (mass.size() != assignment_.size()) {
        throw ArgumentError("mass vector does not match partition size");
    }
    const Partition dense = compacted();
    const std::size_t m = dense.module_count();
    std::vector<double> total(m, 0.0);
    std::vector<std::size_t> first(m, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        const ModuleId id = dense.assignment_[i];
        if (id == kUnassigned) {
            continue;
        }
        total[static_cast<std::size_t>(id)] += mass[i];
        first[static_cast<std::size_t>(id)] = std::min(first[static_cast<std::size_t>(id)], i);
    }
    std::vector<ModuleId> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](ModuleId a, ModuleId b) {
        const auto ua = static_cast<std::size_t>(a);
        const auto ub = static_cast<std::size_t>(b);
        if (total[ua] != total[ub]) {
            return total[ua] > total[ub];
        }
        return first[ua] < first[ub];
    });
    std::vector<ModuleId> rank(m);
    for (std::size_t r = 0; r < m; ++r) {
        rank[static_cast<std::size_t>(order[r])] = static_cast<ModuleId>(r);
    }
    std::vector<ModuleId> out(assignment_.size(), kUnassigned);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const ModuleId id = dense.assignment_[i];
        if (id != kUnassigned) {
            out[i] = rank[static_cast<std::size_t>(id)];
        }
    }
    return Partition(std::move(out));
}

} // namespace bikeflow
