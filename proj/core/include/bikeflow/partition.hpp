#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bikeflow {

using ModuleId = std::int32_t;

/// Label for nodes that take no part in detection (zero flow, below the
/// minimum-flow threshold).
inline constexpr ModuleId kUnassigned = -1;

/// Assignment of every node to a module id or kUnassigned.
class Partition {
public:
    Partition() = default;

    /// Throws ArgumentError on ids below kUnassigned.
    explicit Partition(std::vector<ModuleId> assignment);

    static Partition singletons(std::size_t n);
    static Partition single_module(std::size_t n);

    std::size_t node_count() const noexcept { return assignment_.size(); }
    ModuleId module_of(std::size_t node) const { return assignment_.at(node); }
    bool assigned(std::size_t node) const { return module_of(node) != kUnassigned; }
    std::span<const ModuleId> assignment() const noexcept { return assignment_; }

    /// One past the largest module id in use.
    std::size_t module_count() const noexcept { return module_count_; }

    /// True when every id in 0..module_count()-1 is used.
    bool is_dense() const;

    /// Renumbers modules 0..m-1 in order of first appearance.
    Partition compacted() const;

    /// Renumbers modules 0..m-1 by decreasing `mass` summed over members;
    /// ties go to the module containing the lowest node index.
    Partition relabeled_by_mass(std::span<const double> mass) const;

    friend bool operator==(const Partition &, const Partition &) = default;

private:
    std::vector<ModuleId> assignment_;
    std::size_t module_count_ = 0;
};

} // namespace bikeflow
