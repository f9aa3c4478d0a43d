#pragma once

#include "bikeflow/flow_network.hpp"
#include "bikeflow/flow_solver.hpp"
#include "bikeflow/infomap.hpp"
#include "bikeflow/trip_ingest.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace bikeflow {

inline constexpr int kHoursPerDay = 24;

struct DynamicsOptions {
    OptimizerConfig optimizer;
    /// Stations with fewer trips (in + out) in an hour sit that hour out as
    /// kUnassigned.
    std::uint64_t min_flow = 1;
    FlowModel model = FlowModel::empirical;
    RandomWalkOptions walk;
};

/// Station x hour-of-day module labels. Within each hour label 0 is the
/// module with the largest visit mass, label 1 the next, and so on.
struct HourlyAssignment {
    struct Hour {
        std::vector<ModuleId> labels; ///< one per station, kUnassigned when idle
        std::uint64_t trips = 0;      ///< trips starting in this hour
        std::size_t modules = 0;
        double codelength = 0.0;
        std::vector<double> module_visit; ///< visit mass per label
        std::uint64_t seed = 0;
    };

    std::vector<StationId> stations;
    std::array<Hour, kHoursPerDay> hours;

    ModuleId label(std::size_t station, int hour) const {
        return hours.at(static_cast<std::size_t>(hour)).labels.at(station);
    }
};

/// Runs detection separately on each hour's trips. Hour h uses seed
/// (optimizer.seed XOR h). An hour without trips yields an all-unassigned
/// column.
HourlyAssignment hourly_communities(std::span<const TripRecord> trips,
                                    std::span<const Station> stations,
                                    const DynamicsOptions &options = {});

struct ColumnSimilarity {
    double nmi = 0.0;
    bool insufficient_overlap = false; ///< fewer than two stations assigned in both
    std::size_t compared = 0;
};

/// NMI between two hour columns over the stations assigned in both.
ColumnSimilarity column_similarity(std::span<const ModuleId> a, std::span<const ModuleId> b);

} // namespace bikeflow
