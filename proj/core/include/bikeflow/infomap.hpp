#pragma once

#include "bikeflow/flow_network.hpp"
#include "bikeflow/flow_solver.hpp"
#include "bikeflow/partition.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace bikeflow {

struct OptimizerConfig {
    std::uint64_t seed = 1;
    int trials = 10;
    int max_sweeps = 100;
    double min_improvement = 1e-10; ///< bits
    /// After the node sweeps converge, repeat them with each module moving
    /// as a single unit, then refine at node level again. Off = node sweeps
    /// only.
    bool coarsen = true;
};

enum class ObjectiveKind { codelength_bits, modularity };

std::string_view to_string(ObjectiveKind kind);

/// Outcome of a community detection run. For the map equation `objective`
/// is the codelength in bits (lower is better); for the modularity baselines
/// it is Q (higher is better).
struct OptimizationResult {
    Partition partition;
    double objective = 0.0;
    ObjectiveKind objective_kind = ObjectiveKind::codelength_bits;
    int sweeps_run = 0; ///< sweeps (or passes) of the winning trial
    std::vector<double> trial_objectives;
    /// Objective after initialization and after every sweep, per trial.
    std::vector<std::vector<double>> trial_traces;
    std::size_t best_trial = 0;
    std::uint64_t seed_used = 0;

    std::size_t module_count() const { return partition.module_count(); }
};

/// Map-equation local-move optimizer.
///
/// Each trial starts from singleton modules over the nodes with positive
/// flow. A sweep visits those nodes in a fresh random order and moves each
/// to the neighbouring module (via an in- or out-edge) with the most negative
/// codelength change, provided the change is below -min_improvement; ties go
/// to the lowest module id. Sweeps stop when one makes no move or after
/// max_sweeps.
///
/// With `coarsen`, the modules found are then collapsed into units and swept
/// the same way, level by level until a level makes no move; the resulting
/// partition is refined by node sweeps again, and the whole round repeats
/// while it lowers the codelength.
///
/// The best of `trials` restarts wins (ties to the earlier trial). Modules are
/// returned numbered by decreasing visit mass; nodes without flow are
/// kUnassigned.
OptimizationResult infomap(const FlowState &flow, const FlowNetwork &net,
                           const OptimizerConfig &config = {});

} // namespace bikeflow
