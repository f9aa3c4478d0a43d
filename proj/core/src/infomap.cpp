#include "bikeflow/infomap.hpp"

#include "bikeflow/error.hpp"
#include "bikeflow/map_equation.hpp"
#include "bikeflow/random.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace bikeflow {

std::string_view to_string(ObjectiveKind kind) {
    return kind == ObjectiveKind::codelength_bits ? "codelength_bits" : "modularity";
}

namespace {

struct TrialOutcome {
    Partition partition;
    std::vector<double> trace;
    int sweeps = 0;
};

/// Candidate-module accumulator reused across nodes.
class NeighbourModules {
public:
    explicit NeighbourModules(std::size_t capacity)
        : out_(capacity, 0.0), in_(capacity, 0.0), seen_(capacity, false) {}

    void add_out(ModuleId m, double flow) { touch(m), out_[static_cast<std::size_t>(m)] += flow; }
    void add_in(ModuleId m, double flow) { touch(m), in_[static_cast<std::size_t>(m)] += flow; }

    std::vector<ModuleId> &modules() { return touched_; }
    double out_to(ModuleId m) const { return out_[static_cast<std::size_t>(m)]; }
    double in_from(ModuleId m) const { return in_[static_cast<std::size_t>(m)]; }

    void clear() {
        for (ModuleId m : touched_) {
            const auto i = static_cast<std::size_t>(m);
            out_[i] = in_[i] = 0.0;
            seen_[i] = false;
        }
        touched_.clear();
    }

private:
    void touch(ModuleId m) {
        const auto i = static_cast<std::size_t>(m);
        if (!seen_[i]) {
            seen_[i] = true;
            touched_.push_back(m);
        }
    }

    std::vector<double> out_, in_;
    std::vector<bool> seen_;
    std::vector<ModuleId> touched_;
};

/// Sweeps until one makes no move or max_sweeps is hit; appends the
/// codelength after every sweep to the trace. Returns the number of moves.
std::size_t sweep_level(MapEquationState &state, const OptimizerConfig &config, Rng &rng,
                        TrialOutcome &outcome) {
    NeighbourModules neighbours(state.node_count() + 1);
    std::vector<NodeIndex> order;
    for (NodeIndex u = 0; u < state.node_count(); ++u) {
        if (state.module_of(u) != kUnassigned) {
            order.push_back(u);
        }
    }

    std::size_t total_moves = 0;
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
        rng.shuffle(std::span<NodeIndex>(order));
        std::size_t moves = 0;
        for (NodeIndex node : order) {
            const ModuleId current = state.module_of(node);
            for (const auto &l : state.out_links(node)) {
                const ModuleId m = state.module_of(l.neighbor);
                if (m != kUnassigned) {
                    neighbours.add_out(m, l.flow);
                }
            }
            for (const auto &l : state.in_links(node)) {
                const ModuleId m = state.module_of(l.neighbor);
                if (m != kUnassigned) {
                    neighbours.add_in(m, l.flow);
                }
            }
            auto &candidates = neighbours.modules();
            std::sort(candidates.begin(), candidates.end());

            MapEquationState::Linkage base;
            base.out_to_source = neighbours.out_to(current);
            base.in_from_source = neighbours.in_from(current);

            ModuleId best = current;
            double best_delta = 0.0;
            MapEquationState::Linkage best_link;
            for (ModuleId m : candidates) {
                if (m == current) {
                    continue;
                }
                MapEquationState::Linkage link = base;
                link.out_to_target = neighbours.out_to(m);
                link.in_from_target = neighbours.in_from(m);
                const double d = state.delta(node, m, link);
                if (d < best_delta) {
                    best_delta = d;
                    best = m;
                    best_link = link;
                }
            }
            neighbours.clear();

            if (best != current && best_delta < -config.min_improvement) {
                state.move(node, best, best_link);
                ++moves;
            }
        }
        state.recompute();
        outcome.trace.push_back(state.codelength());
        ++outcome.sweeps;
        total_moves += moves;
        if (moves == 0) {
            break;
        }
    }
    return total_moves;
}

/// Collapses modules level by level and sweeps each level. Returns the
/// node-level assignment of the final modules.
std::vector<ModuleId> coarse_passes(const MapEquationState &fine, const OptimizerConfig &config,
                                    Rng &rng, TrialOutcome &outcome) {
    const Partition start = fine.partition().compacted();
    std::vector<ModuleId> assignment(start.assignment().begin(), start.assignment().end());
    MapEquationState level = fine.coarsened();
    while (level.node_count() > 1 && sweep_level(level, config, rng, outcome) > 0) {
        for (ModuleId &m : assignment) {
            if (m != kUnassigned) {
                m = level.module_of(static_cast<NodeIndex>(m));
            }
        }
        const Partition compact = level.partition().compacted();
        for (ModuleId &m : assignment) {
            if (m != kUnassigned) {
                m = compact.module_of(static_cast<std::size_t>(m));
            }
        }
        level = level.coarsened();
    }
    return assignment;
}

TrialOutcome run_trial(const FlowState &flow, const std::vector<NodeIndex> &active,
                       const OptimizerConfig &config, std::uint64_t seed) {
    std::vector<ModuleId> initial(flow.node_count(), kUnassigned);
    for (NodeIndex a : active) {
        initial[a] = static_cast<ModuleId>(a);
    }
    MapEquationState state(flow, Partition(std::move(initial)));
    Rng rng(seed);

    TrialOutcome outcome;
    outcome.trace.push_back(state.codelength());
    sweep_level(state, config, rng, outcome);

    if (config.coarsen) {
        for (;;) {
            const double before = state.codelength();
            MapEquationState candidate(flow, Partition(coarse_passes(state, config, rng, outcome)));
            sweep_level(candidate, config, rng, outcome);
            if (!(candidate.codelength() < before - config.min_improvement)) {
                break;
            }
            state = std::move(candidate);
        }
    }
    outcome.partition = state.partition().relabeled_by_mass(flow.node_visit);
    return outcome;
}

} // namespace

OptimizationResult infomap(const FlowState &flow, const FlowNetwork &net,
                           const OptimizerConfig &config) {
    if (flow.node_count() != net.node_count() || flow.edges.size() != net.edge_count()) {
        throw ArgumentError("flow state does not belong to this network");
    }
    if (config.trials < 1 || config.max_sweeps < 1 || !(config.min_improvement >= 0.0)) {
        throw ArgumentError("optimizer needs trials >= 1, max_sweeps >= 1, min_improvement >= 0");
    }

    std::vector<NodeIndex> active;
    for (NodeIndex a = 0; a < flow.node_count(); ++a) {
        if (flow.node_visit[a] > 0.0) {
            active.push_back(a);
        }
    }

    OptimizationResult result;
    result.objective_kind = ObjectiveKind::codelength_bits;
    result.seed_used = config.seed;
    if (active.empty()) {
        result.partition = Partition(std::vector<ModuleId>(flow.node_count(), kUnassigned));
        result.objective = 0.0;
        result.trial_objectives.assign(static_cast<std::size_t>(config.trials), 0.0);
        result.trial_traces.assign(static_cast<std::size_t>(config.trials), {0.0});
        return result;
    }

    for (int t = 0; t < config.trials; ++t) {
        TrialOutcome trial =
            run_trial(flow, active, config, derive_seed(config.seed, static_cast<std::uint64_t>(t)));
        const double L = codelength(flow, trial.partition);
        result.trial_objectives.push_back(L);
        result.trial_traces.push_back(std::move(trial.trace));
        if (t == 0 || L < result.objective) {
            result.objective = L;
            result.partition = std::move(trial.partition);
            result.sweeps_run = trial.sweeps;
            result.best_trial = static_cast<std::size_t>(t);
        }
    }
    return result;
}

} // namespace bikeflow
