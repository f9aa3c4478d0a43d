#include "bikeflow/flow_solver.hpp"

#include "bikeflow/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numeric>

namespace bikeflow {

std::string_view to_string(FlowModel model) {
    return model == FlowModel::empirical ? "empirical" : "random_walk";
}

FlowModel parse_flow_model(std::string_view text) {
    if (text == "empirical") {
        return FlowModel::empirical;
    }
    if (text == "random_walk" || text == "random-walk") {
        return FlowModel::random_walk;
    }
    throw ArgumentError(fmt::format("unknown flow model '{}'", text));
}

namespace {

std::vector<FlowEdge> edge_skeleton(const FlowNetwork &net) {
    std::vector<FlowEdge> out;
    out.reserve(net.edge_count());
    for (const Edge &e : net.edges()) {
        out.push_back(FlowEdge{e.origin, e.destination, 0.0});
    }
    return out;
}

} // namespace

FlowState empirical_flow(const FlowNetwork &net) {
    if (net.total_weight() == 0) {
        throw ArgumentError("empirical flow needs a network with at least one trip");
    }
    FlowState state;
    state.model = FlowModel::empirical;
    state.tau = 0.0;
    state.node_visit.assign(net.node_count(), 0.0);
    state.teleport_out.assign(net.node_count(), 0.0);
    state.edges = edge_skeleton(net);

    const double total = static_cast<double>(net.total_weight());
    const auto edges = net.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        state.edges[k].flow = static_cast<double>(edges[k].weight) / total;
    }
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        state.node_visit[a] = static_cast<double>(net.out_strength(a)) / total;
    }
    return state;
}

FlowState random_walk_flow(const FlowNetwork &net, const RandomWalkOptions &options) {
    if (!(options.tau >= 0.0 && options.tau <= 1.0)) {
        throw ArgumentError(fmt::format("tau must lie in [0, 1], got {}", options.tau));
    }
    if (!(options.tol > 0.0) || options.max_iter <= 0) {
        throw ArgumentError("tolerance and iteration limit must be positive");
    }
    const std::size_t n = net.node_count();
    if (n == 0) {
        throw ArgumentError("random walk flow needs a non-empty network");
    }

    // Transition weights, optionally without self-loops.
    std::vector<double> strength(n, 0.0);
    const auto edges = net.edges();
    auto counts = [&](const Edge &e) {
        return options.include_self_loops || e.origin != e.destination;
    };
    for (const Edge &e : edges) {
        if (counts(e)) {
            strength[e.origin] += static_cast<double>(e.weight);
        }
    }

    const double tau = options.tau;
    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> visit(n, uniform);
    std::vector<double> next(n);
    double residual = 0.0;
    int iter = 0;
    for (;;) {
        double jump = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            jump += (strength[a] > 0.0 ? tau : 1.0) * visit[a];
        }
        std::fill(next.begin(), next.end(), jump * uniform);
        for (const Edge &e : edges) {
            if (counts(e)) {
                next[e.destination] += (1.0 - tau) * visit[e.origin] *
                                       static_cast<double>(e.weight) / strength[e.origin];
            }
        }
        // Renormalize against accumulated rounding.
        const double sum = std::accumulate(next.begin(), next.end(), 0.0);
        residual = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            next[a] /= sum;
            residual += std::abs(next[a] - visit[a]);
        }
        ++iter;
        if (residual < options.tol) {
            visit.swap(next);
            break;
        }
        if (iter >= options.max_iter) {
            throw ConvergenceError(
                fmt::format("random walk did not converge in {} iterations (residual {:.3e})",
                            iter, residual),
                residual, iter);
        }
        for (std::size_t a = 0; a < n; ++a) {
            visit[a] = 0.5 * (visit[a] + next[a]);
        }
    }

    FlowState state;
    state.model = FlowModel::random_walk;
    state.tau = tau;
    state.iterations = iter;
    state.residual = residual;
    const double sum = std::accumulate(visit.begin(), visit.end(), 0.0);
    for (double &v : visit) {
        v /= sum;
    }
    state.node_visit = std::move(visit);
    state.edges = edge_skeleton(net);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge &e = edges[k];
        if (counts(e)) {
            state.edges[k].flow = (1.0 - tau) * state.node_visit[e.origin] *
                                  static_cast<double>(e.weight) / strength[e.origin];
        }
    }
    state.teleport_out.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        state.teleport_out[a] = (strength[a] > 0.0 ? tau : 1.0) * state.node_visit[a];
    }
    return state;
}

} // namespace bikeflow
