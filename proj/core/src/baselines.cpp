#include "bikeflow/baselines.hpp"

#include "bikeflow/error.hpp"
#include "bikeflow/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <numeric>

namespace bikeflow {

namespace {

constexpr double kGainEpsilon = 1e-12;

/// Undirected weighted graph on which the modularity methods run.
struct SymmetricGraph {
    struct Neighbour {
        std::uint32_t node;
        double weight;
    };
    std::vector<std::vector<Neighbour>> adjacency; ///< excludes self-loops
    std::vector<double> self_loop;                 ///< A(u,u)
    std::vector<double> strength;                  ///< sum_v A(u,v), self-loop included
    double total = 0.0;                            ///< 2m = sum of strength

    std::size_t size() const { return adjacency.size(); }
};

SymmetricGraph symmetrize(const FlowNetwork &net) {
    const std::size_t n = net.node_count();
    std::vector<std::map<std::uint32_t, double>> merged(n);
    SymmetricGraph g;
    g.self_loop.assign(n, 0.0);
    g.strength.assign(n, 0.0);
    for (const Edge &e : net.edges()) {
        const double w = static_cast<double>(e.weight);
        if (e.origin == e.destination) {
            g.self_loop[e.origin] += 2.0 * w;
        } else {
            merged[e.origin][e.destination] += w;
            merged[e.destination][e.origin] += w;
        }
        g.strength[e.origin] += w;
        g.strength[e.destination] += w;
        g.total += 2.0 * w;
    }
    g.adjacency.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (const auto &[v, w] : merged[u]) {
            g.adjacency[u].push_back({v, w});
        }
    }
    return g;
}

/// One level of Louvain local moves. Returns true if any node moved.
bool local_moves(const SymmetricGraph &g, double resolution, Rng &rng,
                 std::vector<std::uint32_t> &community) {
    const std::size_t n = g.size();
    std::vector<double> tot(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        tot[community[u]] += g.strength[u];
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;

    bool any_move = false;
    for (;;) {
        rng.shuffle(std::span<std::uint32_t>(order));
        std::size_t moves = 0;
        for (std::uint32_t u : order) {
            const double k = g.strength[u];
            if (k == 0.0) {
                continue;
            }
            const std::uint32_t own = community[u];
            for (const auto &nb : g.adjacency[u]) {
                const std::uint32_t c = community[nb.node];
                if (link[c] == 0.0) {
                    touched.push_back(c);
                }
                link[c] += nb.weight;
            }
            tot[own] -= k;
            const auto gain = [&](std::uint32_t c) {
                return link[c] - resolution * tot[c] * k / g.total;
            };
            std::sort(touched.begin(), touched.end());
            std::uint32_t best = own;
            double best_gain = gain(own);
            for (std::uint32_t c : touched) {
                const double gc = gain(c);
                if (c != own && gc > best_gain + kGainEpsilon) {
                    best = c;
                    best_gain = gc;
                }
            }
            for (std::uint32_t c : touched) {
                link[c] = 0.0;
            }
            touched.clear();
            tot[best] += k;
            if (best != own) {
                community[u] = best;
                ++moves;
            }
        }
        if (moves == 0) {
            break;
        }
        any_move = true;
    }
    return any_move;
}

SymmetricGraph aggregate(const SymmetricGraph &g, const std::vector<std::uint32_t> &community,
                         std::size_t count) {
    std::vector<std::map<std::uint32_t, double>> merged(count);
    SymmetricGraph out;
    out.self_loop.assign(count, 0.0);
    out.strength.assign(count, 0.0);
    out.total = g.total;
    for (std::size_t u = 0; u < g.size(); ++u) {
        const std::uint32_t cu = community[u];
        out.self_loop[cu] += g.self_loop[u];
        out.strength[cu] += g.strength[u];
        for (const auto &nb : g.adjacency[u]) {
            const std::uint32_t cv = community[nb.node];
            if (cu == cv) {
                out.self_loop[cu] += nb.weight;
            } else {
                merged[cu][cv] += nb.weight;
            }
        }
    }
    out.adjacency.resize(count);
    for (std::size_t c = 0; c < count; ++c) {
        for (const auto &[d, w] : merged[c]) {
            out.adjacency[c].push_back({d, w});
        }
    }
    return out;
}

/// Renumbers to 0..k-1 in order of first appearance; returns k.
std::size_t renumber(std::vector<std::uint32_t> &community) {
    std::vector<std::uint32_t> map(community.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (auto &c : community) {
        if (map[c] == UINT32_MAX) {
            map[c] = next++;
        }
        c = map[c];
    }
    return next;
}

OptimizationResult finish(const FlowNetwork &net, const SymmetricGraph &g,
                          std::vector<ModuleId> assignment, double resolution, int passes,
                          std::uint64_t seed) {
    OptimizationResult result;
    result.partition = Partition(std::move(assignment)).relabeled_by_mass(g.strength);
    result.objective_kind = ObjectiveKind::modularity;
    result.objective = net.total_weight() == 0
                           ? 0.0
                           : modularity(net, result.partition, resolution).q;
    result.trial_objectives = {result.objective};
    result.trial_traces = {{result.objective}};
    result.sweeps_run = passes;
    result.seed_used = seed;
    return result;
}

} // namespace

ModularityScore modularity(const FlowNetwork &net, const Partition &part, double resolution) {
    if (net.total_weight() == 0) {
        throw ArgumentError("modularity is undefined on a network without edges");
    }
    if (!(resolution > 0.0)) {
        throw ArgumentError("resolution must be positive");
    }
    if (part.node_count() != net.node_count()) {
        throw ArgumentError(fmt::format("partition covers {} nodes, network has {}",
                                        part.node_count(), net.node_count()));
    }
    const std::size_t m = part.module_count();
    std::vector<std::uint64_t> within(m, 0), strength(m, 0);
    for (NodeIndex a = 0; a < net.node_count(); ++a) {
        const std::uint64_t k = net.out_strength(a) + net.in_strength(a);
        if (!part.assigned(a)) {
            if (k > 0) {
                throw ArgumentError(fmt::format("node {} has edges but is unassigned", a));
            }
            continue;
        }
        strength[static_cast<std::size_t>(part.module_of(a))] += k;
    }
    for (const Edge &e : net.edges()) {
        const ModuleId c = part.module_of(e.origin);
        if (c == part.module_of(e.destination)) {
            within[static_cast<std::size_t>(c)] += e.weight;
        }
    }
    const double total = static_cast<double>(net.total_weight());
    double q = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        const double a = static_cast<double>(strength[c]) / (2.0 * total);
        q += static_cast<double>(within[c]) / total - resolution * a * a;
    }
    return ModularityScore{q, resolution};
}

OptimizationResult louvain(const FlowNetwork &net, std::uint64_t seed, double resolution) {
    if (!(resolution > 0.0)) {
        throw ArgumentError("resolution must be positive");
    }
    const std::size_t n = net.node_count();
    if (n == 0) {
        throw ArgumentError("louvain needs a non-empty network");
    }
    const SymmetricGraph base = symmetrize(net);
    Rng rng(derive_seed(seed, 0x10u));

    std::vector<std::uint32_t> node_to_top(n);
    std::iota(node_to_top.begin(), node_to_top.end(), 0u);
    SymmetricGraph level = base;
    int passes = 0;
    if (base.total > 0.0) {
        for (;;) {
            std::vector<std::uint32_t> community(level.size());
            std::iota(community.begin(), community.end(), 0u);
            const bool moved = local_moves(level, resolution, rng, community);
            ++passes;
            if (!moved) {
                break;
            }
            const std::size_t count = renumber(community);
            for (auto &c : node_to_top) {
                c = community[c];
            }
            level = aggregate(level, community, count);
        }
    }
    std::vector<ModuleId> assignment(node_to_top.begin(), node_to_top.end());
    return finish(net, base, std::move(assignment), resolution, passes, seed);
}

OptimizationResult greedy_modularity(const FlowNetwork &net, double resolution) {
    if (!(resolution > 0.0)) {
        throw ArgumentError("resolution must be positive");
    }
    const std::size_t n = net.node_count();
    const SymmetricGraph g = symmetrize(net);

    std::vector<std::map<std::uint32_t, double>> between(n);
    std::vector<double> a(n, 0.0);
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    std::vector<bool> alive(n, true);
    int merges = 0;
    if (g.total > 0.0) {
        const double m = g.total / 2.0;
        for (std::size_t u = 0; u < n; ++u) {
            a[u] = g.strength[u] / g.total;
            for (const auto &nb : g.adjacency[u]) {
                between[u][nb.node] += nb.weight;
            }
        }
        for (;;) {
            double best_gain = kGainEpsilon;
            std::uint32_t bi = 0, bj = 0;
            bool found = false;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (!alive[i]) {
                    continue;
                }
                for (const auto &[j, w] : between[i]) {
                    if (j <= i) {
                        continue;
                    }
                    const double gain = w / m - 2.0 * resolution * a[i] * a[j];
                    if (gain > best_gain) {
                        best_gain = gain;
                        bi = i;
                        bj = j;
                        found = true;
                    }
                }
            }
            if (!found) {
                break;
            }
            // fold bj into bi
            for (const auto &[k, w] : between[bj]) {
                if (k == bi) {
                    continue;
                }
                between[bi][k] += w;
                between[k].erase(bj);
                between[k][bi] += w;
            }
            between[bi].erase(bj);
            between[bj].clear();
            a[bi] += a[bj];
            alive[bj] = false;
            parent[bj] = bi;
            ++merges;
        }
    }
    std::vector<ModuleId> assignment(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        std::uint32_t r = u;
        while (parent[r] != r) {
            r = parent[r];
        }
        assignment[u] = static_cast<ModuleId>(r);
    }
    return finish(net, g, std::move(assignment), resolution, merges, 0);
}

} // namespace bikeflow
