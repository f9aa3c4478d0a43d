#include "bikeflow/map_equation.hpp"

#include "bikeflow/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace bikeflow {

double plogp(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

namespace {

void check_sizes(const FlowState &flow, const Partition &part) {
    if (part.node_count() != flow.node_count()) {
        throw ArgumentError(fmt::format("partition covers {} nodes, flow has {}",
                                        part.node_count(), flow.node_count()));
    }
    for (std::size_t a = 0; a < part.node_count(); ++a) {
        if (!part.assigned(a) && flow.node_visit[a] > 0.0) {
            throw ArgumentError(
                fmt::format("node {} carries flow {} but is unassigned", a, flow.node_visit[a]));
        }
    }
}

double teleport_exit(double teleport, std::size_t members, std::size_t n) {
    if (teleport <= 0.0) {
        return 0.0;
    }
    return teleport * static_cast<double>(n - members) / static_cast<double>(n);
}

} // namespace

ModuleFlow module_flows(const FlowState &flow, const Partition &part) {
    check_sizes(flow, part);
    const std::size_t m = part.module_count();
    const std::size_t n = flow.node_count();
    ModuleFlow out;
    out.exit.assign(m, 0.0);
    out.visit.assign(m, 0.0);
    out.stay.assign(m, 0.0);

    std::vector<double> teleport(m, 0.0);
    std::vector<std::size_t> members(m, 0);
    for (std::size_t a = 0; a < n; ++a) {
        const ModuleId id = part.module_of(a);
        if (id == kUnassigned) {
            continue;
        }
        const auto i = static_cast<std::size_t>(id);
        out.visit[i] += flow.node_visit[a];
        teleport[i] += flow.teleport_out[a];
        ++members[i];
    }
    for (const FlowEdge &e : flow.edges) {
        const ModuleId from = part.module_of(e.origin);
        if (from != kUnassigned && part.module_of(e.destination) != from) {
            out.exit[static_cast<std::size_t>(from)] += e.flow;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        out.exit[i] += teleport_exit(teleport[i], members[i], n);
        out.stay[i] = out.exit[i] + out.visit[i];
        out.total_exit += out.exit[i];
    }
    return out;
}

double codelength(const FlowState &flow, const Partition &part) {
    const ModuleFlow mf = module_flows(flow, part);
    double node_term = 0.0;
    for (std::size_t a = 0; a < flow.node_count(); ++a) {
        if (part.assigned(a)) {
            node_term += plogp(flow.node_visit[a]);
        }
    }
    double exit_term = 0.0;
    double stay_term = 0.0;
    for (std::size_t i = 0; i < mf.exit.size(); ++i) {
        exit_term += plogp(mf.exit[i]);
        stay_term += plogp(mf.stay[i]);
    }
    return std::max(0.0, plogp(mf.total_exit) - 2.0 * exit_term - node_term + stay_term);
}

double codelength_delta(const FlowState &flow, const Partition &part, NodeIndex node,
                        ModuleId target) {
    if (node >= part.node_count()) {
        throw ArgumentError(fmt::format("node index {} out of range", node));
    }
    if (!part.assigned(node)) {
        throw ArgumentError(fmt::format("node {} is unassigned", node));
    }
    if (target < 0 || static_cast<std::size_t>(target) > part.module_count()) {
        throw ArgumentError(fmt::format("invalid module id {}", target));
    }
    if (target == part.module_of(node)) {
        return 0.0;
    }
    const MapEquationState state(flow, part);
    return state.delta(node, target);
}

// ---------------------------------------------------------------------------

MapEquationState::MapEquationState(const FlowState &flow, const Partition &part)
    : visit_(flow.node_visit), teleport_(flow.teleport_out),
      members_(flow.node_count(), 1), universe_(flow.node_count()),
      assignment_(part.assignment().begin(), part.assignment().end()) {
    check_sizes(flow, part);
    modules_.resize(std::max(universe_, part.module_count()) + 1);
    node_term_ = 0.0;
    for (std::size_t a = 0; a < universe_; ++a) {
        if (assignment_[a] != kUnassigned) {
            node_term_ += plogp(visit_[a]);
        }
    }
    std::vector<std::tuple<NodeIndex, NodeIndex, double>> links;
    links.reserve(flow.edges.size());
    for (const FlowEdge &e : flow.edges) {
        links.emplace_back(e.origin, e.destination, e.flow);
    }
    index_links(links);
    recompute();
}

void MapEquationState::index_links(std::vector<std::tuple<NodeIndex, NodeIndex, double>> &links) {
    const std::size_t n = assignment_.size();
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    out_flow_.assign(n, 0.0);
    std::erase_if(links, [](const auto &l) {
        return std::get<0>(l) == std::get<1>(l) || !(std::get<2>(l) > 0.0);
    });
    for (const auto &[from, to, f] : links) {
        ++out_offsets_[from + 1];
        ++in_offsets_[to + 1];
        out_flow_[from] += f;
    }
    for (std::size_t a = 0; a < n; ++a) {
        out_offsets_[a + 1] += out_offsets_[a];
        in_offsets_[a + 1] += in_offsets_[a];
    }
    out_links_.resize(out_offsets_[n]);
    in_links_.resize(in_offsets_[n]);
    std::vector<std::uint32_t> oc(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::uint32_t> ic(in_offsets_.begin(), in_offsets_.end() - 1);
    for (const auto &[from, to, f] : links) {
        out_links_[oc[from]++] = Link{to, f};
        in_links_[ic[to]++] = Link{from, f};
    }
}

MapEquationState MapEquationState::coarsened() const {
    const Partition compact = partition().compacted();
    const std::size_t k = compact.module_count();
    MapEquationState next;
    next.visit_.assign(k, 0.0);
    next.teleport_.assign(k, 0.0);
    next.members_.assign(k, 0);
    next.leak_.assign(k, 0.0);
    next.universe_ = universe_;
    next.node_term_ = node_term_;
    for (std::size_t u = 0; u < assignment_.size(); ++u) {
        const ModuleId m = compact.module_of(u);
        if (m == kUnassigned) {
            continue;
        }
        const auto i = static_cast<std::size_t>(m);
        next.visit_[i] += visit_[u];
        next.teleport_[i] += teleport_[u];
        next.members_[i] += members_[u];
        if (!leak_.empty()) {
            next.leak_[i] += leak_[u];
        }
    }
    // Sum flow between distinct modules; links are sorted so equal pairs merge.
    std::vector<std::tuple<NodeIndex, NodeIndex, double>> links;
    for (std::size_t u = 0; u < assignment_.size(); ++u) {
        const ModuleId from = compact.module_of(u);
        if (from == kUnassigned) {
            continue;
        }
        for (const Link &l : out_links(static_cast<NodeIndex>(u))) {
            const ModuleId to = compact.module_of(l.neighbor);
            if (to == kUnassigned) {
                next.leak_[static_cast<std::size_t>(from)] += l.flow;
            } else if (to != from) {
                links.emplace_back(static_cast<NodeIndex>(from), static_cast<NodeIndex>(to),
                                   l.flow);
            }
        }
    }
    std::sort(links.begin(), links.end(), [](const auto &x, const auto &y) {
        return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
    });
    std::vector<std::tuple<NodeIndex, NodeIndex, double>> merged;
    for (const auto &l : links) {
        if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(l) &&
            std::get<1>(merged.back()) == std::get<1>(l)) {
            std::get<2>(merged.back()) += std::get<2>(l);
        } else {
            merged.push_back(l);
        }
    }
    next.assignment_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        next.assignment_[i] = static_cast<ModuleId>(i);
    }
    next.modules_.resize(k + 1);
    next.index_links(merged);
    for (std::size_t i = 0; i < k; ++i) {
        next.out_flow_[i] += next.leak_[i];
    }
    next.recompute();
    return next;
}

std::span<const MapEquationState::Link> MapEquationState::out_links(NodeIndex node) const {
    return std::span<const Link>(out_links_)
        .subspan(out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]);
}

std::span<const MapEquationState::Link> MapEquationState::in_links(NodeIndex node) const {
    return std::span<const Link>(in_links_)
        .subspan(in_offsets_[node], in_offsets_[node + 1] - in_offsets_[node]);
}

double MapEquationState::exit_of(const ModuleSums &m) const {
    if (m.members == 0) {
        return 0.0;
    }
    return std::max(0.0, m.exit_edges) + teleport_exit(m.teleport, m.members, universe_);
}

void MapEquationState::recompute() {
    for (ModuleSums &m : modules_) {
        m = ModuleSums{};
    }
    for (std::size_t a = 0; a < assignment_.size(); ++a) {
        const ModuleId id = assignment_[a];
        if (id == kUnassigned) {
            continue;
        }
        ModuleSums &m = modules_[static_cast<std::size_t>(id)];
        m.visit += visit_[a];
        m.teleport += teleport_[a];
        m.members += members_[a];
        if (!leak_.empty()) {
            m.exit_edges += leak_[a];
        }
        for (const Link &l : out_links(static_cast<NodeIndex>(a))) {
            if (assignment_[l.neighbor] != id) {
                m.exit_edges += l.flow;
            }
        }
    }
    sum_exit_plogp_ = 0.0;
    sum_stay_plogp_ = 0.0;
    total_exit_ = 0.0;
    for (const ModuleSums &m : modules_) {
        const double q = exit_of(m);
        sum_exit_plogp_ += plogp(q);
        sum_stay_plogp_ += plogp(q + m.visit);
        total_exit_ += q;
    }
}

double MapEquationState::codelength() const {
    return std::max(0.0,
                    plogp(total_exit_) - 2.0 * sum_exit_plogp_ - node_term_ + sum_stay_plogp_);
}

void MapEquationState::check_target(ModuleId target) const {
    if (target < 0 || static_cast<std::size_t>(target) >= modules_.size()) {
        throw ArgumentError(fmt::format("invalid module id {}", target));
    }
}

MapEquationState::Linkage MapEquationState::linkage(NodeIndex node, ModuleId target) const {
    Linkage link;
    const ModuleId source = assignment_[node];
    for (const Link &l : out_links(node)) {
        const ModuleId m = assignment_[l.neighbor];
        if (m == source) {
            link.out_to_source += l.flow;
        } else if (m == target) {
            link.out_to_target += l.flow;
        }
    }
    for (const Link &l : in_links(node)) {
        const ModuleId m = assignment_[l.neighbor];
        if (m == source) {
            link.in_from_source += l.flow;
        } else if (m == target) {
            link.in_from_target += l.flow;
        }
    }
    return link;
}

double MapEquationState::delta(NodeIndex node, ModuleId target, const Linkage &link) const {
    check_target(target);
    const ModuleId source = assignment_[node];
    if (source == kUnassigned) {
        throw ArgumentError(fmt::format("node {} is unassigned", node));
    }
    if (source == target) {
        return 0.0;
    }
    const ModuleSums &a = modules_[static_cast<std::size_t>(source)];
    const ModuleSums &b = modules_[static_cast<std::size_t>(target)];
    const double p = visit_[node];
    const double t = teleport_[node];
    const double out = out_flow_[node];
    const std::size_t w = members_[node];

    ModuleSums a2 = a;
    a2.exit_edges = a.exit_edges - (out - link.out_to_source) + link.in_from_source;
    a2.teleport = a.teleport - t;
    a2.visit = a.visit - p;
    a2.members = a.members - w;
    if (a2.members == 0) {
        a2 = ModuleSums{};
    }
    ModuleSums b2 = b;
    b2.exit_edges = b.exit_edges + (out - link.out_to_target) - link.in_from_target;
    b2.teleport = b.teleport + t;
    b2.visit = b.visit + p;
    b2.members = b.members + w;

    const double qa = exit_of(a), qb = exit_of(b);
    const double qa2 = exit_of(a2), qb2 = exit_of(b2);
    const double total2 = total_exit_ - qa - qb + qa2 + qb2;

    const double d_index = plogp(total2) - plogp(total_exit_);
    const double d_exit = plogp(qa2) + plogp(qb2) - plogp(qa) - plogp(qb);
    const double d_stay = plogp(qa2 + std::max(0.0, a2.visit)) + plogp(qb2 + b2.visit) -
                          plogp(qa + a.visit) - plogp(qb + b.visit);
    return d_index - 2.0 * d_exit + d_stay;
}

void MapEquationState::move(NodeIndex node, ModuleId target, const Linkage &link) {
    check_target(target);
    const ModuleId source = assignment_[node];
    if (source == kUnassigned || source == target) {
        return;
    }
    ModuleSums &a = modules_[static_cast<std::size_t>(source)];
    ModuleSums &b = modules_[static_cast<std::size_t>(target)];
    const double qa = exit_of(a), qb = exit_of(b);
    sum_exit_plogp_ -= plogp(qa) + plogp(qb);
    sum_stay_plogp_ -= plogp(qa + a.visit) + plogp(qb + b.visit);
    total_exit_ -= qa + qb;

    const double p = visit_[node];
    const double t = teleport_[node];
    const double out = out_flow_[node];
    const std::size_t w = members_[node];
    a.exit_edges += -(out - link.out_to_source) + link.in_from_source;
    a.teleport -= t;
    a.visit -= p;
    a.members -= w;
    if (a.members == 0) {
        a = ModuleSums{};
    }
    b.exit_edges += (out - link.out_to_target) - link.in_from_target;
    b.teleport += t;
    b.visit += p;
    b.members += w;
    assignment_[node] = target;

    const double qa2 = exit_of(a), qb2 = exit_of(b);
    sum_exit_plogp_ += plogp(qa2) + plogp(qb2);
    sum_stay_plogp_ += plogp(qa2 + std::max(0.0, a.visit)) + plogp(qb2 + b.visit);
    total_exit_ += qa2 + qb2;
}

} // namespace bikeflow
