#include "fixtures.hpp"

#include "bikeflow/random.hpp"

#include <chrono>
#include <cmath>

namespace bikeflow::testing {

FlowNetwork make_network(std::size_t n,
                         const std::vector<std::tuple<NodeIndex, NodeIndex, std::uint64_t>> &edges) {
    std::vector<Edge> list;
    for (const auto &[a, b, w] : edges) {
        list.push_back(Edge{a, b, w});
    }
    return FlowNetwork(numbered_stations(n, false), std::move(list));
}

std::uint64_t poisson(Rng &rng, double mean) {
    // Knuth's multiplication method; means here are small.
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = rng.uniform();
    while (p > limit) {
        ++k;
        p *= rng.uniform();
    }
    return k;
}

std::vector<NamedNetwork> small_fixtures() {
    std::vector<NamedNetwork> out;
    out.push_back({"two_cycle", make_network(2, {{0, 1, 1}, {1, 0, 1}})});
    out.push_back({"two_two_cycles", make_network(4, {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}, {3, 2, 1}})});
    out.push_back({"four_cycle", make_network(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}})});
    out.push_back({"hub", make_network(3, {{0, 1, 1}, {0, 2, 1}, {1, 0, 1}, {2, 0, 1}})});
    out.push_back({"star_in_out",
                   make_network(5, {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {0, 3, 3},
                                    {3, 0, 1}, {4, 0, 2}, {0, 4, 2}})});
    out.push_back({"triangles_bridge",
                   make_network(6, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {3, 4, 3}, {4, 5, 3},
                                    {5, 3, 3}, {2, 3, 1}, {3, 2, 1}})});
    out.push_back({"self_loops",
                   make_network(4, {{0, 0, 4}, {0, 1, 2}, {1, 0, 2}, {2, 3, 1}, {3, 2, 1},
                                    {1, 2, 1}, {3, 3, 2}})});
    {
        std::vector<std::tuple<NodeIndex, NodeIndex, std::uint64_t>> e;
        for (NodeIndex a = 0; a < 4; ++a) {
            for (NodeIndex b = 0; b < 4; ++b) {
                if (a != b) {
                    e.emplace_back(a, b, 2);
                    e.emplace_back(a + 4, b + 4, 2);
                }
            }
        }
        e.emplace_back(3, 4, 1);
        e.emplace_back(4, 3, 1);
        out.push_back({"cliques_bridge", make_network(8, e)});
    }
    {
        // chain with a sink at the end
        out.push_back({"chain_sink",
                       make_network(5, {{0, 1, 2}, {1, 2, 2}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}})});
    }
    // seeded random strongly-weighted digraphs
    const std::size_t sizes[] = {5, 6, 7, 8, 8};
    std::uint64_t seed = 7;
    for (std::size_t n : sizes) {
        Rng rng(seed++);
        std::vector<std::tuple<NodeIndex, NodeIndex, std::uint64_t>> e;
        for (NodeIndex a = 0; a < n; ++a) {
            for (NodeIndex b = 0; b < n; ++b) {
                if (a != b && rng.uniform() < 0.35) {
                    e.emplace_back(a, b, 1 + rng.below(5));
                }
            }
            // keep every node on a cycle through its successor
            e.emplace_back(a, static_cast<NodeIndex>((a + 1) % n), 1);
        }
        out.push_back({"random_" + std::to_string(n) + "_" + std::to_string(seed - 1),
                       make_network(n, e)});
    }
    return out;
}

PlantedGraph planted_partition(std::uint64_t seed, std::size_t groups, std::size_t group_size,
                               double within_mean, double ratio) {
    const std::size_t n = groups * group_size;
    Rng rng(seed);
    std::vector<Edge> edges;
    std::vector<ModuleId> truth(n);
    for (std::size_t u = 0; u < n; ++u) {
        truth[u] = static_cast<ModuleId>(u / group_size);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) {
                continue;
            }
            const double mean = truth[u] == truth[v] ? within_mean : within_mean / ratio;
            const std::uint64_t w = poisson(rng, mean);
            if (w > 0) {
                edges.push_back(Edge{static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), w});
            }
        }
    }
    return {FlowNetwork(numbered_stations(n, false), std::move(edges)),
            Partition(std::move(truth))};
}

std::vector<Station> numbered_stations(std::size_t n, bool with_coordinates) {
    std::vector<Station> out;
    for (std::size_t i = 0; i < n; ++i) {
        Station s;
        s.id = static_cast<StationId>(i + 1);
        s.name = "Station " + std::to_string(i + 1);
        if (with_coordinates) {
            s.coord = Coordinate{51.5 + 0.001 * static_cast<double>(i % 17),
                                 -0.12 + 0.002 * static_cast<double>(i / 17)};
        }
        out.push_back(std::move(s));
    }
    return out;
}

Timestamp weekday_time(int day, int hour, int minute) {
    using namespace std::chrono;
    // 2 June 2014 was a Monday
    const int week = day / 5;
    const int offset = day % 5;
    const sys_days date = sys_days{year{2014} / June / 2} + days{7 * week + offset};
    return Timestamp{date} + hours{hour} + minutes{minute};
}

namespace {

TripRecord make_trip(std::int64_t id, const Station &a, const Station &b, Timestamp start) {
    TripRecord t;
    t.rental_id = id;
    t.duration = 600;
    t.bike_id = 1000 + id % 97;
    t.start_time = start;
    t.end_time = start + std::chrono::minutes{10};
    t.start_station_id = a.id;
    t.end_station_id = b.id;
    t.start_station_name = a.name;
    t.end_station_name = b.name;
    return t;
}

} // namespace

TripCorpus two_community_all_hours(std::uint64_t seed) {
    constexpr std::size_t group = 8;
    TripCorpus corpus;
    corpus.stations = numbered_stations(2 * group);
    std::vector<ModuleId> truth(2 * group);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        truth[i] = static_cast<ModuleId>(i / group);
    }
    corpus.truth = Partition(truth);
    Rng rng(seed);
    std::int64_t id = 1;
    for (int hour = 0; hour < 24; ++hour) {
        for (std::size_t u = 0; u < 2 * group; ++u) {
            for (std::size_t v = 0; v < 2 * group; ++v) {
                if (u == v) {
                    continue;
                }
                const bool same = truth[u] == truth[v];
                const std::uint64_t count = same ? 2 + rng.below(2) : (rng.below(20) == 0 ? 1 : 0);
                for (std::uint64_t k = 0; k < count; ++k) {
                    const int minute = static_cast<int>(rng.below(60));
                    const int day = static_cast<int>(rng.below(10));
                    corpus.trips.push_back(make_trip(id++, corpus.stations[u], corpus.stations[v],
                                                     weekday_time(day, hour, minute)));
                }
            }
        }
    }
    return corpus;
}

TripCorpus peak_merge_corpus(std::uint64_t seed) {
    constexpr std::size_t groups = 4;
    constexpr std::size_t group = 10;
    constexpr std::size_t n = groups * group;
    TripCorpus corpus;
    corpus.stations = numbered_stations(n);
    std::vector<ModuleId> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        truth[i] = static_cast<ModuleId>(i / group);
    }
    corpus.truth = Partition(truth);
    Rng rng(seed);
    std::int64_t id = 1;
    auto add = [&](std::size_t u, std::size_t v, int hour) {
        const int minute = static_cast<int>(rng.below(60));
        const int day = static_cast<int>(rng.below(10));
        corpus.trips.push_back(make_trip(id++, corpus.stations[u], corpus.stations[v],
                                         weekday_time(day, hour, minute)));
    };
    for (int hour = 0; hour < 24; ++hour) {
        const bool peak = hour >= 7 && hour <= 9;
        const bool daytime = hour >= 10 && hour <= 19;
        if (peak) {
            // commuting peak: heavy flow with no group preference
            for (std::size_t u = 0; u < n; ++u) {
                for (int k = 0; k < 30; ++k) {
                    std::size_t v = rng.below(n);
                    if (v == u) {
                        v = (v + 1) % n;
                    }
                    add(u, v, hour);
                }
            }
        } else if (daytime) {
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v) {
                    if (u == v) {
                        continue;
                    }
                    const std::uint64_t count =
                        truth[u] == truth[v] ? 2 + rng.below(3) : (rng.below(25) == 0 ? 1 : 0);
                    for (std::uint64_t k = 0; k < count; ++k) {
                        add(u, v, hour);
                    }
                }
            }
        } else {
            for (int k = 0; k < 6; ++k) {
                add(rng.below(n), rng.below(n), hour);
            }
        }
    }
    return corpus;
}

} // namespace bikeflow::testing
