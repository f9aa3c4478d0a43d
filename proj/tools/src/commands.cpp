#include "commands.hpp"

#include "manifest.hpp"

#include "bikeflow/analytics.hpp"
#include "bikeflow/baselines.hpp"
#include "bikeflow/dynamics.hpp"
#include "bikeflow/error.hpp"
#include "bikeflow/exports.hpp"
#include "bikeflow/flow_network.hpp"
#include "bikeflow/flow_solver.hpp"
#include "bikeflow/infomap.hpp"
#include "bikeflow/map_equation.hpp"
#include "bikeflow/partition_compare.hpp"
#include "bikeflow/trip_ingest.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace bikeflow::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxReportedRowErrors = 20;

/// Rounds to the precision used in text outputs so manifests agree with them.
double rounded(double x) {
    return std::strtod(format_number(x).c_str(), nullptr);
}

/// Re-raises library errors with the offending file named.
template <class F>
auto with_file(const fs::path &path, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError &e) {
        throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const IngestError &e) {
        throw IngestError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

struct Loaded {
    std::string content;
    std::istringstream stream() const { return std::istringstream(content); }
};

Loaded load(Manifest &manifest, const std::string &role, const fs::path &path) {
    Loaded l{read_file(path)};
    manifest.input(role, path, l.content);
    return l;
}

std::vector<Station> load_stations(Manifest &manifest, const fs::path &path) {
    const Loaded l = load(manifest, "stations", path);
    auto in = l.stream();
    return with_file(path, [&] { return read_stations(in); });
}

IngestConfig load_config(Manifest &manifest, const std::optional<fs::path> &path) {
    if (!path) {
        return {};
    }
    const Loaded l = load(manifest, "config", *path);
    auto in = l.stream();
    return with_file(*path, [&] { return parse_ingest_config(in); });
}

FlowNetwork load_network(Manifest &manifest, const fs::path &path,
                         std::optional<std::vector<Station>> stations) {
    const Loaded l = load(manifest, "network", path);
    auto in = l.stream();
    return with_file(path, [&] { return read_edge_list(in, std::move(stations)); });
}

struct CleanedCorpus {
    std::vector<TripRecord> trips;
    CleaningStats stats;
    std::vector<RowError> row_errors;
};

CleanedCorpus load_trips(Manifest &manifest, const fs::path &path, const IngestConfig &config,
                         std::ostream &err) {
    const Loaded l = load(manifest, "trips", path);
    auto in = l.stream();
    ParseResult parsed = with_file(path, [&] { return parse_trips(in, config.columns); });
    for (std::size_t i = 0; i < parsed.errors.size() && i < kMaxReportedRowErrors; ++i) {
        err << fmt::format("warning: {}:{}: {}\n", path.string(), parsed.errors[i].line,
                           parsed.errors[i].message);
    }
    if (parsed.errors.size() > kMaxReportedRowErrors) {
        err << fmt::format("warning: {}: {} more rows skipped\n", path.string(),
                           parsed.errors.size() - kMaxReportedRowErrors);
    }
    CleanResult cleaned = clean_trips(parsed.trips, config.cleaning);
    return {std::move(cleaned.trips), cleaned.stats, std::move(parsed.errors)};
}

template <class Writer>
std::string render(Writer &&write) {
    std::ostringstream out;
    write(out);
    return out.str();
}

ordered_json walk_json(FlowModel model, double tau) {
    ordered_json j;
    j["flow_model"] = std::string(to_string(model));
    if (model == FlowModel::random_walk) {
        j["tau"] = tau;
    }
    return j;
}

FlowState compute_flow(const FlowNetwork &net, FlowModel model, double tau) {
    if (model == FlowModel::empirical) {
        return empirical_flow(net);
    }
    RandomWalkOptions opt;
    opt.tau = tau;
    return random_walk_flow(net, opt);
}

ordered_json result_json(const std::string &method, const OptimizationResult &r) {
    ordered_json j;
    j["method"] = method;
    j["modules"] = r.module_count();
    j["objective"] = rounded(r.objective);
    j["objective_kind"] = std::string(to_string(r.objective_kind));
    j["sweeps"] = r.sweeps_run;
    if (r.objective_kind == ObjectiveKind::codelength_bits) {
        ordered_json trials = ordered_json::array();
        for (double L : r.trial_objectives) {
            trials.push_back(rounded(L));
        }
        j["trial_codelengths"] = std::move(trials);
        j["best_trial"] = r.best_trial;
    }
    return j;
}

// Shared option bundles ------------------------------------------------------

struct WalkFlags {
    std::string model = "empirical";
    double tau = 0.15;

    void attach(CLI::App &app) {
        app.add_option("--flow-model", model, "empirical | random_walk")
            ->check(CLI::IsMember({"empirical", "random_walk"}))
            ->capture_default_str();
        app.add_option("--tau", tau, "teleportation probability of the random walk")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    }
    FlowModel flow_model() const { return parse_flow_model(model); }
};

struct OptimizerFlags {
    std::uint64_t seed = 1;
    int trials = 10;
    int max_sweeps = 100;
    bool flat = false;

    void attach(CLI::App &app) {
        app.add_option("--seed", seed, "random seed")->capture_default_str();
        app.add_option("--trials", trials, "independent optimizer restarts")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app.add_option("--max-sweeps", max_sweeps, "sweep limit per level")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app.add_flag("--flat", flat, "node moves only, no module coarsening");
    }
    OptimizerConfig config() const {
        OptimizerConfig c;
        c.seed = seed;
        c.trials = trials;
        c.max_sweeps = max_sweeps;
        c.coarsen = !flat;
        return c;
    }
    void record(ordered_json &j) const {
        j["seed"] = seed;
        j["trials"] = trials;
        j["max_sweeps"] = max_sweeps;
        j["coarsen"] = !flat;
    }
};

// ingest ---------------------------------------------------------------------

struct IngestArgs {
    fs::path trips, stations, out;
    std::optional<fs::path> config;
};

void cmd_ingest(const IngestArgs &a, std::ostream &out, std::ostream &err) {
    Manifest manifest("ingest");
    StagedOutputs outputs(a.out);
    const IngestConfig config = load_config(manifest, a.config);
    std::vector<Station> stations = load_stations(manifest, a.stations);
    CleanedCorpus corpus;
    {
        Manifest::Stage s(manifest, "clean");
        corpus = load_trips(manifest, a.trips, config, err);
    }
    std::optional<FlowNetwork> net;
    {
        Manifest::Stage s(manifest, "network");
        net.emplace(with_file(a.stations, [&] { return build_network(corpus.trips, stations); }));
    }
    std::size_t active = 0;
    for (NodeIndex i = 0; i < net->node_count(); ++i) {
        active += net->out_strength(i) + net->in_strength(i) > 0 ? 1 : 0;
    }

    const CleaningStats &st = corpus.stats;
    ordered_json stats;
    stats["rows_read"] = st.total_read + corpus.row_errors.size();
    stats["rows_unparseable"] = corpus.row_errors.size();
    stats["total_read"] = st.total_read;
    stats["dropped_repair"] = st.dropped_repair;
    stats["dropped_negative_or_no_destination"] = st.dropped_negative_or_no_destination;
    stats["dropped_no_bike_id"] = st.dropped_no_bike_id;
    stats["dropped_weekend"] = st.dropped_weekend;
    stats["dropped_total"] = st.dropped_total();
    stats["retained"] = st.retained;
    stats["stations_listed"] = net->node_count();
    stats["stations_active"] = active;
    stats["od_pairs"] = net->edge_count();
    stats["total_trips"] = net->total_weight();

    manifest.config()["drop_weekends"] = config.cleaning.drop_weekends;
    manifest.config()["repair_station_ids"] = config.cleaning.repair_station_ids;
    manifest.results() = stats;

    outputs.add("trips_clean.csv", render([&](std::ostream &o) { write_trips(o, corpus.trips); }));
    outputs.add("edges.csv", render([&](std::ostream &o) { write_edge_list(o, *net); }));
    outputs.add("cleaning_stats.json", stats.dump(2) + "\n");
    manifest.finish(outputs);
    outputs.commit();
    out << fmt::format("retained {} of {} trips ({} dropped), {} active of {} stations\n",
                       st.retained, st.total_read, st.dropped_total(), active, net->node_count());
}

// detect ---------------------------------------------------------------------

struct DetectArgs {
    fs::path network, out;
    std::optional<fs::path> stations;
    std::string method = "infomap";
    double resolution = 1.0;
    WalkFlags walk;
    OptimizerFlags opt;
};

void cmd_detect(const DetectArgs &a, std::ostream &out) {
    Manifest manifest("detect");
    StagedOutputs outputs(a.out);
    std::optional<std::vector<Station>> stations;
    if (a.stations) {
        stations = load_stations(manifest, *a.stations);
    }
    const FlowNetwork net = load_network(manifest, a.network, std::move(stations));

    const std::vector<std::string> methods =
        a.method == "all" ? std::vector<std::string>{"infomap", "louvain", "greedy"}
                          : std::vector<std::string>{a.method};
    manifest.config()["methods"] = methods;
    manifest.config().update(walk_json(a.walk.flow_model(), a.walk.tau));
    a.opt.record(manifest.config());
    manifest.config()["resolution"] = a.resolution;

    std::vector<std::pair<std::string, OptimizationResult>> results;
    for (const std::string &method : methods) {
        if (method == "infomap") {
            FlowState flow;
            {
                Manifest::Stage s(manifest, "flow");
                flow = compute_flow(net, a.walk.flow_model(), a.walk.tau);
            }
            if (flow.model == FlowModel::random_walk) {
                manifest.results()["walk_iterations"] = flow.iterations;
                manifest.results()["walk_residual"] = flow.residual;
            }
            Manifest::Stage s(manifest, "infomap");
            results.emplace_back(method, infomap(flow, net, a.opt.config()));
            outputs.add("flow.csv", render([&](std::ostream &o) { write_flow(o, net, flow); }));
        } else if (method == "louvain") {
            Manifest::Stage s(manifest, "louvain");
            results.emplace_back(method, louvain(net, a.opt.seed, a.resolution));
        } else {
            Manifest::Stage s(manifest, "greedy");
            results.emplace_back(method, greedy_modularity(net, a.resolution));
        }
    }

    ordered_json summary = ordered_json::array();
    for (const auto &[method, r] : results) {
        const std::string name = results.size() == 1 ? "partition.csv" : "partition_" + method + ".csv";
        outputs.add(name, render([&](std::ostream &o) { write_partition(o, net, r.partition); }));
        summary.push_back(result_json(method, r));
        out << fmt::format("{}: {} modules, {} = {}\n", method, r.module_count(),
                           to_string(r.objective_kind), format_number(r.objective));
    }
    manifest.results()["methods"] = std::move(summary);

    if (results.size() > 1) {
        std::vector<ComparisonRow> rows;
        ordered_json nmi = ordered_json::object();
        for (const auto &[method, r] : results) {
            const auto s = compare_partitions(r.partition, results.front().second.partition);
            rows.push_back({method, r.module_count(), r.objective, r.objective_kind, s.nmi, s.ari});
            for (const auto &[other, r2] : results) {
                nmi[method][other] = rounded(compare_partitions(r.partition, r2.partition).nmi);
            }
        }
        manifest.results()["pairwise_nmi"] = std::move(nmi);
        outputs.add("comparison.csv", render([&](std::ostream &o) { write_comparison(o, rows); }));
    }
    manifest.finish(outputs);
    outputs.commit();
}

// report ---------------------------------------------------------------------

struct ReportArgs {
    fs::path network, partition, stations, out;
};

void cmd_report(const ReportArgs &a, std::ostream &out) {
    Manifest manifest("report");
    StagedOutputs outputs(a.out);
    const FlowNetwork net = load_network(manifest, a.network, load_stations(manifest, a.stations));
    const Loaded pl = load(manifest, "partition", a.partition);
    auto pin = pl.stream();
    const Partition part = with_file(a.partition, [&] { return read_partition(pin, net); });

    Manifest::Stage s(manifest, "analytics");
    const InteractionTable table = interaction_table(net, part);
    std::uint64_t within = 0, out_sum = 0, in_sum = 0;
    for (const auto &row : table.rows) {
        within += row.within;
        out_sum += row.out;
        in_sum += row.in;
    }
    if (within + out_sum != net.total_weight() || out_sum != in_sum) {
        throw Error(fmt::format("interaction table does not reconcile: within {} + out {} vs {} "
                                "trips, out {} vs in {}",
                                within, out_sum, net.total_weight(), out_sum, in_sum));
    }
    const double containment = self_containment(table);
    const CommunityGraph graph = community_graph(net, part);

    manifest.config()["within_includes_self_loops"] = true;
    manifest.results()["modules"] = table.module_count;
    manifest.results()["unassigned_stations"] = table.has_residual ? table.rows.back().stations : 0;
    manifest.results()["total_trips"] = table.total_trips;
    manifest.results()["self_containment"] = rounded(containment);
    manifest.results()["modules_without_centroid"] = graph.unlocated();

    outputs.add("interaction_table.csv",
                render([&](std::ostream &o) { write_interaction_table(o, table); }));
    outputs.add("community_edges.csv",
                render([&](std::ostream &o) { write_community_edges(o, graph); }));
    outputs.add("communities.geojson",
                render([&](std::ostream &o) { write_community_geojson(o, graph); }));
    manifest.finish(outputs);
    outputs.commit();
    out << fmt::format("{} modules, self-containment {}\n", table.module_count,
                       format_number(containment));
}

// dynamics -------------------------------------------------------------------

struct DynamicsArgs {
    fs::path trips, stations, out;
    std::optional<fs::path> config;
    std::uint64_t min_flow = 1;
    WalkFlags walk;
    OptimizerFlags opt;
};

void cmd_dynamics(const DynamicsArgs &a, std::ostream &out, std::ostream &err) {
    Manifest manifest("dynamics");
    StagedOutputs outputs(a.out);
    const IngestConfig config = load_config(manifest, a.config);
    const std::vector<Station> stations = load_stations(manifest, a.stations);
    const CleanedCorpus corpus = load_trips(manifest, a.trips, config, err);

    DynamicsOptions opt;
    opt.optimizer = a.opt.config();
    opt.min_flow = a.min_flow;
    opt.model = a.walk.flow_model();
    opt.walk.tau = a.walk.tau;
    manifest.config()["min_flow"] = a.min_flow;
    manifest.config()["hour_seed"] = "seed xor hour";
    manifest.config()["drop_weekends"] = config.cleaning.drop_weekends;
    manifest.config().update(walk_json(opt.model, a.walk.tau));
    a.opt.record(manifest.config());

    HourlyAssignment hourly;
    {
        Manifest::Stage s(manifest, "hourly");
        hourly = with_file(a.stations, [&] { return hourly_communities(corpus.trips, stations, opt); });
    }
    ordered_json similarity = ordered_json::array();
    for (int h = 0; h < kHoursPerDay; ++h) {
        const auto s = column_similarity(hourly.hours[h].labels,
                                         hourly.hours[(h + 1) % kHoursPerDay].labels);
        similarity.push_back(s.insufficient_overlap ? ordered_json(nullptr) : ordered_json(rounded(s.nmi)));
    }
    manifest.results()["trips"] = corpus.trips.size();
    manifest.results()["next_hour_nmi"] = std::move(similarity);

    outputs.add("hourly_modules.csv", render([&](std::ostream &o) { write_hourly_matrix(o, hourly); }));
    outputs.add("hourly_summary.csv", render([&](std::ostream &o) { write_hourly_summary(o, hourly); }));
    manifest.finish(outputs);
    outputs.commit();
    out << fmt::format("{} trips over {} stations in 24 hourly slices\n", corpus.trips.size(),
                       stations.size());
}

// compare --------------------------------------------------------------------

struct CompareArgs {
    fs::path network, out;
    std::optional<fs::path> stations;
    std::vector<fs::path> partitions;
    WalkFlags walk;
};

void cmd_compare(const CompareArgs &a, std::ostream &out) {
    Manifest manifest("compare");
    StagedOutputs outputs(a.out);
    std::optional<std::vector<Station>> stations;
    if (a.stations) {
        stations = load_stations(manifest, *a.stations);
    }
    const FlowNetwork net = load_network(manifest, a.network, std::move(stations));
    const FlowState flow = compute_flow(net, a.walk.flow_model(), a.walk.tau);
    manifest.config().update(walk_json(a.walk.flow_model(), a.walk.tau));

    std::vector<Partition> parts;
    std::vector<ComparisonRow> rows;
    for (const fs::path &p : a.partitions) {
        const Loaded l = load(manifest, "partition", p);
        auto in = l.stream();
        parts.push_back(with_file(p, [&] { return read_partition(in, net); }));
        const auto s = compare_partitions(parts.back(), parts.front());
        rows.push_back({p.stem().string(), parts.back().module_count(),
                        codelength(flow, parts.back()), ObjectiveKind::codelength_bits, s.nmi,
                        s.ari});
    }
    outputs.add("comparison.csv", render([&](std::ostream &o) { write_comparison(o, rows); }));
    manifest.finish(outputs);
    outputs.commit();
    for (const auto &r : rows) {
        out << fmt::format("{}: {} modules, L = {}, NMI {} ARI {}\n", r.method, r.modules,
                           format_number(r.objective), format_number(r.nmi), format_number(r.ari));
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Community detection on bike-share trip networks", "bikeflow"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BIKEFLOW_VERSION_STRING);

    IngestArgs ingest;
    auto *ingest_cmd = app.add_subcommand("ingest", "clean a trip export and build the OD network");
    ingest_cmd->add_option("--trips", ingest.trips, "trip CSV")->required();
    ingest_cmd->add_option("--stations", ingest.stations, "station CSV (id,name,lat,lon)")->required();
    ingest_cmd->add_option("--config", ingest.config, "cleaning settings (key = value)");
    ingest_cmd->add_option("--out", ingest.out, "output directory")->required();

    DetectArgs detect;
    auto *detect_cmd = app.add_subcommand("detect", "find communities in an OD network");
    detect_cmd->add_option("--network", detect.network, "edge list CSV")->required();
    detect_cmd->add_option("--stations", detect.stations, "station CSV fixing node order");
    detect_cmd->add_option("--method", detect.method, "infomap | louvain | greedy | all")
        ->check(CLI::IsMember({"infomap", "louvain", "greedy", "all"}))
        ->capture_default_str();
    detect_cmd->add_option("--resolution", detect.resolution, "modularity resolution")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    detect.walk.attach(*detect_cmd);
    detect.opt.attach(*detect_cmd);
    detect_cmd->add_option("--out", detect.out, "output directory")->required();

    ReportArgs report;
    auto *report_cmd = app.add_subcommand("report", "interaction table and community map");
    report_cmd->add_option("--network", report.network, "edge list CSV")->required();
    report_cmd->add_option("--partition", report.partition, "partition CSV")->required();
    report_cmd->add_option("--stations", report.stations, "station CSV")->required();
    report_cmd->add_option("--out", report.out, "output directory")->required();

    DynamicsArgs dyn;
    auto *dyn_cmd = app.add_subcommand("dynamics", "communities per hour of day");
    dyn_cmd->add_option("--trips", dyn.trips, "trip CSV")->required();
    dyn_cmd->add_option("--stations", dyn.stations, "station CSV")->required();
    dyn_cmd->add_option("--config", dyn.config, "cleaning settings (key = value)");
    dyn_cmd->add_option("--min-flow", dyn.min_flow, "minimum trips per station and hour")
        ->capture_default_str();
    dyn.walk.attach(*dyn_cmd);
    dyn.opt.attach(*dyn_cmd);
    dyn_cmd->add_option("--out", dyn.out, "output directory")->required();

    CompareArgs cmp;
    auto *cmp_cmd = app.add_subcommand("compare", "codelength, NMI and ARI of partitions");
    cmp_cmd->add_option("--network", cmp.network, "edge list CSV")->required();
    cmp_cmd->add_option("--stations", cmp.stations, "station CSV fixing node order");
    cmp_cmd->add_option("--partition", cmp.partitions, "partition CSV; the first is the reference")
        ->required()
        ->expected(1, -1);
    cmp.walk.attach(*cmp_cmd);
    cmp_cmd->add_option("--out", cmp.out, "output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion &) {
        out << BIKEFLOW_VERSION_STRING << '\n';
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        for (const auto *sub : app.get_subcommands()) {
            err << "usage: bikeflow " << sub->get_name() << " --help\n";
        }
        return kUsage;
    }

    try {
        if (*ingest_cmd) {
            cmd_ingest(ingest, out, err);
        } else if (*detect_cmd) {
            cmd_detect(detect, out);
        } else if (*report_cmd) {
            cmd_report(report, out);
        } else if (*dyn_cmd) {
            cmd_dynamics(dyn, out, err);
        } else if (*cmp_cmd) {
            cmd_compare(cmp, out);
        }
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SchemaError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ArgumentError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}

} // namespace bikeflow::cli
