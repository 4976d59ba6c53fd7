#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "run_io.hpp"
#include "svg.hpp"
#include "unfold/csv.hpp"
#include "unfold/dynamics.hpp"
#include "unfold/errors.hpp"
#include "unfold/generators.hpp"
#include "unfold/metrics.hpp"
#include "unfold/neighbor_graph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace unfold;
using namespace unfold::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInstability = 3;

/// Attach the manifold-shape flags of one kind to a (sub)command.
void add_manifold_flags(CLI::App* cmd, ManifoldChoice& choice, const std::string& kind) {
    choice.kind = kind;
    if (kind == "half-circle") {
        cmd->add_option("--radius", choice.radius, "Circle radius")->check(CLI::PositiveNumber);
        cmd->add_option("--count", choice.count, "Sample point count")
            ->check(CLI::Range(2, 1 << 20));
    } else if (kind == "spiral") {
        choice.count = 600;
        cmd->add_option("--count", choice.count, "Sample point count")
            ->check(CLI::Range(2, 1 << 20));
    } else if (kind == "s-curve") {
        cmd->add_option_function<std::string>(
               "--grid",
               [&choice](const std::string& value) {
                   int u = 0, v = 0;
                   char sep = 0;
                   if (std::sscanf(value.c_str(), "%d%c%d", &u, &sep, &v) != 3 ||
                       (sep != 'x' && sep != 'X') || u < 2 || v < 2) {
                       throw CLI::ValidationError("--grid expects UxV with U, V >= 2, got '" +
                                                  value + "'");
                   }
                   choice.grid_u = u;
                   choice.grid_v = v;
               },
               "Grid as UxV (default 24x15)");
        cmd->add_option("--scale", choice.scale, "Ambient scale factor")
            ->check(CLI::PositiveNumber);
    } else if (kind == "csv") {
        cmd->add_option("--input", choice.csv_path, "Input CSV of points")
            ->required()
            ->check(CLI::ExistingFile);
    }
}

void add_dynamics_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--r", config.r, "Neighborhood radius (default: percentile heuristic)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--r-multiplier", config.r_multiplier,
                    "Multiplier on the 1st-percentile pairwise distance when --r is absent")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--k1", config.params.k1, "Elastic coefficient")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--k2", config.params.k2, "Repulsive coefficient")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon-dist", config.params.epsilon_dist,
                    "Minimum pair distance for defined unit vectors")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dt", config.integrator.dt, "Euler time step")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-steps", config.integrator.max_steps, "Step budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--converge-vel", config.integrator.converge_vel,
                    "Max field magnitude below which the run counts as settled");
    cmd->add_option("--converge-window", config.integrator.converge_window,
                    "Consecutive settled steps required to stop")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-disp-frac", config.integrator.max_disp_frac,
                    "Per-step displacement cap as a fraction of r");
    cmd->add_option("--snapshot-every", config.integrator.snapshot_every,
                    "Steps between recorded snapshots")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--top-axis", config.top_axis,
                    "Stored plot default: axis the 3-D top view drops")
        ->check(CLI::Range(0, 2));
    cmd->add_option("--size", config.canvas, "Stored plot default: canvas pixels")
        ->check(CLI::Range(64, 8192));
}

void warn_graph(const NeighborGraph& graph) {
    if (graph.coincident_pairs() > 0) {
        std::cerr << "warning: " << graph.coincident_pairs()
                  << " coincident point pair(s); they repel nothing and never separate\n";
    }
    if (!graph.isolated_points().empty()) {
        std::cerr << "warning: " << graph.isolated_points().size()
                  << " isolated point(s) with no neighbors; repulsion only\n";
    }
}

int cmd_generate(const ManifoldChoice& choice, const std::string& out_path) {
    const PointCloud cloud = make_manifold(choice);
    save_csv(cloud, out_path);
    const DistanceRange range = min_max_pairwise(cloud);
    std::printf("wrote %s: %zu points in R^%d, pairwise distance range [%.6g, %.6g]\n",
                out_path.c_str(), cloud.size(), cloud.dim(), range.min, range.max);
    return kExitOk;
}

int cmd_run(RunConfig config) {
    const PointCloud cloud = make_manifold(config.manifold);
    if (cloud.size() < 2) {
        throw UsageError("a run needs at least 2 points");
    }
    if (config.manifold.kind == "csv") {
        // A reproduced run must find the same file from any working dir.
        config.manifold.csv_path = fs::absolute(config.manifold.csv_path).string();
    }
    config.r = resolve_radius(config, cloud);
    const NeighborGraph graph = build_neighbor_graph(cloud, config.r);
    warn_graph(graph);

    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory trajectory = run_simulation(cloud, graph, config.params, config.integrator);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_run(config, graph, trajectory, elapsed);

    const auto& final_metrics = trajectory.snapshots.empty()
                                    ? json(nullptr)
                                    : snapshot_metrics(trajectory.final_state, graph,
                                                       trajectory.steps,
                                                       trajectory.final_state.time);
    std::printf("%s after %lld steps (%.1f s), %lld capped, %lld degeneracy events\n",
                to_string(trajectory.termination), static_cast<long long>(trajectory.steps),
                elapsed, static_cast<long long>(trajectory.capped_steps),
                static_cast<long long>(trajectory.degeneracy_events));
    if (final_metrics.contains("flatness")) {
        std::printf("final flatness %s, intrinsic dimension %d\n",
                    final_metrics["flatness"].dump().c_str(),
                    final_metrics["intrinsic_dimension"].get<int>());
    }
    std::printf("run directory: %s\n", config.out_dir.c_str());

    if (trajectory.termination == Termination::instability) {
        std::fprintf(stderr, "instability at step %lld (point %lld)\n",
                     static_cast<long long>(trajectory.instability_step),
                     static_cast<long long>(trajectory.instability_point));
        return kExitInstability;
    }
    return kExitOk;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

/// Plot one cloud; 3-D (or higher, projected) clouds produce a
/// perspective and a top view, 2-D clouds one scatter.
void plot_cloud(const PointCloud& cloud, const PointCloud* field, const fs::path& out_dir,
                const std::string& stem, const PlotOptions& options) {
    PointCloud drawable = cloud;
    if (cloud.dim() > 3) {
        std::cerr << "warning: " << cloud.dim()
                  << "-dimensional cloud; plotting the first 3 axes only\n";
        PointCloud projected(3);
        projected.reserve(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            projected.push_back(cloud.point(i).subspan(0, 3));
        }
        drawable = std::move(projected);
    }
    if (drawable.dim() == 3) {
        if (field != nullptr) {
            std::cerr << "warning: field arrows are drawn for 2-D clouds only\n";
        }
        write_text(out_dir / (stem + "_3d.svg"), render_perspective_3d(drawable, options));
        write_text(out_dir / (stem + "_top.svg"), render_top_view_3d(drawable, options));
    } else {
        write_text(out_dir / (stem + ".svg"), render_scatter_2d(drawable, field, options));
    }
}

struct PlotArgs {
    std::string input;
    std::string out_dir;
    bool arrows = false;
    double r = 0.0;
    double r_multiplier = 2.0;
    FieldParams params;
    PlotOptions options;
    bool top_axis_set = false;
    bool canvas_set = false;
};

int cmd_plot(PlotArgs args) {
    if (fs::is_directory(args.input)) {
        const LoadedRun run = load_run(args.input);
        const auto& snapshots = run.manifest.at("snapshots");
        if (snapshots.empty()) {
            throw UsageError("run has no snapshots to plot");
        }
        if (!args.top_axis_set) {
            args.options.top_axis = run.config.top_axis;
        }
        if (!args.canvas_set) {
            args.options.canvas = run.config.canvas;
        }
        const fs::path run_dir(args.input);
        const fs::path out_dir = args.out_dir.empty() ? run_dir : fs::path(args.out_dir);
        fs::create_directories(out_dir);

        PointCloud initial = load_csv(
            (run_dir / snapshots.at(0).at("file").get<std::string>()).string());
        NeighborGraph graph;
        if (args.arrows) {
            graph = build_neighbor_graph(initial, run.config.r);
        }
        for (const auto& entry : snapshots) {
            const std::string file = entry.at("file").get<std::string>();
            PointCloud cloud = load_csv((run_dir / file).string());
            std::string stem = file;
            if (stem.size() > 4 && stem.ends_with(".csv")) {
                stem.resize(stem.size() - 4);
            }
            PointCloud field_vectors;
            const PointCloud* field = nullptr;
            if (args.arrows && cloud.dim() <= 2) {
                ManifoldState state(initial);
                state.current = cloud;
                field_vectors = compute_field(state, graph, run.config.params).vectors;
                field = &field_vectors;
            }
            plot_cloud(cloud, field, out_dir, stem, args.options);
        }
        std::printf("plotted %zu snapshot(s) into %s\n",
                    static_cast<std::size_t>(snapshots.size()), out_dir.string().c_str());
        return kExitOk;
    }

    PointCloud cloud = load_csv(args.input);
    const fs::path input_path(args.input);
    const fs::path out_dir =
        args.out_dir.empty() ? input_path.parent_path() : fs::path(args.out_dir);
    fs::create_directories(out_dir.empty() ? fs::path(".") : out_dir);
    std::string stem = input_path.filename().string();
    if (stem.size() > 4 && stem.ends_with(".csv")) {
        stem.resize(stem.size() - 4);
    }
    PointCloud field_vectors;
    const PointCloud* field = nullptr;
    if (args.arrows && cloud.dim() <= 2) {
        const double r = args.r > 0.0 ? args.r : percentile_radius(cloud, args.r_multiplier);
        ManifoldState state(cloud);
        field_vectors =
            compute_field(state, build_neighbor_graph(cloud, r), args.params).vectors;
        field = &field_vectors;
    } else if (args.arrows) {
        std::cerr << "warning: field arrows are drawn for 2-D clouds only\n";
    }
    plot_cloud(cloud, field, out_dir.empty() ? fs::path(".") : out_dir, stem, args.options);
    std::printf("plotted %s\n", args.input.c_str());
    return kExitOk;
}

int cmd_metrics(const std::string& run_dir_arg) {
    const LoadedRun run = load_run(run_dir_arg);
    const fs::path run_dir(run_dir_arg);
    const auto& snapshots = run.manifest.at("snapshots");
    if (snapshots.empty()) {
        throw IngestError("manifest lists no snapshots");
    }
    json series = json::array();
    PointCloud initial;
    NeighborGraph graph;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const auto& entry = snapshots.at(k);
        PointCloud cloud = load_csv((run_dir / entry.at("file").get<std::string>()).string());
        if (k == 0) {
            initial = cloud;
            graph = build_neighbor_graph(initial, run.config.r);
        }
        ManifoldState state(initial);
        state.current = std::move(cloud);
        series.push_back(snapshot_metrics(state, graph, entry.at("step").get<std::int64_t>(),
                                          entry.at("time").get<double>()));
    }
    json report{
        {"termination", run.manifest.at("termination")},
        {"steps", run.manifest.at("steps")},
        {"snapshots", std::move(series)},
    };
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autonomous manifold flattening: elastic neighbors, constant-magnitude "
                 "repulsion, explicit Euler integration"};
    app.require_subcommand(1);
    const std::array<const char*, 4> kinds{"half-circle", "spiral", "s-curve", "csv"};

    auto* generate = app.add_subcommand("generate", "Write an initial manifold as CSV");
    generate->require_subcommand(1);
    std::array<ManifoldChoice, 4> gen_choices;
    std::string gen_out = "points.csv";
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        auto* sub = generate->add_subcommand(kinds[k]);
        add_manifold_flags(sub, gen_choices[k], kinds[k]);
        sub->add_option("--out", gen_out, "Output CSV path (default points.csv)");
    }

    auto* run = app.add_subcommand("run", "Simulate the flattening of a manifold");
    RunConfig run_config;
    std::string from_manifest;
    std::string run_out;
    run->add_option("--from-manifest", from_manifest,
                    "Reproduce a previous run from its manifest.json")
        ->check(CLI::ExistingFile);
    run->add_option("--out", run_out, "Run directory (required unless --from-manifest)");
    std::array<ManifoldChoice, 4> run_choices;
    std::array<RunConfig, 4> run_configs;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        auto* sub = run->add_subcommand(kinds[k]);
        sub->fallthrough();
        add_manifold_flags(sub, run_choices[k], kinds[k]);
        add_dynamics_flags(sub, run_configs[k]);
    }

    auto* plot = app.add_subcommand("plot", "Render snapshots as SVG scatter plots");
    PlotArgs plot_args;
    plot->add_option("input", plot_args.input, "Run directory or CSV file")
        ->required()
        ->check(CLI::ExistingPath);
    plot->add_option("--out", plot_args.out_dir, "Output directory (default: beside input)");
    plot->add_flag("--arrows", plot_args.arrows, "Draw the deforming field (2-D clouds)");
    plot->add_option("--r", plot_args.r, "Neighborhood radius for arrows on a bare CSV")
        ->check(CLI::PositiveNumber);
    plot->add_option("--r-multiplier", plot_args.r_multiplier,
                     "Percentile-heuristic multiplier when --r is absent")
        ->check(CLI::PositiveNumber);
    plot->add_option("--k1", plot_args.params.k1, "Elastic coefficient for arrows");
    plot->add_option("--k2", plot_args.params.k2, "Repulsive coefficient for arrows");
    auto* top_axis_opt =
        plot->add_option("--top-axis", plot_args.options.top_axis, "Axis the top view drops")
            ->check(CLI::Range(0, 2));
    auto* canvas_opt = plot->add_option("--size", plot_args.options.canvas,
                                        "Canvas size in pixels")
                           ->check(CLI::Range(64, 8192));

    auto* metrics = app.add_subcommand("metrics", "Per-snapshot metrics report as JSON");
    std::string metrics_dir;
    metrics->add_option("run_dir", metrics_dir, "Run directory with manifest.json")
        ->required()
        ->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                if (generate->got_subcommand(kinds[k])) {
                    return cmd_generate(gen_choices[k], gen_out);
                }
            }
        }
        if (run->parsed()) {
            if (!from_manifest.empty()) {
                if (!run->get_subcommands().empty()) {
                    throw UsageError("--from-manifest replaces the manifold subcommand");
                }
                std::ifstream in(from_manifest);
                json manifest;
                try {
                    manifest = json::parse(in);
                } catch (const json::exception& e) {
                    throw IngestError(from_manifest + ": " + e.what());
                }
                run_config = config_from_json(manifest.at("config"));
                if (!run_out.empty()) {
                    run_config.out_dir = run_out;
                }
            } else {
                bool matched = false;
                for (std::size_t k = 0; k < kinds.size(); ++k) {
                    if (run->got_subcommand(kinds[k])) {
                        run_config = run_configs[k];
                        run_config.manifold = run_choices[k];
                        matched = true;
                    }
                }
                if (!matched) {
                    throw UsageError("pick a manifold (half-circle | spiral | s-curve | csv) "
                                     "or --from-manifest");
                }
                if (run_out.empty()) {
                    throw UsageError("--out is required");
                }
                run_config.out_dir = run_out;
            }
            return cmd_run(std::move(run_config));
        }
        if (plot->parsed()) {
            plot_args.top_axis_set = top_axis_opt->count() > 0;
            plot_args.canvas_set = canvas_opt->count() > 0;
            return cmd_plot(std::move(plot_args));
        }
        if (metrics->parsed()) {
            return cmd_metrics(metrics_dir);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
