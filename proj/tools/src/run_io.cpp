#include "run_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "unfold/csv.hpp"
#include "unfold/errors.hpp"
#include "unfold/generators.hpp"
#include "unfold/neighbor_graph.hpp"

namespace unfold::cli {

namespace fs = std::filesystem;
using nlohmann::json;

PointCloud make_manifold(const ManifoldChoice& choice) {
    if (choice.kind == "half-circle") {
        return gen_half_circle(choice.radius, choice.count);
    }
    if (choice.kind == "spiral") {
        return gen_spiral(choice.count);
    }
    if (choice.kind == "s-curve") {
        return gen_s_curve(choice.grid_u, choice.grid_v, choice.scale);
    }
    if (choice.kind == "csv") {
        return load_csv(choice.csv_path);
    }
    throw UsageError("unknown manifold kind '" + choice.kind + "'");
}

double resolve_radius(const RunConfig& config, const PointCloud& cloud) {
    if (config.r > 0.0) {
        return config.r;
    }
    return percentile_radius(cloud, config.r_multiplier);
}

std::string snapshot_filename(std::int64_t step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%06lld.csv", static_cast<long long>(step));
    return buf;
}

json config_to_json(const RunConfig& config) {
    json m{{"kind", config.manifold.kind}};
    if (config.manifold.kind == "half-circle") {
        m["radius"] = config.manifold.radius;
        m["count"] = config.manifold.count;
    } else if (config.manifold.kind == "spiral") {
        m["count"] = config.manifold.count;
    } else if (config.manifold.kind == "s-curve") {
        m["grid_u"] = config.manifold.grid_u;
        m["grid_v"] = config.manifold.grid_v;
        m["scale"] = config.manifold.scale;
    } else if (config.manifold.kind == "csv") {
        m["path"] = config.manifold.csv_path;
    }
    return json{
        {"manifold", std::move(m)},
        {"r", config.r},
        {"r_multiplier", config.r_multiplier},
        {"k1", config.params.k1},
        {"k2", config.params.k2},
        {"epsilon_dist", config.params.epsilon_dist},
        {"dt", config.integrator.dt},
        {"max_steps", config.integrator.max_steps},
        {"converge_vel", config.integrator.converge_vel},
        {"converge_window", config.integrator.converge_window},
        {"max_disp_frac", config.integrator.max_disp_frac},
        {"snapshot_every", config.integrator.snapshot_every},
        {"out", config.out_dir},
        {"top_axis", config.top_axis},
        {"canvas", config.canvas},
    };
}

RunConfig config_from_json(const json& j) {
    RunConfig config;
    const auto& m = j.at("manifold");
    config.manifold.kind = m.at("kind").get<std::string>();
    if (config.manifold.kind == "half-circle") {
        config.manifold.radius = m.at("radius").get<double>();
        config.manifold.count = m.at("count").get<int>();
    } else if (config.manifold.kind == "spiral") {
        config.manifold.count = m.at("count").get<int>();
    } else if (config.manifold.kind == "s-curve") {
        config.manifold.grid_u = m.at("grid_u").get<int>();
        config.manifold.grid_v = m.at("grid_v").get<int>();
        config.manifold.scale = m.at("scale").get<double>();
    } else if (config.manifold.kind == "csv") {
        config.manifold.csv_path = m.at("path").get<std::string>();
    } else {
        throw IngestError("manifest names unknown manifold kind '" + config.manifold.kind + "'");
    }
    config.r = j.at("r").get<double>();
    config.r_multiplier = j.at("r_multiplier").get<double>();
    config.params.k1 = j.at("k1").get<double>();
    config.params.k2 = j.at("k2").get<double>();
    config.params.epsilon_dist = j.at("epsilon_dist").get<double>();
    config.integrator.dt = j.at("dt").get<double>();
    config.integrator.max_steps = j.at("max_steps").get<std::int64_t>();
    config.integrator.converge_vel = j.at("converge_vel").get<double>();
    config.integrator.converge_window = j.at("converge_window").get<int>();
    config.integrator.max_disp_frac = j.at("max_disp_frac").get<double>();
    config.integrator.snapshot_every = j.at("snapshot_every").get<std::int64_t>();
    config.out_dir = j.at("out").get<std::string>();
    config.top_axis = j.at("top_axis").get<int>();
    config.canvas = j.at("canvas").get<int>();
    return config;
}

namespace {

json finite_or_null(double value) {
    if (std::isfinite(value)) {
        return value;
    }
    return nullptr;
}

} // namespace

json snapshot_metrics(const ManifoldState& state, const NeighborGraph& graph,
                      std::int64_t step, double time) {
    const TopologyReport topo = adhesion_check(state, graph);
    json entry{
        {"step", step},
        {"time", time},
        {"distortion_max", topo.distortion.max},
        {"distortion_rms", topo.distortion.rms},
        {"neighbor_pairs", topo.distortion.pair_count},
        {"min_pairwise_distance", finite_or_null(topo.min_pairwise_distance)},
        {"min_neighbor_distance", finite_or_null(topo.min_neighbor_distance)},
        {"min_non_neighbor_distance", finite_or_null(topo.min_non_neighbor_distance)},
        {"adhesion", topo.adhesion},
        {"centroid_drift", topo.centroid_drift},
    };
    if (state.current.size() >= 2) {
        const SpectrumReport spec = spectrum(state.current);
        entry["singular_values"] = spec.singular_values;
        entry["explained_variance"] = spec.explained_variance;
        entry["intrinsic_dimension"] = spec.intrinsic_dimension;
        json flatness = json::array();
        for (int d = 1; d < state.current.dim(); ++d) {
            flatness.push_back(flatness_ratio(state.current, d));
        }
        entry["flatness"] = std::move(flatness);
        entry["max_extent"] = max_pairwise_extent(state.current);
    }
    return entry;
}

void write_run(const RunConfig& config, const NeighborGraph& graph,
               const Trajectory& trajectory, double elapsed_seconds) {
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create run directory " + dir.string() + ": " + ec.message());
    }

    json snapshots = json::array();
    json per_snapshot = json::array();
    for (const Snapshot& snap : trajectory.snapshots) {
        const std::string name = snapshot_filename(snap.step);
        save_csv(snap.points, (dir / name).string());
        snapshots.push_back({{"file", name}, {"step", snap.step}, {"time", snap.time}});

        ManifoldState at;
        at.initial = trajectory.final_state.initial;
        at.current = snap.points;
        per_snapshot.push_back(snapshot_metrics(at, graph, snap.step, snap.time));
    }

    json manifest{
        {"config", config_to_json(config)},
        {"termination", to_string(trajectory.termination)},
        {"steps", trajectory.steps},
        {"capped_steps", trajectory.capped_steps},
        {"degeneracy_events", trajectory.degeneracy_events},
        {"elapsed_seconds", elapsed_seconds},
        {"snapshots", std::move(snapshots)},
        {"metrics",
         {{"final", per_snapshot.empty() ? json(nullptr) : per_snapshot.back()},
          {"snapshots", std::move(per_snapshot)}}},
    };
    if (trajectory.termination == Termination::instability) {
        manifest["instability_step"] = trajectory.instability_step;
        manifest["instability_point"] = trajectory.instability_point;
    }

    std::ofstream out(dir / "manifest.json");
    if (!out) {
        throw IoError("cannot write " + (dir / "manifest.json").string());
    }
    out << manifest.dump(2) << '\n';
    out.flush();
    if (!out) {
        throw IoError("write failure on " + (dir / "manifest.json").string());
    }
}

LoadedRun load_run(const std::string& run_dir) {
    const fs::path path = fs::path(run_dir) / "manifest.json";
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    LoadedRun run;
    try {
        run.manifest = json::parse(in);
        run.config = config_from_json(run.manifest.at("config"));
    } catch (const json::exception& e) {
        throw IngestError(path.string() + ": " + e.what());
    }
    return run;
}

} // namespace unfold::cli
