#pragma once

#include <string>

#include "json.hpp"
#include "unfold/dynamics.hpp"
#include "unfold/metrics.hpp"
#include "unfold/point_cloud.hpp"

namespace unfold::cli {

/// Which initial manifold a run starts from, with its shape parameters.
/// Only the fields relevant to `kind` are meaningful.
struct ManifoldChoice {
    std::string kind; // half-circle | spiral | s-curve | csv
    double radius = 69.0;
    int count = 129;
    int grid_u = 24;
    int grid_v = 15;
    double scale = 10.0;
    std::string csv_path;
};

/// Everything a run needs; serialized whole into manifest.json so a run
/// can be reproduced from its manifest alone.
struct RunConfig {
    ManifoldChoice manifold;
    /// Resolved neighborhood radius. 0 means "not given": resolve via
    /// percentile_radius(cloud, r_multiplier) before simulating.
    double r = 0.0;
    double r_multiplier = 2.0;
    FieldParams params;
    IntegratorConfig integrator;
    std::string out_dir;
    /// Plot defaults carried with the run: axis to look down in the 3-D
    /// top view, and canvas size in pixels.
    int top_axis = 2;
    int canvas = 800;
};

PointCloud make_manifold(const ManifoldChoice& choice);

/// The radius actually used: explicit r, or the percentile heuristic.
double resolve_radius(const RunConfig& config, const PointCloud& cloud);

std::string snapshot_filename(std::int64_t step);

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Topology + spectrum metrics of one snapshot, as reported both in the
/// manifest and by the metrics command.
nlohmann::json snapshot_metrics(const ManifoldState& state, const NeighborGraph& graph,
                                std::int64_t step, double time);

/// Write manifest.json and all snapshot CSVs for a finished run.
void write_run(const RunConfig& config, const NeighborGraph& graph,
               const Trajectory& trajectory, double elapsed_seconds);

struct LoadedRun {
    nlohmann::json manifest;
    RunConfig config;
};

/// Parse <run_dir>/manifest.json; throws IngestError on corrupt content.
LoadedRun load_run(const std::string& run_dir);

} // namespace unfold::cli
