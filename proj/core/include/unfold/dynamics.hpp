#pragma once

#include <cstdint>
#include <vector>

#include "unfold/neighbor_graph.hpp"
#include "unfold/point_cloud.hpp"

namespace unfold {

/// Coefficients of the flattening field. The elastic term pulls neighbor
/// pairs back toward their initial separation with strength k1 per unit of
/// length error; the repulsive term pushes every non-neighbor pair apart
/// with constant magnitude k2 per pair, independent of distance.
struct FieldParams {
    double k1 = 0.1;
    double k2 = 0.0002;
    /// Pairs closer than this contribute zero to both terms (their unit
    /// vector is undefined); each such encounter counts as a degeneracy.
    double epsilon_dist = 1e-9;
};

/// Velocity vector per point, same N and n as the cloud it was computed
/// from, plus diagnostics from the evaluation.
struct DeformingField {
    PointCloud vectors;
    /// Ordered pair encounters below epsilon_dist during this evaluation.
    std::int64_t degenerate_pairs = 0;
    /// First point index whose vector came out non-finite, or -1.
    std::int64_t nonfinite_point = -1;
};

/// The manifold being deformed: the frozen initial cloud (which defines
/// the neighbor graph and the elastic rest distances) plus the current
/// positions and elapsed simulated time.
struct ManifoldState {
    PointCloud initial;
    PointCloud current;
    double time = 0.0;
    std::int64_t step_index = 0;
    /// Degenerate pair encounters accumulated over the run so far.
    std::int64_t degeneracy_events = 0;

    ManifoldState() = default;
    explicit ManifoldState(PointCloud cloud)
        : initial(cloud), current(std::move(cloud)) {}
};

struct IntegratorConfig {
    /// Explicit Euler time step. With k1 = 0.1 and the low neighbor
    /// degrees of the stock manifolds, stability allows dt up to ~1; the
    /// displacement cap below catches transients.
    double dt = 1.0;
    std::int64_t max_steps = 100000;
    /// Converged when the max field magnitude stays below converge_vel
    /// for converge_window consecutive evaluations.
    double converge_vel = 1e-3;
    int converge_window = 10;
    /// Per-step displacement cap as a fraction of the neighborhood
    /// radius; a step exceeding it is rescaled uniformly (all points by
    /// the same factor), preserving the field direction.
    double max_disp_frac = 0.25;
    /// Snapshot cadence in steps; first and last states are always kept.
    std::int64_t snapshot_every = 200;
};

enum class Termination {
    converged,
    step_budget_exhausted,
    instability,
};

const char* to_string(Termination t);

struct Snapshot {
    std::int64_t step = 0;
    double time = 0.0;
    PointCloud points;
};

struct Trajectory {
    Termination termination = Termination::converged;
    /// Euler steps actually taken (== final state's step_index).
    std::int64_t steps = 0;
    /// Steps on which the displacement cap engaged.
    std::int64_t capped_steps = 0;
    std::int64_t degeneracy_events = 0;
    /// Step at which a non-finite value appeared, or -1.
    std::int64_t instability_step = -1;
    /// Offending point index for an instability, or -1.
    std::int64_t instability_point = -1;
    /// Snapshot times are strictly increasing; the first snapshot is the
    /// initial cloud.
    std::vector<Snapshot> snapshots;
    ManifoldState final_state;
};

/// Elastic restoring velocity on point i: sum over neighbors j of
/// k1 * unit(p_i - p_j) * (initial_distance(i,j) - current_distance(i,j)).
/// Stretched pairs attract, compressed pairs repel; identically zero on
/// the initial cloud. Accumulated over neighbors in ascending index order
/// so the rounding is reproducible. Pairs closer than epsilon_dist
/// contribute zero and increment *degenerate_pairs when given.
std::vector<double> elastic_term(std::size_t i, const ManifoldState& state,
                                 const NeighborGraph& graph,
                                 const FieldParams& params,
                                 std::int64_t* degenerate_pairs = nullptr);

/// Repulsive velocity on point i: sum over every non-neighbor w != i of
/// k2 * unit(p_i - p_w); magnitude per pair is exactly k2 at any
/// separation. Accumulated in ascending index order. Degenerate pairs as
/// in elastic_term (such an encounter is also an adhesion event).
std::vector<double> repulsive_term(std::size_t i, const ManifoldState& state,
                                   const NeighborGraph& graph,
                                   const FieldParams& params,
                                   std::int64_t* degenerate_pairs = nullptr);

/// Full field: vectors[i] = elastic_term(i) + repulsive_term(i). A pure
/// function of the current positions, the graph, and the params; the
/// time/step metadata on the state never enters. Per-point evaluation may
/// run concurrently, but each point's sum keeps its fixed accumulation
/// order, so the result is independent of thread count.
DeformingField compute_field(const ManifoldState& state,
                             const NeighborGraph& graph,
                             const FieldParams& params);

struct StepResult {
    ManifoldState state;
    /// True when the displacement cap engaged (the whole step was
    /// rescaled by one common factor).
    bool capped = false;
    /// First point with a non-finite coordinate after the step, or -1.
    std::int64_t nonfinite_point = -1;
};

/// One explicit Euler step: p_i += dt * v_i, then time += dt and
/// step_index += 1. If the largest displacement would exceed
/// max_disp_frac * radius, every displacement is rescaled by the common
/// factor that caps the largest one.
StepResult step(const ManifoldState& state, const DeformingField& field,
                const IntegratorConfig& config, double radius);

/// Build the neighbor graph from `initial` once, then iterate
/// compute_field + step until the field magnitude stays below
/// converge_vel for converge_window consecutive evaluations (converged),
/// max_steps is exhausted, or a non-finite value appears (instability).
/// Snapshots are recorded every snapshot_every steps plus the final
/// state. Bit-reproducible for a fixed config.
Trajectory run_simulation(const PointCloud& initial, double r,
                          const FieldParams& params,
                          const IntegratorConfig& config);

/// As above, for callers that already built the graph.
Trajectory run_simulation(const PointCloud& initial,
                          const NeighborGraph& graph,
                          const FieldParams& params,
                          const IntegratorConfig& config);

struct DerivativeCheck {
    /// max over points of ||(p_i(t+dt) - p_i(t)) / dt - v_i(t)||.
    double residual = 0.0;
    /// True when the trial step hit the displacement cap, in which case
    /// the residual reflects the documented rescale, not an integrator
    /// defect, and callers should skip the threshold comparison.
    bool capped = false;
};

/// Finite-difference consistency of one trial step against the field that
/// produced it. Zero up to rounding for an uncapped explicit Euler step;
/// guards any future integrator change. Does not advance the state.
DerivativeCheck deformation_derivative_check(const ManifoldState& state,
                                             const NeighborGraph& graph,
                                             const FieldParams& params,
                                             const IntegratorConfig& config);

/// Number of worker threads compute_field may use (default 1). Results
/// are identical for any setting; this only trades wall-clock time.
void set_field_threads(int threads);
int field_threads();

} // namespace unfold
