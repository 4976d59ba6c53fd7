#include "unfold/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "unfold/errors.hpp"

namespace unfold {

namespace {

std::atomic<int> g_field_threads{1};

void accumulate_elastic(std::size_t i, const PointCloud& current,
                        const NeighborGraph& graph, const FieldParams& params,
                        double* out, std::int64_t& degenerate) {
    const int dim = current.dim();
    const double* pi = current.data() + i * static_cast<std::size_t>(dim);
    const auto& nb = graph.neighbors(i);
    const auto& rest = graph.initial_distances(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
        const double* pj =
            current.data() + static_cast<std::size_t>(nb[k]) * static_cast<std::size_t>(dim);
        double sq = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double d = pi[c] - pj[c];
            sq += d * d;
        }
        const double dist = std::sqrt(sq);
        if (dist < params.epsilon_dist) {
            ++degenerate;
            continue;
        }
        const double coef = params.k1 * (rest[k] - dist) / dist;
        for (int c = 0; c < dim; ++c) {
            out[c] += coef * (pi[c] - pj[c]);
        }
    }
}

void accumulate_repulsive(std::size_t i, const PointCloud& current,
                          const NeighborGraph& graph, const FieldParams& params,
                          double* out, std::int64_t& degenerate) {
    const int dim = current.dim();
    const std::size_t n = current.size();
    const double* pi = current.data() + i * static_cast<std::size_t>(dim);
    const auto& nb = graph.neighbors(i);
    std::size_t cursor = 0;
    for (std::size_t w = 0; w < n; ++w) {
        if (cursor < nb.size() && static_cast<std::size_t>(nb[cursor]) == w) {
            ++cursor;
            continue;
        }
        if (w == i) {
            continue;
        }
        const double* pw =
            current.data() + w * static_cast<std::size_t>(dim);
        double sq = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double d = pi[c] - pw[c];
            sq += d * d;
        }
        const double dist = std::sqrt(sq);
        if (dist < params.epsilon_dist) {
            ++degenerate;
            continue;
        }
        const double coef = params.k2 / dist;
        for (int c = 0; c < dim; ++c) {
            out[c] += coef * (pi[c] - pw[c]);
        }
    }
}

void check_state(const ManifoldState& state, const NeighborGraph& graph) {
    if (state.initial.size() != state.current.size() ||
        state.initial.dim() != state.current.dim()) {
        throw UsageError("initial and current clouds must have identical shape");
    }
    if (graph.size() != state.current.size()) {
        throw UsageError("neighbor graph covers " + std::to_string(graph.size()) +
                         " points but the state has " + std::to_string(state.current.size()));
    }
}

void check_params(const FieldParams& params) {
    if (!(params.k1 > 0.0) || !(params.k2 > 0.0) || !(params.epsilon_dist > 0.0)) {
        throw UsageError("field coefficients k1, k2, and epsilon_dist must be positive");
    }
}

void check_config(const IntegratorConfig& config) {
    if (!(config.dt > 0.0)) {
        throw UsageError("time step must be positive");
    }
    if (config.max_steps < 1) {
        throw UsageError("step budget must be at least 1");
    }
    if (!(config.converge_vel >= 0.0)) {
        throw UsageError("convergence threshold must be non-negative");
    }
    if (config.converge_window < 1) {
        throw UsageError("convergence window must be at least 1 step");
    }
    if (!(config.max_disp_frac > 0.0) || config.max_disp_frac > 1.0) {
        throw UsageError("displacement cap fraction must be in (0, 1]");
    }
    if (config.snapshot_every < 1) {
        throw UsageError("snapshot cadence must be at least 1 step");
    }
}

} // namespace

const char* to_string(Termination t) {
    switch (t) {
        case Termination::converged: return "converged";
        case Termination::step_budget_exhausted: return "step_budget_exhausted";
        case Termination::instability: return "instability";
    }
    return "unknown";
}

std::vector<double> elastic_term(std::size_t i, const ManifoldState& state,
                                 const NeighborGraph& graph, const FieldParams& params,
                                 std::int64_t* degenerate_pairs) {
    check_state(state, graph);
    check_params(params);
    std::vector<double> out(static_cast<std::size_t>(state.current.dim()), 0.0);
    std::int64_t degenerate = 0;
    accumulate_elastic(i, state.current, graph, params, out.data(), degenerate);
    if (degenerate_pairs != nullptr) {
        *degenerate_pairs += degenerate;
    }
    return out;
}

std::vector<double> repulsive_term(std::size_t i, const ManifoldState& state,
                                   const NeighborGraph& graph, const FieldParams& params,
                                   std::int64_t* degenerate_pairs) {
    check_state(state, graph);
    check_params(params);
    std::vector<double> out(static_cast<std::size_t>(state.current.dim()), 0.0);
    std::int64_t degenerate = 0;
    accumulate_repulsive(i, state.current, graph, params, out.data(), degenerate);
    if (degenerate_pairs != nullptr) {
        *degenerate_pairs += degenerate;
    }
    return out;
}

DeformingField compute_field(const ManifoldState& state, const NeighborGraph& graph,
                             const FieldParams& params) {
    check_state(state, graph);
    check_params(params);
    const std::size_t n = state.current.size();
    const int dim = state.current.dim();
    DeformingField field;
    field.vectors = PointCloud(
        dim, std::vector<double>(n * static_cast<std::size_t>(dim), 0.0));

    const auto evaluate_range = [&](std::size_t begin, std::size_t end,
                                    std::int64_t& degenerate, std::int64_t& nonfinite) {
        std::vector<double> elastic(static_cast<std::size_t>(dim));
        std::vector<double> repulsive(static_cast<std::size_t>(dim));
        for (std::size_t i = begin; i < end; ++i) {
            std::fill(elastic.begin(), elastic.end(), 0.0);
            std::fill(repulsive.begin(), repulsive.end(), 0.0);
            accumulate_elastic(i, state.current, graph, params, elastic.data(), degenerate);
            accumulate_repulsive(i, state.current, graph, params, repulsive.data(), degenerate);
            const auto out = field.vectors.mutable_point(i);
            bool finite = true;
            for (int c = 0; c < dim; ++c) {
                out[static_cast<std::size_t>(c)] =
                    elastic[static_cast<std::size_t>(c)] + repulsive[static_cast<std::size_t>(c)];
                finite = finite && std::isfinite(out[static_cast<std::size_t>(c)]);
            }
            if (!finite && nonfinite < 0) {
                nonfinite = static_cast<std::int64_t>(i);
            }
        }
    };

    const int threads = std::min<int>(g_field_threads.load(std::memory_order_relaxed),
                                      static_cast<int>(n));
    if (threads <= 1) {
        std::int64_t degenerate = 0;
        std::int64_t nonfinite = -1;
        evaluate_range(0, n, degenerate, nonfinite);
        field.degenerate_pairs = degenerate;
        field.nonfinite_point = nonfinite;
        return field;
    }

    std::vector<std::int64_t> degenerate(static_cast<std::size_t>(threads), 0);
    std::vector<std::int64_t> nonfinite(static_cast<std::size_t>(threads), -1);
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    const std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) /
                              static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&, t, begin, end] {
            evaluate_range(begin, end, degenerate[static_cast<std::size_t>(t)],
                           nonfinite[static_cast<std::size_t>(t)]);
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (int t = 0; t < threads; ++t) {
        field.degenerate_pairs += degenerate[static_cast<std::size_t>(t)];
        if (field.nonfinite_point < 0 && nonfinite[static_cast<std::size_t>(t)] >= 0) {
            field.nonfinite_point = nonfinite[static_cast<std::size_t>(t)];
        }
    }
    return field;
}

StepResult step(const ManifoldState& state, const DeformingField& field,
                const IntegratorConfig& config, double radius) {
    check_config(config);
    if (!(radius > 0.0)) {
        throw UsageError("neighborhood radius must be positive");
    }
    if (field.vectors.size() != state.current.size() ||
        field.vectors.dim() != state.current.dim()) {
        throw UsageError("field shape does not match the state");
    }
    const std::size_t n = state.current.size();
    const int dim = state.current.dim();

    double max_speed_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = field.vectors.point(i);
        double sq = 0.0;
        for (int c = 0; c < dim; ++c) {
            sq += v[static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(c)];
        }
        if (sq > max_speed_sq) {
            max_speed_sq = sq;
        }
    }
    const double max_disp = config.dt * std::sqrt(max_speed_sq);
    const double cap = config.max_disp_frac * radius;

    StepResult result;
    result.state = state;
    double scale = config.dt;
    if (max_disp > cap) {
        scale = config.dt * (cap / max_disp);
        result.capped = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = field.vectors.point(i);
        const auto p = result.state.current.mutable_point(i);
        for (int c = 0; c < dim; ++c) {
            p[static_cast<std::size_t>(c)] += scale * v[static_cast<std::size_t>(c)];
        }
    }
    result.state.time = state.time + config.dt;
    result.state.step_index = state.step_index + 1;
    result.nonfinite_point = result.state.current.first_non_finite();
    return result;
}

Trajectory run_simulation(const PointCloud& initial, double r, const FieldParams& params,
                          const IntegratorConfig& config) {
    const NeighborGraph graph = build_neighbor_graph(initial, r);
    return run_simulation(initial, graph, params, config);
}

Trajectory run_simulation(const PointCloud& initial, const NeighborGraph& graph,
                          const FieldParams& params, const IntegratorConfig& config) {
    check_params(params);
    check_config(config);
    if (initial.empty()) {
        throw UsageError("cannot simulate an empty cloud");
    }
    if (initial.first_non_finite() >= 0) {
        throw UsageError("initial cloud contains non-finite coordinates (point " +
                         std::to_string(initial.first_non_finite()) + ")");
    }

    ManifoldState state(initial);
    check_state(state, graph);

    Trajectory traj;
    int below_count = 0;
    while (true) {
        const DeformingField field = compute_field(state, graph, params);
        state.degeneracy_events += field.degenerate_pairs;

        if (field.nonfinite_point >= 0) {
            traj.termination = Termination::instability;
            traj.instability_step = state.step_index;
            traj.instability_point = field.nonfinite_point;
            break;
        }

        if (state.step_index % config.snapshot_every == 0) {
            traj.snapshots.push_back({state.step_index, state.time, state.current});
        }

        double max_speed_sq = 0.0;
        for (std::size_t i = 0; i < state.current.size(); ++i) {
            const auto v = field.vectors.point(i);
            double sq = 0.0;
            for (std::size_t c = 0; c < v.size(); ++c) {
                sq += v[c] * v[c];
            }
            if (sq > max_speed_sq) {
                max_speed_sq = sq;
            }
        }
        if (std::sqrt(max_speed_sq) < config.converge_vel) {
            ++below_count;
            if (below_count >= config.converge_window) {
                traj.termination = Termination::converged;
                break;
            }
        } else {
            below_count = 0;
        }

        if (state.step_index >= config.max_steps) {
            traj.termination = Termination::step_budget_exhausted;
            break;
        }

        StepResult next = step(state, field, config, graph.radius());
        if (next.capped) {
            ++traj.capped_steps;
        }
        if (next.nonfinite_point >= 0) {
            traj.termination = Termination::instability;
            traj.instability_step = next.state.step_index;
            traj.instability_point = next.nonfinite_point;
            break;
        }
        state = std::move(next.state);
    }

    if (traj.snapshots.empty() || traj.snapshots.back().step != state.step_index) {
        traj.snapshots.push_back({state.step_index, state.time, state.current});
    }
    traj.steps = state.step_index;
    traj.degeneracy_events = state.degeneracy_events;
    traj.final_state = std::move(state);
    return traj;
}

DerivativeCheck deformation_derivative_check(const ManifoldState& state,
                                             const NeighborGraph& graph,
                                             const FieldParams& params,
                                             const IntegratorConfig& config) {
    const DeformingField field = compute_field(state, graph, params);
    const StepResult trial = step(state, field, config, graph.radius());
    const std::size_t n = state.current.size();
    const int dim = state.current.dim();
    double worst_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto before = state.current.point(i);
        const auto after = trial.state.current.point(i);
        const auto v = field.vectors.point(i);
        double sq = 0.0;
        for (int c = 0; c < dim; ++c) {
            const auto idx = static_cast<std::size_t>(c);
            const double rate = (after[idx] - before[idx]) / config.dt;
            const double err = rate - v[idx];
            sq += err * err;
        }
        if (sq > worst_sq) {
            worst_sq = sq;
        }
    }
    return {std::sqrt(worst_sq), trial.capped};
}

void set_field_threads(int threads) {
    g_field_threads.store(threads < 1 ? 1 : threads, std::memory_order_relaxed);
}

int field_threads() {
    return g_field_threads.load(std::memory_order_relaxed);
}

} // namespace unfold
