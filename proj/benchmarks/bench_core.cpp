#include <benchmark/benchmark.h>

#include "unfold/dynamics.hpp"
#include "unfold/generators.hpp"
#include "unfold/metrics.hpp"
#include "unfold/neighbor_graph.hpp"

namespace {

using namespace unfold;

void BM_BuildGraphSpiral(benchmark::State& state) {
    const PointCloud spiral = gen_spiral(600);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_neighbor_graph(spiral, 1.2));
    }
}
BENCHMARK(BM_BuildGraphSpiral);

void BM_FieldHalfCircle(benchmark::State& state) {
    const PointCloud arc = gen_half_circle(69.0, 129);
    const NeighborGraph graph = build_neighbor_graph(arc, 3.36);
    const ManifoldState manifold(arc);
    const FieldParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_field(manifold, graph, params));
    }
}
BENCHMARK(BM_FieldHalfCircle);

void BM_FieldSpiral(benchmark::State& state) {
    const PointCloud spiral = gen_spiral(600);
    const NeighborGraph graph = build_neighbor_graph(spiral, 1.2);
    const ManifoldState manifold(spiral);
    const FieldParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_field(manifold, graph, params));
    }
}
BENCHMARK(BM_FieldSpiral);

void BM_StepSpiral(benchmark::State& state) {
    const PointCloud spiral = gen_spiral(600);
    const NeighborGraph graph = build_neighbor_graph(spiral, 1.2);
    const ManifoldState manifold(spiral);
    const DeformingField field = compute_field(manifold, graph, FieldParams{});
    const IntegratorConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(manifold, field, config, graph.radius()));
    }
}
BENCHMARK(BM_StepSpiral);

void BM_SpectrumSpiral(benchmark::State& state) {
    const PointCloud spiral = gen_spiral(600);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum(spiral));
    }
}
BENCHMARK(BM_SpectrumSpiral);

void BM_AdhesionCheckSpiral(benchmark::State& state) {
    const PointCloud spiral = gen_spiral(600);
    const NeighborGraph graph = build_neighbor_graph(spiral, 1.2);
    const ManifoldState manifold(spiral);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adhesion_check(manifold, graph));
    }
}
BENCHMARK(BM_AdhesionCheckSpiral);

} // namespace

BENCHMARK_MAIN();
