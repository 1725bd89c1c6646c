// Serial vs OpenMP comparison for the hot kernels: boundary deviation,
// symmetry residual and pairwise diameter.

#include <benchmark/benchmark.h>

#include "ccg/kernels.hpp"
#include "ccg/symmetry.hpp"

using namespace ccg;

namespace {

ConvexRegion lens_fixture(Space s) {
    const Point o(s, base_point(s));
    const Point c2 = geodesic_walk(o, unit_tangent(o, Vec3{1, 0, 0}), 0.9);
    IntersectionResult x = intersect_regions(disk(o, 1.0), disk(c2, 1.0));
    return *x.region;
}

void bench_boundary_deviation(benchmark::State& state, bool parallel) {
    const ConvexRegion lens = lens_fixture(Space::Hyperbolic);
    const BoundaryCloud cloud = boundary_cloud(lens, std::size_t(state.range(0)));
    const Isometry rot = rotation_about(lens.witness(), 0.3);
    std::vector<Point> moved;
    for (const Point& p : cloud.points) moved.push_back(rot(p));
    const double inf = std::numeric_limits<double>::infinity();
    for (auto _ : state) {
        const double d = parallel ? boundary_deviation_parallel(moved, lens, inf)
                                  : boundary_deviation_serial(moved, lens, inf);
        benchmark::DoNotOptimize(d);
    }
}

void bench_symmetry_residual(benchmark::State& state, bool parallel) {
    const ConvexRegion lens = lens_fixture(Space::Hyperbolic);
    const BoundaryCloud cloud = boundary_cloud(lens, std::size_t(state.range(0)));
    const Isometry probe = rotation_about(lens.witness(), pi);
    const double inf = std::numeric_limits<double>::infinity();
    for (auto _ : state) {
        const double d = parallel ? symmetry_residual_parallel(lens, cloud, probe, inf)
                                  : symmetry_residual_serial(lens, cloud, probe, inf);
        benchmark::DoNotOptimize(d);
    }
}

void bench_diameter(benchmark::State& state, bool parallel) {
    const ConvexRegion lens = lens_fixture(Space::Euclidean);
    const BoundaryCloud cloud = boundary_cloud(lens, std::size_t(state.range(0)));
    for (auto _ : state) {
        const double d = parallel ? max_pairwise_distance_parallel(cloud.points)
                                  : max_pairwise_distance_serial(cloud.points);
        benchmark::DoNotOptimize(d);
    }
}

}  // namespace

BENCHMARK_CAPTURE(bench_boundary_deviation, serial, false)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_boundary_deviation, openmp, true)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_symmetry_residual, serial, false)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_symmetry_residual, openmp, true)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_diameter, serial, false)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bench_diameter, openmp, true)->Arg(512)->Arg(2048);

BENCHMARK_MAIN();
