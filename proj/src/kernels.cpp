#include "ccg/kernels.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// chains are hoisted by the callers; fetching them here would take the
// region's cache lock once per point
double point_deviation(const Point& p, const ConvexRegion& to,
                       const std::vector<ArcChain>& chains) {
    if (to.contains(p)) return 0.0;
    double best = kInf;
    for (const ArcChain& ch : chains)
        for (const CycleArc& a : ch.arcs) best = std::min(best, distance_to_arc(p, a));
    return best;
}

// OpenMP pays off only for larger clouds
constexpr std::size_t kParallelCutoff = 256;
}  // namespace

CycleArc transform_arc(const Isometry& iso, const CycleArc& arc) {
    CycleArc out = arc;
    out.cycle = transform_cycle(iso, arc.cycle);
    const bool flipped = compose(iso, arc.cycle.frame()).orientation() < 0;
    if (flipped) {
        out.s0 = -arc.s1;
        out.s1 = -arc.s0;
    }
    return out;
}

double boundary_deviation_serial(const std::vector<Point>& from, const ConvexRegion& to,
                                 double stop_above) {
    const std::vector<ArcChain>& chains = to.boundary_chains();
    double worst = 0.0;
    for (const Point& p : from) {
        worst = std::max(worst, point_deviation(p, to, chains));
        if (worst > stop_above) return worst;
    }
    return worst;
}

double boundary_deviation_parallel(const std::vector<Point>& from, const ConvexRegion& to,
                                   double stop_above) {
    const std::vector<ArcChain>& chains = to.boundary_chains();
    double worst = 0.0;
    std::atomic<bool> done{false};
    const std::int64_t n = std::int64_t(from.size());
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < n; ++i) {
        if (done.load(std::memory_order_relaxed)) continue;
        const double d = point_deviation(from[std::size_t(i)], to, chains);
        worst = std::max(worst, d);
        if (d > stop_above) done.store(true, std::memory_order_relaxed);
    }
    return worst;
}

double boundary_deviation(const std::vector<Point>& from, const ConvexRegion& to,
                          double stop_above) {
    const bool par = config().parallel_kernels && from.size() >= kParallelCutoff;
    return par ? boundary_deviation_parallel(from, to, stop_above)
               : boundary_deviation_serial(from, to, stop_above);
}

namespace {

// dist(p, iso R) without materializing the image region
double deviation_from_image(const Point& p, const ConvexRegion& r, const Isometry& inv,
                            const std::vector<CycleArc>& image_arcs) {
    if (r.margin(inv(p)) >= -config().on_cycle) return 0.0;
    double best = kInf;
    for (const CycleArc& a : image_arcs) best = std::min(best, distance_to_arc(p, a));
    return best;
}

template <typename Body>
double residual_loop_serial(std::size_t n, double stop_above, const Body& body) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, body(i));
        if (worst > stop_above) return worst;
    }
    return worst;
}

template <typename Body>
double residual_loop_parallel(std::size_t n, double stop_above, const Body& body) {
    double worst = 0.0;
    std::atomic<bool> done{false};
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < std::int64_t(n); ++i) {
        if (done.load(std::memory_order_relaxed)) continue;
        const double d = body(std::size_t(i));
        worst = std::max(worst, d);
        if (d > stop_above) done.store(true, std::memory_order_relaxed);
    }
    return worst;
}

template <bool Parallel>
double symmetry_residual_impl(const ConvexRegion& r, const BoundaryCloud& cloud,
                              const Isometry& iso, double stop_above) {
    const Isometry inv = iso.inverse();
    std::vector<CycleArc> image_arcs;
    image_arcs.reserve(cloud.arcs.size());
    for (const CycleArc& a : cloud.arcs) image_arcs.push_back(transform_arc(iso, a));
    const std::vector<ArcChain>& chains = r.boundary_chains();

    auto forward = [&](std::size_t i) {
        // mapped sample against the original region
        return point_deviation(iso(cloud.points[i]), r, chains);
    };
    auto backward = [&](std::size_t i) {
        // original sample against the image region
        return deviation_from_image(cloud.points[i], r, inv, image_arcs);
    };
    const std::size_t n = cloud.points.size();
    double worst;
    if constexpr (Parallel) {
        worst = residual_loop_parallel(n, stop_above, forward);
        if (worst <= stop_above)
            worst = std::max(worst, residual_loop_parallel(n, stop_above, backward));
    } else {
        worst = residual_loop_serial(n, stop_above, forward);
        if (worst <= stop_above)
            worst = std::max(worst, residual_loop_serial(n, stop_above, backward));
    }
    return worst;
}

}  // namespace

double symmetry_residual_serial(const ConvexRegion& r, const BoundaryCloud& cloud,
                                const Isometry& iso, double stop_above) {
    return symmetry_residual_impl<false>(r, cloud, iso, stop_above);
}

double symmetry_residual_parallel(const ConvexRegion& r, const BoundaryCloud& cloud,
                                  const Isometry& iso, double stop_above) {
    return symmetry_residual_impl<true>(r, cloud, iso, stop_above);
}

double symmetry_residual(const ConvexRegion& r, const BoundaryCloud& cloud,
                         const Isometry& iso, double stop_above) {
    const bool par = config().parallel_kernels && cloud.points.size() >= kParallelCutoff;
    return par ? symmetry_residual_parallel(r, cloud, iso, stop_above)
               : symmetry_residual_serial(r, cloud, iso, stop_above);
}

double max_pairwise_distance_serial(const std::vector<Point>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, distance(pts[i], pts[j]));
    return best;
}

double max_pairwise_distance_parallel(const std::vector<Point>& pts) {
    double best = 0.0;
    const std::int64_t n = std::int64_t(pts.size());
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j)
            best = std::max(best, distance(pts[std::size_t(i)], pts[std::size_t(j)]));
    return best;
}

double max_pairwise_distance(const std::vector<Point>& pts) {
    const bool par = config().parallel_kernels && pts.size() >= 128;  // quadratic work
    return par ? max_pairwise_distance_parallel(pts) : max_pairwise_distance_serial(pts);
}

}  // namespace ccg
