#pragma once

// Data-parallel inner loops behind the symmetry verifier and the metric
// queries, each in a serial reference version and an OpenMP version. The
// unsuffixed entry points dispatch on config().parallel_kernels; tests pin
// both variants against each other and the benchmark target compares them.
//
// All parallel reductions are max-reductions (exact, order-independent), so
// both variants return bit-identical results. With a finite `stop_above` the
// scan may stop early once the running maximum exceeds it; the return value
// is then only guaranteed to exceed `stop_above`.

#include <vector>

#include "ccg/regions.hpp"

namespace ccg {

// sup over `from` of dist(p, region) (0 for contained points)
double boundary_deviation(const std::vector<Point>& from, const ConvexRegion& to,
                          double stop_above);
double boundary_deviation_serial(const std::vector<Point>& from, const ConvexRegion& to,
                                 double stop_above);
double boundary_deviation_parallel(const std::vector<Point>& from, const ConvexRegion& to,
                                   double stop_above);

// Hausdorff residual of an isometry candidate: max(sup dist(iso p, R),
// sup dist(p, iso R)) over the boundary cloud of R.
double symmetry_residual(const ConvexRegion& r, const BoundaryCloud& cloud,
                         const Isometry& iso, double stop_above);
double symmetry_residual_serial(const ConvexRegion& r, const BoundaryCloud& cloud,
                                const Isometry& iso, double stop_above);
double symmetry_residual_parallel(const ConvexRegion& r, const BoundaryCloud& cloud,
                                  const Isometry& iso, double stop_above);

// max pairwise intrinsic distance of a point cloud
double max_pairwise_distance(const std::vector<Point>& pts);
double max_pairwise_distance_serial(const std::vector<Point>& pts);
double max_pairwise_distance_parallel(const std::vector<Point>& pts);

// transformed arc of the image cycle, with the parameter window adjusted for
// the recanonicalization that indirect isometries trigger
CycleArc transform_arc(const Isometry& iso, const CycleArc& arc);

}  // namespace ccg
