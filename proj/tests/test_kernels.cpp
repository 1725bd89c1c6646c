#include <doctest.h>

#include <cmath>

#include "ccg/kernels.hpp"
#include "ccg/rng.hpp"

using namespace ccg;

namespace {

Point origin(Space s) { return Point(s, base_point(s)); }

ConvexRegion lens(Space s, double sep) {
    const Point o = origin(s);
    const Point c2 = geodesic_walk(o, unit_tangent(o, Vec3{1, 0, 0}), sep);
    IntersectionResult x = intersect_regions(disk(o, 1.0), disk(c2, 1.0));
    REQUIRE(x.status == IntersectionResult::Status::CompactLens);
    return *x.region;
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    const ConvexRegion r = lens(Space::Hyperbolic, 0.9);
    const BoundaryCloud cloud = boundary_cloud(r, 700);
    const double inf = std::numeric_limits<double>::infinity();

    // boundary deviation of a rotated cloud
    const Isometry rot = rotation_about(r.witness(), 0.4);
    std::vector<Point> moved;
    for (const Point& p : cloud.points) moved.push_back(rot(p));
    CHECK(boundary_deviation_serial(moved, r, inf) ==
          boundary_deviation_parallel(moved, r, inf));

    // symmetry residuals for an exact and a broken candidate
    const Isometry flip = point_reflection(r.witness());
    CHECK(symmetry_residual_serial(r, cloud, flip, inf) ==
          symmetry_residual_parallel(r, cloud, flip, inf));
    CHECK(symmetry_residual_serial(r, cloud, rot, inf) ==
          symmetry_residual_parallel(r, cloud, rot, inf));

    // diameter reduction
    CHECK(max_pairwise_distance_serial(cloud.points) ==
          max_pairwise_distance_parallel(cloud.points));
}

TEST_CASE("early exit keeps accept and reject decisions exact") {
    const ConvexRegion r = lens(Space::Euclidean, 1.0);
    const BoundaryCloud cloud = boundary_cloud(r, 600);
    const double inf = std::numeric_limits<double>::infinity();
    const Isometry bad = rotation_about(r.witness(), 0.7);
    const double full = symmetry_residual_serial(r, cloud, bad, inf);
    const double thresh = full / 3;
    // with a stop threshold the value may be truncated, but it still exceeds
    // the threshold exactly when the full value does
    const double stopped_s = symmetry_residual_serial(r, cloud, bad, thresh);
    const double stopped_p = symmetry_residual_parallel(r, cloud, bad, thresh);
    CHECK(stopped_s > thresh);
    CHECK(stopped_p > thresh);
    CHECK(stopped_s <= full);
}

TEST_CASE("transform_arc tracks indirect recanonicalization") {
    Rng rng(9);
    for (Space s : {Space::Sphere, Space::Euclidean, Space::Hyperbolic}) {
        const Point o = origin(s);
        const ConvexRegion r = lens(s, s == Space::Sphere ? 0.7 : 0.9);
        const Isometry refl = reflection_in(o, unit_tangent(o, Vec3{0, 1, 0}));
        for (const CycleArc& arc : boundary_cloud(r, 64).arcs) {
            const CycleArc im = transform_arc(refl, arc);
            // endpoints map to endpoints (possibly swapped)
            const Point a = refl(arc.start()), b = refl(arc.end());
            const double d1 = std::min(distance(im.start(), a), distance(im.start(), b));
            const double d2 = std::min(distance(im.end(), a), distance(im.end(), b));
            CHECK(d1 <= 1e-9);
            CHECK(d2 <= 1e-9);
            // midpoints map onto the image arc
            const Point mid = arc.cycle.point_at(0.5 * (arc.s0 + arc.s1));
            CHECK(distance_to_arc(refl(mid), im) <= 1e-9);
        }
    }
}

TEST_CASE("residual is zero exactly for true symmetries") {
    const ConvexRegion r = lens(Space::Hyperbolic, 1.1);
    const BoundaryCloud cloud = boundary_cloud(r);
    const double inf = std::numeric_limits<double>::infinity();
    // the lens of congruent disks is preserved by the point reflection at the
    // midpoint of its vertices
    const auto verts = r.all_vertices();
    REQUIRE(verts.size() == 2);
    const Point mid = geodesic_point(verts[0].point, verts[1].point, 0.5);
    CHECK(symmetry_residual(r, cloud, point_reflection(mid), inf) <= 1e-9);
    // and broken by a rotation
    CHECK(symmetry_residual(r, cloud, rotation_about(mid, 0.5), inf) > 1e-3);
}
