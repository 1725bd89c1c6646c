#pragma once

// Proper closed convex sets with interior, bounded by finitely many cycles.
// A region is the intersection of convex half-domains (one per cycle, the
// cycle's positive side); boundary arc-chains, support/radial functions,
// diameter and Hausdorff distance are derived from that representation.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ccg/cycles.hpp"

namespace ccg {

struct Vertex {
    Point point;
    double outer_angle;  // pi minus the interior angle, in [0, pi)
};

struct ArcChain {
    std::vector<CycleArc> arcs;
    bool closed = false;
    std::vector<Vertex> vertices;  // junctions with a genuine corner

    double length() const;  // finite part only
};

class ConvexRegion {
public:
    // `halves` are cycles whose positive (convex) side is kept. The witness
    // must be interior; it doubles as the membership certificate.
    ConvexRegion(Space space, std::vector<Cycle> halves, const Point& witness,
                 std::optional<Isometry> placement = std::nullopt);

    ConvexRegion(const ConvexRegion& other);
    ConvexRegion& operator=(const ConvexRegion& other);

    Space space() const { return space_; }
    const std::vector<Cycle>& halves() const { return placed_; }
    const std::vector<Cycle>& canonical_halves() const { return halves_; }
    const Isometry& placement() const { return placement_; }
    const Point& witness() const { return witness_; }

    // smallest constraint margin; >= -on_cycle tolerance means contained
    double margin(const Point& p) const;
    bool contains(const Point& p) const;

    const std::vector<ArcChain>& boundary_chains() const;
    std::vector<bool> redundant_flags() const;  // per constraint, probe-based

    bool compact() const;
    std::size_t vertex_count() const;
    std::vector<Vertex> all_vertices() const;

    // closures' ideal points, exact from the constraints (H2 only); isolated
    // points only, boundary arcs of the model circle are reported separately
    std::vector<Vec2> ideal_points() const;
    bool closure_meets_ideal_arc() const;

private:
    void trace_boundary() const;

    Space space_;
    std::vector<Cycle> halves_;   // canonical
    std::vector<Cycle> placed_;   // placement applied
    Isometry placement_;
    Point witness_;

    mutable std::mutex cache_mutex_;
    mutable bool traced_ = false;
    mutable std::vector<ArcChain> chains_;
    mutable std::vector<bool> redundant_;
};

ConvexRegion transform_region(const Isometry& iso, const ConvexRegion& r);

// --- constructors ------------------------------------------------------------

ConvexRegion disk(const Point& centre, double r);
// the positive side of the geodesic through `on_line` with direction `dir`
ConvexRegion half_plane(const Point& on_line, const Vec3& dir);
// E2 only: points within width/2 of the line through `on_line` along `dir`
ConvexRegion strip(const Point& on_line, const Vec3& dir, double width);
// H2 only: horoball with ideal centre `ideal`, boundary through `through`
ConvexRegion paraball(const Vec2& ideal, const Point& through);
// H2 only: both-sided hypercycle domain {dist(., base) <= l}, or one-sided
// ({signed dist >= -l}) when `both_sides` is false
ConvexRegion hypercycle_region(const Cycle& base, double l, bool both_sides = true);
// intersection of the given half-domains; witness searched if not supplied
ConvexRegion from_halves(Space space, std::vector<Cycle> halves,
                         std::optional<Point> witness = std::nullopt);
// geodesic polygon with the given vertices in counterclockwise order
ConvexRegion polygon(Space space, const std::vector<Point>& verts);

// --- intersection ---------------------------------------------------------------

struct IntersectionResult {
    enum class Status { EmptyInterior, CompactLens, Unbounded, DegenerateChord };
    Status status = Status::EmptyInterior;
    std::optional<ConvexRegion> region;       // CompactLens / Unbounded
    std::optional<ArcChain> chain;            // CompactLens
    std::optional<std::pair<Point, Point>> chord;  // DegenerateChord
    std::string description;
};

IntersectionResult intersect_regions(const ConvexRegion& a, const ConvexRegion& b);

// --- scalar operations -------------------------------------------------------------

// support function of the collinear-model image, recentred so that `base`
// maps to the model centre; u is a unit direction in the model plane
double support_function(const ConvexRegion& r, const Point& base, const Vec2& u);

// length of the maximal geodesic segment from `base` in tangent direction u
// staying inside r; +inf for unbounded regions when the ray never exits
double radial_function(const ConvexRegion& r, const Point& base, const Vec3& u);

double diameter(const ConvexRegion& r);
double perimeter(const ConvexRegion& r);
double area(const ConvexRegion& r);

// intrinsic Hausdorff distance between compact regions
double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b);

// distance from p to the region (0 inside)
double region_distance(const Point& p, const ConvexRegion& r);

// dense boundary sample cloud (n per chain), with the arcs for refinement
struct BoundaryCloud {
    std::vector<Point> points;
    std::vector<CycleArc> arcs;
};
BoundaryCloud boundary_cloud(const ConvexRegion& r, std::size_t n_per_chain = 0);

}  // namespace ccg
