#pragma once

// Constant-curvature curves (cycles): geodesics, circles, paracycles and
// hypercycles. A cycle is stored as a direct isometry (the frame) applied to a
// canonical representative plus its scalar parameter; the level-set data
// <c,x> = k in the ambient form is derived from it for the curved spaces.
//
// Conventions, kept in sync by every constructor and by transform_cycle:
//   - frames are direct isometries;
//   - the canonical arc-length parameterization runs with the convex side on
//     the left (closed cycles counterclockwise in the models);
//   - side_value() is the signed intrinsic distance to the curve, positive on
//     the convex side (circle interior, horoball, base-line side, chosen
//     half-plane).

#include <optional>
#include <vector>

#include "ccg/space.hpp"

namespace ccg {

enum class CycleKind { Geodesic, Circle, Paracycle, Hypercycle };

const char* to_string(CycleKind k);

class Cycle {
public:
    Space space() const { return frame_.space(); }
    CycleKind kind() const { return kind_; }
    const Isometry& frame() const { return frame_; }

    // circle radius r, hypercycle base distance l; 0 otherwise
    double param() const { return param_; }

    bool closed() const;
    double period() const;  // arc length of a full turn (closed cycles only)

    Point point_at(double s) const;
    Vec3 tangent_at(double s) const;     // unit, in the travel direction
    double param_of(const Point& p) const;  // arc-length parameter of the foot

    // signed intrinsic distance to the curve, positive on the convex side
    double side_value(const Point& p) const;

    // geodesic curvature: cot r / 1/r / coth r, 1, tanh l, 0
    double curvature() const;

    // level-set data for the curved spaces; E2 circles have no linear level set
    Vec3 level_normal() const { return level_c_; }
    double level_offset() const { return level_k_; }

    // circles only
    Point centre() const;

    // ideal endpoints as collinear-model boundary coordinates (H2 open cycles;
    // the hypercycle reports its base line's ideal points)
    std::vector<Vec2> ideal_points() const;

    // identical carriers up to normalization (ignores the convex-side choice
    // for geodesics)
    bool same_carrier(const Cycle& other, double tol = 1e-9) const;

    friend Cycle make_geodesic(const Point& a, const Point& b);
    friend Cycle make_geodesic_dir(const Point& on_line, const Vec3& dir);
    friend Cycle make_circle(const Point& centre, double r);
    friend Cycle make_paracycle(const Vec2& ideal, const Point& through);
    friend Cycle make_hypercycle(const Cycle& base, double signed_dist);
    friend Cycle flipped(const Cycle& geodesic);
    friend Cycle transform_cycle(const Isometry& iso, const Cycle& c);

private:
    Cycle(CycleKind kind, Isometry frame, double param);
    void derive_level_set();

    CycleKind kind_;
    Isometry frame_;
    double param_;
    Vec3 level_c_{};
    double level_k_ = 0.0;
};

// Geodesic through two points, travel direction a -> b (convex side on the
// left of travel). In S2 this is the great circle.
Cycle make_geodesic(const Point& a, const Point& b);
Cycle make_geodesic_dir(const Point& on_line, const Vec3& dir);

// Circle of radius r about `centre` (S2: r in (0, pi/2]).
Cycle make_circle(const Point& centre, double r);

// H2 paracycle with ideal centre at the collinear-model boundary coordinate
// `ideal`, passing through `through`.
Cycle make_paracycle(const Vec2& ideal, const Point& through);

// H2 hypercycle at distance |signed_dist| > 0 from `base`; positive lies on
// the base's left. The convex side contains the base line.
Cycle make_hypercycle(const Cycle& base, double signed_dist);

// Same geodesic carrier, opposite convex side.
Cycle flipped(const Cycle& geodesic);

Cycle transform_cycle(const Isometry& iso, const Cycle& c);

double curvature_of(const Cycle& c);
double side_of(const Cycle& c, const Point& p);

// --- arcs --------------------------------------------------------------------

// Directed arc from param s0 to s1 (forward travel; closed cycles may wrap,
// with s1 - s0 in (0, period]). Infinite endpoints mark unbounded arcs.
struct CycleArc {
    Cycle cycle;
    double s0 = 0.0;
    double s1 = 0.0;
    int orientation = 1;

    bool unbounded() const { return std::isinf(s0) || std::isinf(s1); }
    double length() const { return s1 - s0; }
    Point start() const { return cycle.point_at(s0); }
    Point end() const { return cycle.point_at(s1); }
};

// n points from start to end, uniformly spaced in arc length. Unbounded arcs
// need an explicit clip half-width (intrinsic units around s = 0).
std::vector<Point> sample_arc(const CycleArc& arc, std::size_t n,
                              std::optional<double> clip = std::nullopt);

// --- intersection --------------------------------------------------------------

struct CycleIntersection {
    enum class Kind { Empty, Points, Coincident } kind = Kind::Empty;
    std::vector<Point> points;  // one or two
    bool tangent = false;
};

CycleIntersection intersect_cycles(const Cycle& a, const Cycle& b);

// H2 geodesic pair relation from the normals' form product.
enum class LineRelation { Intersecting, Parallel, Ultraparallel, Coincident };
LineRelation classify_line_pair(const Cycle& a, const Cycle& b);

// Unique common perpendicular of two ultraparallel H2 geodesics.
Cycle common_perpendicular(const Cycle& a, const Cycle& b);

// Foot of the perpendicular from p to a geodesic.
Point foot_on_geodesic(const Cycle& g, const Point& p);

// Geodesic through p orthogonal to `base`.
Cycle perpendicular_through_point(const Cycle& base, const Point& p);

// H2: geodesic with the two given ideal endpoints (collinear boundary coords).
Cycle geodesic_between_ideals(const Vec2& u1, const Vec2& u2);

// H2: geodesic ray carrier through p ending at the given ideal point.
Cycle geodesic_toward_ideal(const Point& p, const Vec2& ideal);

// H2: the geodesic through the ideal point orthogonal to `base` (the ideal
// point must not be an endpoint of the base line).
Cycle perpendicular_through_ideal(const Cycle& base, const Vec2& ideal);

// Exact distance from p to the sub-arc (uses the signed cycle distance when
// the foot lies inside the parameter window, endpoint distances otherwise).
double distance_to_arc(const Point& p, const CycleArc& arc);

}  // namespace ccg
