#pragma once

// Points, distances, geodesics, angles and isometries of the three
// constant-curvature planes, on a shared R^3 embedding:
//   Sphere      unit sphere,            form  x1*y1 + x2*y2 + x3*y3
//   Euclidean   affine chart z = 1,     form  x1*y1 + x2*y2
//   Hyperbolic  upper hyperboloid sheet, form x1*y1 + x2*y2 - x3*y3
// Isometries are 3x3 matrices preserving the form (affine maps with last
// row (0,0,1) for the Euclidean chart), so every downstream module works
// with one matrix algebra.

#include <optional>

#include "ccg/config.hpp"
#include "ccg/errors.hpp"
#include "ccg/linalg.hpp"

namespace ccg {

enum class Space { Sphere, Euclidean, Hyperbolic };

enum class Model { Collinear, Conformal };

const char* to_string(Space s);

// Gram matrix of the ambient bilinear form.
Mat3 gram(Space s);

// Form inner product <a,b>.
double form_dot(Space s, const Vec3& a, const Vec3& b);

// Base point of each embedding: the sphere's south pole (the model centre),
// the chart origin, the hyperboloid apex.
Vec3 base_point(Space s);

struct Point {
    Vec3 v;
    Space space;

    Point(Space s, const Vec3& coords);  // validates the quadric invariant

    Vec2 xy() const { return {v.x, v.y}; }
};

bool approx_equal(const Point& a, const Point& b, double tol = 1e-9);

struct ModelPoint {
    Vec2 u;
    Model model;
    Space space;
};

class Isometry {
public:
    // Validates form preservation and derives the orientation sign.
    Isometry(Space s, const Mat3& m);

    static Isometry identity(Space s);

    Space space() const { return space_; }
    const Mat3& matrix() const { return m_; }
    int orientation() const { return orientation_; }  // +1 direct, -1 indirect

    Point operator()(const Point& p) const;
    Isometry then(const Isometry& next) const;  // next * this
    Isometry inverse() const;

    // max |(m G m^T - G)_ij|, plus the affine last-row defect for E^2
    double form_residual() const;

private:
    Space space_;
    Mat3 m_;
    int orientation_;
};

Isometry compose(const Isometry& outer, const Isometry& inner);

// --- distances, geodesics, angles -----------------------------------------

double distance(const Point& a, const Point& b);

// Point at parameter t in [0,1] along the (shorter) geodesic from a to b.
Point geodesic_point(const Point& a, const Point& b, double t);

// Unit tangent at `from` pointing toward `to`.
Vec3 direction(const Point& from, const Point& to);

// Geodesic exponential: walk distance t from p along unit tangent u.
Point geodesic_walk(const Point& p, const Vec3& u, double t);

// Angle at `apex` between the geodesics toward p and q, in [0, pi].
double angle_at(const Point& apex, const Point& p, const Point& q);

// Tangent-plane rotation of u by +pi/2 at p (counterclockwise in the models).
Vec3 left_normal(const Point& p, const Vec3& u);

// Normalize a tangent vector at p to unit form-length.
Vec3 unit_tangent(const Point& p, const Vec3& u);

// --- model maps ------------------------------------------------------------

ModelPoint to_model(const Point& p, Model model);
Point from_model(const ModelPoint& mp);

// d(model length)/d(intrinsic length) at model point u in direction e (unit).
double model_arc_element_ratio(Space s, Model model, const Vec2& u, const Vec2& e);

// Sharp angle-distortion derivative of the collinear model at distance r from
// the model centre, as a function of the intrinsic angle phi to the radial
// direction: cos r / (1 - sin^2 r sin^2 phi) on the sphere (r < pi/2),
// cosh r / (1 + sinh^2 r sin^2 phi) on the hyperbolic plane.
double angle_distortion(Space s, double r, double phi);

// --- isometry constructors --------------------------------------------------

Isometry rotation_about(const Point& centre, double angle);
Isometry point_reflection(const Point& centre);
// Translation along the geodesic through `on_line` with unit tangent `dir`
// (for the sphere this is the rotation about the geodesic's poles).
Isometry translation_along(const Point& on_line, const Vec3& dir, double dist);
Isometry reflection_in(const Point& on_line, const Vec3& dir);
// H^2 only: parabolic rotation about the ideal point with collinear-model
// boundary coordinate `ideal` (unit vector), parameter s.
Isometry ideal_rotation(Space s, const Vec2& ideal, double param);

// Unique direct isometry with a1 -> b1 and a2 -> b2 (requires equal distances);
// set `direct` false for the orientation-reversing one.
Isometry align(const Point& a1, const Point& a2, const Point& b1, const Point& b2,
               bool direct = true);

// Direct isometry taking the base point to p and the canonical first tangent
// direction to the unit tangent u at p.
Isometry frame_at(const Point& p, const Vec3& u);

}  // namespace ccg
