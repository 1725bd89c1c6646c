#include "ccg/space.hpp"

#include <cmath>

namespace ccg {

Config& config() {
    static Config cfg;
    return cfg;
}

const char* to_string(Space s) {
    switch (s) {
        case Space::Sphere: return "S2";
        case Space::Euclidean: return "E2";
        case Space::Hyperbolic: return "H2";
    }
    return "?";
}

Mat3 gram(Space s) {
    switch (s) {
        case Space::Sphere: return Mat3::diag(1, 1, 1);
        case Space::Euclidean: return Mat3::diag(1, 1, 0);
        case Space::Hyperbolic: return Mat3::diag(1, 1, -1);
    }
    return Mat3::identity();
}

double form_dot(Space s, const Vec3& a, const Vec3& b) {
    const double planar = a.x * b.x + a.y * b.y;
    switch (s) {
        case Space::Sphere: return planar + a.z * b.z;
        case Space::Euclidean: return planar;
        case Space::Hyperbolic: return planar - a.z * b.z;
    }
    return 0.0;
}

Vec3 base_point(Space s) {
    switch (s) {
        case Space::Sphere: return {0, 0, -1};
        case Space::Euclidean: return {0, 0, 1};
        case Space::Hyperbolic: return {0, 0, 1};
    }
    return {};
}

namespace {

Vec3 project_to_quadric(Space s, const Vec3& v) {
    switch (s) {
        case Space::Sphere:
            return v / v.norm();
        case Space::Euclidean:
            return {v.x / v.z, v.y / v.z, 1.0};
        case Space::Hyperbolic: {
            const double q = v.z * v.z - v.x * v.x - v.y * v.y;
            return v / std::sqrt(q);
        }
    }
    return v;
}

double quadric_defect(Space s, const Vec3& v) {
    switch (s) {
        case Space::Sphere: return std::fabs(form_dot(s, v, v) - 1.0);
        case Space::Euclidean: return std::fabs(v.z - 1.0);
        case Space::Hyperbolic: return std::fabs(form_dot(s, v, v) + 1.0);
    }
    return 0.0;
}

}  // namespace

Point::Point(Space s, const Vec3& coords) : v(coords), space(s) {
    if (s == Space::Hyperbolic)
        require(v.z > 0, Errc::OutOfRange, "hyperboloid point must be on the upper sheet");
    if (s == Space::Euclidean)
        require(std::fabs(v.z - 1.0) < 1e-9, Errc::OutOfRange, "chart point must have z = 1");
    if (quadric_defect(s, v) > config().quadric_drift) v = project_to_quadric(s, v);
}

bool approx_equal(const Point& a, const Point& b, double tol) {
    return a.space == b.space && distance(a, b) <= tol;
}

// --- Isometry ---------------------------------------------------------------

Isometry::Isometry(Space s, const Mat3& m) : space_(s), m_(m) {
    require(form_residual() <= config().form_preservation, Errc::OutOfRange,
            "matrix does not preserve the ambient form");
    double d = m_.det();
    if (s == Space::Euclidean) {
        // orientation comes from the linear 2x2 block
        d = m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0);
    }
    orientation_ = d >= 0 ? 1 : -1;
}

Isometry Isometry::identity(Space s) { return Isometry(s, Mat3::identity()); }

double Isometry::form_residual() const {
    const Mat3 G = gram(space_);
    const Mat3 r = m_ * G * m_.transposed() - G;
    double res = r.max_abs();
    if (space_ == Space::Euclidean) {
        res = std::max(res, std::fabs(m_(2, 0)));
        res = std::max(res, std::fabs(m_(2, 1)));
        res = std::max(res, std::fabs(m_(2, 2) - 1.0));
    }
    return res;
}

Point Isometry::operator()(const Point& p) const {
    require(p.space == space_, Errc::SpaceMismatch, "isometry applied across spaces");
    return Point(space_, m_ * p.v);
}

Isometry Isometry::then(const Isometry& next) const {
    require(next.space_ == space_, Errc::SpaceMismatch, "composing isometries across spaces");
    return Isometry(space_, next.m_ * m_);
}

Isometry Isometry::inverse() const { return Isometry(space_, m_.inverse()); }

Isometry compose(const Isometry& outer, const Isometry& inner) { return inner.then(outer); }

// --- metric ------------------------------------------------------------------

double distance(const Point& a, const Point& b) {
    require(a.space == b.space, Errc::SpaceMismatch, "distance across spaces");
    switch (a.space) {
        case Space::Euclidean:
            return (a.v - b.v).xy().norm();
        case Space::Sphere:
            return std::atan2(a.v.cross(b.v).norm(), a.v.dot(b.v));
        case Space::Hyperbolic: {
            // 2 asinh(|a-b|_J / 2) is stable near zero
            const Vec3 d = a.v - b.v;
            const double q = d.x * d.x + d.y * d.y - d.z * d.z;
            return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, q)));
        }
    }
    return 0.0;
}

Vec3 direction(const Point& from, const Point& to) {
    require(from.space == to.space, Errc::SpaceMismatch, "direction across spaces");
    const Space s = from.space;
    switch (s) {
        case Space::Euclidean: {
            Vec3 d = to.v - from.v;
            d.z = 0;
            require(d.norm() > 0, Errc::DegenerateGeodesic, "direction between equal points");
            return d / d.norm();
        }
        case Space::Sphere: {
            const double c = from.v.dot(to.v);
            Vec3 t = to.v - c * from.v;
            const double n = t.norm();
            require(n > 1e-15, Errc::DegenerateGeodesic,
                    "direction undefined for equal or antipodal points");
            return t / n;
        }
        case Space::Hyperbolic: {
            const double c = form_dot(s, from.v, to.v);  // -cosh d
            Vec3 t = to.v + c * from.v;
            const double n2 = form_dot(s, t, t);
            require(n2 > 1e-30, Errc::DegenerateGeodesic, "direction between equal points");
            return t / std::sqrt(n2);
        }
    }
    return {};
}

Point geodesic_walk(const Point& p, const Vec3& u, double t) {
    switch (p.space) {
        case Space::Euclidean:
            return Point(p.space, p.v + t * u);
        case Space::Sphere:
            return Point(p.space, std::cos(t) * p.v + std::sin(t) * u);
        case Space::Hyperbolic:
            return Point(p.space, std::cosh(t) * p.v + std::sinh(t) * u);
    }
    return p;
}

Point geodesic_point(const Point& a, const Point& b, double t) {
    const double d = distance(a, b);
    require(d > 0, Errc::DegenerateGeodesic, "geodesic through coincident points");
    if (a.space == Space::Sphere)
        require(pi - d > 1e-12, Errc::DegenerateGeodesic, "antipodal sphere points");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return geodesic_walk(a, direction(a, b), t * d);
}

Vec3 unit_tangent(const Point& p, const Vec3& u) {
    // project to the tangent plane, then normalize in the form
    const Space s = p.space;
    Vec3 t = u;
    if (s == Space::Euclidean) {
        t.z = 0;
    } else {
        const double pp = form_dot(s, p.v, p.v);
        t = t - (form_dot(s, p.v, t) / pp) * p.v;
    }
    const double n2 = form_dot(s, t, t);
    require(n2 > 1e-30, Errc::DegenerateAngle, "zero tangent vector");
    return t / std::sqrt(n2);
}

double angle_at(const Point& apex, const Point& p, const Point& q) {
    require(apex.space == p.space && apex.space == q.space, Errc::SpaceMismatch,
            "angle across spaces");
    require(distance(apex, p) > 0 && distance(apex, q) > 0, Errc::DegenerateAngle,
            "angle with zero-length leg");
    const Vec3 u = direction(apex, p);
    const Vec3 w = direction(apex, q);
    // 2 atan2(|u-w|, |u+w|) in the (positive definite) tangent metric
    const Space s = apex.space;
    const Vec3 dm = u - w, dp = u + w;
    const double nm = std::sqrt(std::max(0.0, form_dot(s, dm, dm)));
    const double np = std::sqrt(std::max(0.0, form_dot(s, dp, dp)));
    return 2.0 * std::atan2(nm, np);
}

Vec3 left_normal(const Point& p, const Vec3& u) {
    switch (p.space) {
        case Space::Euclidean:
            return {-u.y, u.x, 0};
        case Space::Sphere:
            return u.cross(p.v);
        case Space::Hyperbolic: {
            const Vec3 c = p.v.cross(u);
            return {c.x, c.y, -c.z};
        }
    }
    return {};
}

// --- models -----------------------------------------------------------------

ModelPoint to_model(const Point& p, Model model) {
    const Space s = p.space;
    switch (s) {
        case Space::Euclidean:
            return {p.xy(), model, s};
        case Space::Hyperbolic: {
            if (model == Model::Collinear) return {{p.v.x / p.v.z, p.v.y / p.v.z}, model, s};
            return {{p.v.x / (1.0 + p.v.z), p.v.y / (1.0 + p.v.z)}, model, s};
        }
        case Space::Sphere: {
            if (model == Model::Collinear) {
                require(p.v.z < 0, Errc::OutsideModelDomain,
                        "collinear model needs the open southern hemisphere");
                return {{-p.v.x / p.v.z, -p.v.y / p.v.z}, model, s};
            }
            require(1.0 - p.v.z > 1e-15, Errc::OutsideModelDomain,
                    "conformal model excludes the north pole");
            return {{2.0 * p.v.x / (1.0 - p.v.z), 2.0 * p.v.y / (1.0 - p.v.z)}, model, s};
        }
    }
    return {};
}

Point from_model(const ModelPoint& mp) {
    const Space s = mp.space;
    const double r2 = mp.u.norm2();
    switch (s) {
        case Space::Euclidean:
            return Point(s, {mp.u.x, mp.u.y, 1.0});
        case Space::Hyperbolic: {
            require(r2 < 1.0, Errc::OutsideModelDomain, "hyperbolic model point outside disk");
            if (mp.model == Model::Collinear) {
                const double w = 1.0 / std::sqrt(1.0 - r2);
                return Point(s, {mp.u.x * w, mp.u.y * w, w});
            }
            const double w = 1.0 / (1.0 - r2);
            return Point(s, {2.0 * mp.u.x * w, 2.0 * mp.u.y * w, (1.0 + r2) * w});
        }
        case Space::Sphere: {
            if (mp.model == Model::Collinear) {
                const double w = 1.0 / std::sqrt(1.0 + r2);
                return Point(s, {mp.u.x * w, mp.u.y * w, -w});
            }
            const double w = 1.0 / (1.0 + r2 / 4.0);
            return Point(s, {mp.u.x * w, mp.u.y * w, (r2 / 4.0 - 1.0) * w});
        }
    }
    return Point(s, base_point(s));
}

double model_arc_element_ratio(Space s, Model model, const Vec2& u, const Vec2& e) {
    const double r2 = u.norm2();
    const double radial = u.dot(e);
    switch (s) {
        case Space::Euclidean:
            return 1.0;
        case Space::Hyperbolic: {
            if (model == Model::Conformal) return (1.0 - r2) / 2.0;
            const double w = 1.0 - r2;
            const double ds2 = 1.0 / w + radial * radial / (w * w);
            return 1.0 / std::sqrt(ds2);
        }
        case Space::Sphere: {
            if (model == Model::Conformal) return 1.0 + r2 / 4.0;
            const double w = 1.0 + r2;
            const double ds2 = 1.0 / w - radial * radial / (w * w);
            return 1.0 / std::sqrt(ds2);
        }
    }
    return 1.0;
}

double angle_distortion(Space s, double r, double phi) {
    const double sp = std::sin(phi);
    switch (s) {
        case Space::Sphere: {
            require(r >= 0 && r < pi / 2, Errc::OutOfRange, "need r in [0, pi/2) on the sphere");
            const double sr = std::sin(r);
            return std::cos(r) / (1.0 - sr * sr * sp * sp);
        }
        case Space::Hyperbolic: {
            require(r >= 0, Errc::OutOfRange, "need r >= 0");
            const double sh = std::sinh(r);
            return std::cosh(r) / (1.0 + sh * sh * sp * sp);
        }
        case Space::Euclidean:
            fail(Errc::OutOfRange, "angle distortion is a spherical/hyperbolic quantity");
    }
    return 1.0;
}

// --- isometry constructors ----------------------------------------------------

namespace {

// Rotation about the z-axis; fixes the base point of every embedding, and all
// three model maps preserve the (x,y) orientation, so positive angle means
// counterclockwise in the model for every space.
Mat3 base_rotation(double angle) {
    const double c = std::cos(angle), sn = std::sin(angle);
    Mat3 m;
    m.a = {c, -sn, 0, sn, c, 0, 0, 0, 1};
    return m;
}

Mat3 frame_matrix(const Point& p, const Vec3& u) {
    const Vec3 n = left_normal(p, u);
    return Mat3::from_cols(u, n, p.space == Space::Sphere ? -p.v : p.v);
}

}  // namespace

Isometry frame_at(const Point& p, const Vec3& u) {
    // columns are the images of (e1, e2, base_point); for the sphere the base
    // point is -e3, hence the sign in frame_matrix
    return Isometry(p.space, frame_matrix(p, unit_tangent(p, u)));
}

Isometry rotation_about(const Point& centre, double angle) {
    Vec3 any{1, 0, 0};
    if (std::fabs(centre.v.x) > 0.9 * centre.v.norm()) any = {0, 1, 0};
    const Mat3 F = frame_matrix(centre, unit_tangent(centre, any));
    return Isometry(centre.space, F * base_rotation(angle) * F.inverse());
}

Isometry point_reflection(const Point& centre) { return rotation_about(centre, pi); }

Isometry translation_along(const Point& on_line, const Vec3& dir, double dist) {
    const Space s = on_line.space;
    const Vec3 u = unit_tangent(on_line, dir);
    Mat3 shift = Mat3::identity();
    switch (s) {
        case Space::Euclidean:
            shift(0, 2) = dist * u.x;
            shift(1, 2) = dist * u.y;
            return Isometry(s, shift);
        case Space::Sphere: {
            // advances the canonical geodesic (sin s, 0, -cos s) by dist
            const double c = std::cos(dist), sn = std::sin(dist);
            shift.a = {c, 0, -sn, 0, 1, 0, sn, 0, c};
            break;
        }
        case Space::Hyperbolic: {
            const double ch = std::cosh(dist), sh = std::sinh(dist);
            shift.a = {ch, 0, sh, 0, 1, 0, sh, 0, ch};
            break;
        }
    }
    const Mat3 F = frame_matrix(on_line, u);
    return Isometry(s, F * shift * F.inverse());
}

Isometry reflection_in(const Point& on_line, const Vec3& dir) {
    const Space s = on_line.space;
    const Vec3 u = unit_tangent(on_line, dir);
    if (s == Space::Euclidean) {
        const Vec2 a = on_line.xy();
        const double ux = u.x, uy = u.y;
        Mat3 m;
        m.a = {ux * ux - uy * uy, 2 * ux * uy, 0,
               2 * ux * uy, uy * uy - ux * ux, 0,
               0, 0, 1};
        const Vec2 ha{m(0, 0) * a.x + m(0, 1) * a.y, m(1, 0) * a.x + m(1, 1) * a.y};
        m(0, 2) = a.x - ha.x;
        m(1, 2) = a.y - ha.y;
        return Isometry(s, m);
    }
    // reflect in the form-orthogonal complement of the line's normal
    const Vec3 n = unit_tangent(on_line, left_normal(on_line, u));
    const Mat3 G = gram(s);
    const Mat3 m = Mat3::identity() - Mat3::outer(n, G * n) * 2.0;
    return Isometry(s, m);
}

Isometry ideal_rotation(Space s, const Vec2& ideal, double param) {
    require(s == Space::Hyperbolic, Errc::UnsupportedCongruence,
            "rotations about an infinite point exist only in H2");
    const Vec2 b = ideal.normalized();
    const Vec3 n{b.x, b.y, 1.0};  // null direction of the ideal point
    const Vec3 w{-b.y, b.x, 0.0};  // unit spacelike, form-orthogonal to n
    // nilpotent generator: A x = <w,x> n - <n,x> w, exp(sA) = I + sA + s^2/2 A^2
    const Mat3 G = gram(s);
    const Mat3 A = Mat3::outer(n, G * w) - Mat3::outer(w, G * n);
    const Mat3 m = Mat3::identity() + A * param + (A * A) * (0.5 * param * param);
    return Isometry(s, m);
}

Isometry align(const Point& a1, const Point& a2, const Point& b1, const Point& b2,
               bool direct) {
    require(a1.space == a2.space && a1.space == b1.space && a1.space == b2.space,
            Errc::SpaceMismatch, "align across spaces");
    require(std::fabs(distance(a1, a2) - distance(b1, b2)) < 1e-9, Errc::InvalidArgument,
            "align needs equidistant point pairs");
    const Isometry fa = frame_at(a1, direction(a1, a2));
    Isometry fb = frame_at(b1, direction(b1, b2));
    if (!direct) {
        // flip across the (b1, b1->b2) axis after mapping
        fb = compose(fb, Isometry(a1.space, Mat3::diag(1, -1, 1)));
    }
    return compose(fb, fa.inverse());
}

}  // namespace ccg
