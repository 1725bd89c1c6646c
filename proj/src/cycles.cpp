#include "ccg/cycles.hpp"

#include <algorithm>
#include <cmath>

namespace ccg {

const char* to_string(CycleKind k) {
    switch (k) {
        case CycleKind::Geodesic: return "geodesic";
        case CycleKind::Circle: return "circle";
        case CycleKind::Paracycle: return "paracycle";
        case CycleKind::Hypercycle: return "hypercycle";
    }
    return "?";
}

namespace {

// metric radius of a circle: chart radius of the canonical representative
double metric_radius(Space s, double r) {
    switch (s) {
        case Space::Euclidean: return r;
        case Space::Sphere: return std::sin(r);
        case Space::Hyperbolic: return std::sinh(r);
    }
    return r;
}

Mat3 half_turn() {
    Mat3 m;
    m.a = {-1, 0, 0, 0, -1, 0, 0, 0, 1};
    return m;
}

// orientation-reversing canonical self-map that keeps the convex side
Mat3 canonical_flip(CycleKind k) {
    Mat3 m = Mat3::identity();
    if (k == CycleKind::Circle || k == CycleKind::Paracycle)
        m.a = {1, 0, 0, 0, -1, 0, 0, 0, 1};
    else
        m.a = {-1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
}

}  // namespace

Cycle::Cycle(CycleKind kind, Isometry frame, double param)
    : kind_(kind), frame_(std::move(frame)), param_(param) {
    derive_level_set();
}

void Cycle::derive_level_set() {
    const Space s = space();
    const Mat3& M = frame_.matrix();
    switch (kind_) {
        case CycleKind::Geodesic: {
            if (s == Space::Euclidean) {
                const Vec2 dir{M(0, 0), M(1, 0)};
                const Vec2 n = dir.perp();  // convex side normal
                level_c_ = {n.x, n.y, 0};
                level_k_ = n.x * M(0, 2) + n.y * M(1, 2);
            } else {
                level_c_ = M * Vec3{0, 1, 0};
                level_k_ = 0.0;
            }
            break;
        }
        case CycleKind::Circle: {
            const Vec3 z = M * base_point(s);
            level_c_ = z;
            if (s == Space::Sphere) level_k_ = std::cos(param_);
            else if (s == Space::Hyperbolic) level_k_ = -std::cosh(param_);
            else level_k_ = param_;  // E2 circles carry (centre, r) here
            break;
        }
        case CycleKind::Paracycle:
            level_c_ = M * Vec3{1, 0, 1};
            level_k_ = -1.0;
            break;
        case CycleKind::Hypercycle:
            level_c_ = M * Vec3{0, 1, 0};
            level_k_ = std::sinh(param_);
            break;
    }
}

bool Cycle::closed() const {
    if (kind_ == CycleKind::Circle) return true;
    return kind_ == CycleKind::Geodesic && space() == Space::Sphere;
}

double Cycle::period() const {
    require(closed(), Errc::UnboundedArc, "period of an open cycle");
    if (kind_ == CycleKind::Geodesic) return 2.0 * pi;
    return 2.0 * pi * metric_radius(space(), param_);
}

Point Cycle::point_at(double s) const {
    const Space sp = space();
    Vec3 q;
    switch (kind_) {
        case CycleKind::Geodesic:
            switch (sp) {
                case Space::Euclidean: q = {s, 0, 1}; break;
                case Space::Sphere: q = {std::sin(s), 0, -std::cos(s)}; break;
                case Space::Hyperbolic: q = {std::sinh(s), 0, std::cosh(s)}; break;
            }
            break;
        case CycleKind::Circle: {
            const double rho = metric_radius(sp, param_);
            const double th = s / rho;
            const double h = sp == Space::Sphere   ? -std::cos(param_)
                             : sp == Space::Euclidean ? 1.0
                                                      : std::cosh(param_);
            q = {rho * std::cos(th), rho * std::sin(th), h};
            break;
        }
        case CycleKind::Paracycle:
            q = {0.5 * s * s, -s, 1.0 + 0.5 * s * s};
            break;
        case CycleKind::Hypercycle: {
            const double ch = std::cosh(param_);
            const double t = s / ch;
            q = {-std::sinh(t) * ch, std::sinh(param_), std::cosh(t) * ch};
            break;
        }
    }
    return Point(space(), frame_.matrix() * q);
}

Vec3 Cycle::tangent_at(double s) const {
    const Space sp = space();
    Vec3 t;
    switch (kind_) {
        case CycleKind::Geodesic:
            switch (sp) {
                case Space::Euclidean: t = {1, 0, 0}; break;
                case Space::Sphere: t = {std::cos(s), 0, std::sin(s)}; break;
                case Space::Hyperbolic: t = {std::cosh(s), 0, std::sinh(s)}; break;
            }
            break;
        case CycleKind::Circle: {
            const double th = s / metric_radius(sp, param_);
            t = {-std::sin(th), std::cos(th), 0};
            break;
        }
        case CycleKind::Paracycle:
            t = {s, -1, s};
            break;
        case CycleKind::Hypercycle: {
            const double tt = s / std::cosh(param_);
            t = {-std::cosh(tt), 0, std::sinh(tt)};
            break;
        }
    }
    return frame_.matrix() * t;
}

double Cycle::param_of(const Point& p) const {
    require(p.space == space(), Errc::SpaceMismatch, "param_of across spaces");
    const Vec3 q = frame_.inverse().matrix() * p.v;
    const Space sp = space();
    switch (kind_) {
        case CycleKind::Geodesic:
            switch (sp) {
                case Space::Euclidean: return q.x;
                case Space::Sphere: {
                    if (std::fabs(q.x) + std::fabs(q.z) < 1e-14) return 0.0;  // pole
                    return std::atan2(q.x, -q.z);
                }
                case Space::Hyperbolic: {
                    const double w = std::sqrt(std::max(1e-300, q.z * q.z - q.x * q.x));
                    return std::asinh(q.x / w);
                }
            }
            return 0.0;
        case CycleKind::Circle: {
            if (std::fabs(q.x) + std::fabs(q.y) < 1e-14) return 0.0;  // centre axis
            return std::atan2(q.y, q.x) * metric_radius(sp, param_);
        }
        case CycleKind::Paracycle: {
            const double nu = q.x - q.z;  // <n0,q>, strictly negative
            return q.y / nu;
        }
        case CycleKind::Hypercycle: {
            const double w = std::sqrt(std::max(1e-300, q.z * q.z - q.x * q.x));
            return -std::asinh(q.x / w) * std::cosh(param_);
        }
    }
    return 0.0;
}

double Cycle::side_value(const Point& p) const {
    require(p.space == space(), Errc::SpaceMismatch, "side_value across spaces");
    const Space sp = space();
    switch (kind_) {
        case CycleKind::Geodesic: {
            if (sp == Space::Euclidean)
                return level_c_.x * p.v.x + level_c_.y * p.v.y - level_k_;
            const double v = form_dot(sp, level_c_, p.v);
            return sp == Space::Sphere ? std::asin(clamp_unit(v)) : std::asinh(v);
        }
        case CycleKind::Circle:
            return param_ - distance(centre(), p);
        case CycleKind::Paracycle:
            return -std::log(-form_dot(sp, level_c_, p.v));
        case CycleKind::Hypercycle:
            return param_ - std::asinh(form_dot(sp, level_c_, p.v));
    }
    return 0.0;
}

double Cycle::curvature() const {
    switch (kind_) {
        case CycleKind::Geodesic: return 0.0;
        case CycleKind::Circle:
            switch (space()) {
                case Space::Sphere: return 1.0 / std::tan(param_);
                case Space::Euclidean: return 1.0 / param_;
                case Space::Hyperbolic: return 1.0 / std::tanh(param_);
            }
            return 0.0;
        case CycleKind::Paracycle: return 1.0;
        case CycleKind::Hypercycle: return std::tanh(param_);
    }
    return 0.0;
}

Point Cycle::centre() const {
    require(kind_ == CycleKind::Circle, Errc::UnsupportedCycle, "centre of a non-circle");
    return Point(space(), frame_.matrix() * base_point(space()));
}

std::vector<Vec2> Cycle::ideal_points() const {
    require(space() == Space::Hyperbolic, Errc::UnsupportedCycle,
            "ideal points exist only in H2");
    auto klein = [&](const Vec3& null_dir) {
        const Vec3 d = frame_.matrix() * null_dir;
        return Vec2{d.x / d.z, d.y / d.z};
    };
    switch (kind_) {
        case CycleKind::Geodesic:
            return {klein({-1, 0, 1}), klein({1, 0, 1})};  // backward, forward
        case CycleKind::Paracycle:
            return {klein({1, 0, 1})};
        case CycleKind::Hypercycle:
            return {klein({1, 0, 1}), klein({-1, 0, 1})};  // travel runs in -x
        case CycleKind::Circle:
            return {};
    }
    return {};
}

bool Cycle::same_carrier(const Cycle& other, double tol) const {
    if (space() != other.space() || kind_ != other.kind_) return false;
    if (kind_ == CycleKind::Circle) {
        return std::fabs(param_ - other.param_) <= tol &&
               distance(centre(), other.centre()) <= tol;
    }
    const Vec3 c1 = level_c_, c2 = other.level_c_;
    const double k1 = level_k_, k2 = other.level_k_;
    const double same = (c1 - c2).norm() + std::fabs(k1 - k2);
    const double anti = (c1 + c2).norm() + std::fabs(k1 + k2);
    return std::min(same, anti) <= tol;
}

// --- constructors ---------------------------------------------------------------

Cycle make_geodesic(const Point& a, const Point& b) {
    return make_geodesic_dir(a, direction(a, b));
}

Cycle make_geodesic_dir(const Point& on_line, const Vec3& dir) {
    return Cycle(CycleKind::Geodesic, frame_at(on_line, dir), 0.0);
}

Cycle make_circle(const Point& centre, double r) {
    require(r > 0, Errc::OutOfRange, "circle radius must be positive");
    if (centre.space == Space::Sphere)
        require(r <= pi / 2 + 1e-12, Errc::OutOfRange, "sphere circles need r <= pi/2");
    Vec3 any{1, 0, 0};
    if (std::fabs(centre.v.x) > 0.9 * centre.v.norm()) any = {0, 1, 0};
    return Cycle(CycleKind::Circle, frame_at(centre, unit_tangent(centre, any)), r);
}

Cycle make_paracycle(const Vec2& ideal, const Point& through) {
    require(through.space == Space::Hyperbolic, Errc::UnsupportedCycle,
            "paracycles exist only in H2");
    const Vec2 b = ideal.normalized();
    const Vec3 n{b.x, b.y, 1.0};
    // tangent at `through` pointing to the ideal centre
    const Vec3 radial = n + form_dot(Space::Hyperbolic, through.v, n) * through.v;
    return Cycle(CycleKind::Paracycle, frame_at(through, radial), 0.0);
}

Cycle make_hypercycle(const Cycle& base, double signed_dist) {
    require(base.space() == Space::Hyperbolic, Errc::UnsupportedCycle,
            "hypercycles exist only in H2");
    require(base.kind() == CycleKind::Geodesic, Errc::UnsupportedCycle,
            "hypercycle base must be a geodesic");
    require(signed_dist != 0.0, Errc::OutOfRange, "hypercycle distance must be nonzero");
    Isometry f = base.frame();
    if (signed_dist < 0) f = compose(f, Isometry(base.space(), half_turn()));
    return Cycle(CycleKind::Hypercycle, f, std::fabs(signed_dist));
}

Cycle flipped(const Cycle& geodesic) {
    require(geodesic.kind() == CycleKind::Geodesic, Errc::UnsupportedCycle,
            "only geodesics have a free side choice");
    const Isometry f = compose(geodesic.frame(), Isometry(geodesic.space(), half_turn()));
    return Cycle(CycleKind::Geodesic, f, 0.0);
}

Cycle transform_cycle(const Isometry& iso, const Cycle& c) {
    Isometry f = compose(iso, c.frame());
    if (f.orientation() < 0)
        f = compose(f, Isometry(c.space(), canonical_flip(c.kind())));
    return Cycle(c.kind(), f, c.param());
}

double curvature_of(const Cycle& c) { return c.curvature(); }
double side_of(const Cycle& c, const Point& p) { return c.side_value(p); }

// --- arcs --------------------------------------------------------------------------

std::vector<Point> sample_arc(const CycleArc& arc, std::size_t n, std::optional<double> clip) {
    require(n >= 2, Errc::OutOfRange, "need at least two samples");
    double s0 = arc.s0, s1 = arc.s1;
    if (arc.unbounded()) {
        require(clip.has_value(), Errc::UnboundedArc,
                "unbounded arc needs an explicit clip half-width");
        if (std::isinf(s0)) s0 = -*clip;
        if (std::isinf(s1)) s1 = *clip;
    }
    std::vector<Point> out;
    out.reserve(n);
    const double step = (s1 - s0) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = arc.orientation >= 0 ? s0 + step * double(i)
                                              : s1 - step * double(i);
        out.push_back(arc.cycle.point_at(s));
    }
    return out;
}

double distance_to_arc(const Point& p, const CycleArc& arc) {
    double s = arc.cycle.param_of(p);
    double s0 = arc.s0, s1 = arc.s1;
    if (arc.cycle.closed()) {
        const double per = arc.cycle.period();
        if (s1 - s0 >= per - 1e-12) return std::fabs(arc.cycle.side_value(p));
        s = std::remainder(s - s0, per);
        if (s < 0) s += per;
        s += s0;  // now in [s0, s0 + per)
    }
    if (s >= s0 && s <= s1) return std::fabs(arc.cycle.side_value(p));
    double best = std::numeric_limits<double>::infinity();
    if (std::isfinite(s0)) best = std::min(best, distance(p, arc.cycle.point_at(s0)));
    if (std::isfinite(s1)) best = std::min(best, distance(p, arc.cycle.point_at(s1)));
    return best;
}

// --- intersection ---------------------------------------------------------------------

namespace {

CycleIntersection merge_roots(Space sp, std::vector<Vec3> roots) {
    CycleIntersection out;
    std::vector<Point> pts;
    for (const Vec3& v : roots) {
        if (sp == Space::Hyperbolic) {
            if (v.z <= 0 || form_dot(sp, v, v) >= 0) continue;  // wrong sheet / not a point
        }
        pts.emplace_back(sp, v);
    }
    if (pts.size() == 2 && distance(pts[0], pts[1]) <= config().tangency_window) {
        pts.pop_back();
        out.tangent = true;
    }
    if (pts.empty()) return out;
    out.kind = CycleIntersection::Kind::Points;
    out.points = std::move(pts);
    return out;
}

CycleIntersection intersect_euclidean(const Cycle& a, const Cycle& b) {
    const Space sp = Space::Euclidean;
    auto line_data = [](const Cycle& g) {
        return std::pair<Vec2, double>({g.level_normal().x, g.level_normal().y},
                                       g.level_offset());
    };
    const bool a_line = a.kind() == CycleKind::Geodesic;
    const bool b_line = b.kind() == CycleKind::Geodesic;
    std::vector<Vec3> roots;
    if (a_line && b_line) {
        auto [n1, k1] = line_data(a);
        auto [n2, k2] = line_data(b);
        const double det = n1.cross(n2);
        if (std::fabs(det) < 1e-14) return {};
        const double x = (k1 * n2.y - k2 * n1.y) / det;
        const double y = (n1.x * k2 - n2.x * k1) / det;
        roots.push_back({x, y, 1});
        return merge_roots(sp, roots);
    }
    if (a_line != b_line) {
        const Cycle& line = a_line ? a : b;
        const Cycle& circ = a_line ? b : a;
        auto [n, k] = line_data(line);
        const Vec2 z = circ.centre().xy();
        const double r = circ.param();
        const double h = n.dot(z) - k;  // signed distance centre -> line
        const double disc = r * r - h * h;
        const Vec2 foot = z - h * n;
        if (disc < 0) {
            if (-disc < config().tangency_window * config().tangency_window)
                roots.push_back({foot.x, foot.y, 1});
            return merge_roots(sp, roots);
        }
        const double t = std::sqrt(std::max(0.0, disc));
        const Vec2 d = n.perp();
        roots.push_back({foot.x + t * d.x, foot.y + t * d.y, 1});
        roots.push_back({foot.x - t * d.x, foot.y - t * d.y, 1});
        return merge_roots(sp, roots);
    }
    const Vec2 z1 = a.centre().xy(), z2 = b.centre().xy();
    const double r1 = a.param(), r2 = b.param();
    const double d = (z2 - z1).norm();
    if (d < 1e-14) return {};  // concentric, not coincident
    const double x = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    const double h2 = r1 * r1 - x * x;
    const Vec2 u = (z2 - z1) / d;
    const Vec2 foot = z1 + x * u;
    if (h2 < 0) {
        if (-h2 < config().tangency_window * config().tangency_window)
            roots.push_back({foot.x, foot.y, 1});
        return merge_roots(sp, roots);
    }
    const double h = std::sqrt(std::max(0.0, h2));
    const Vec2 v = u.perp();
    roots.push_back({foot.x + h * v.x, foot.y + h * v.y, 1});
    roots.push_back({foot.x - h * v.x, foot.y - h * v.y, 1});
    return merge_roots(sp, roots);
}

// level sets <c1,x> = k1, <c2,x> = k2 on the quadric <x,x> = +-1
CycleIntersection intersect_curved(const Cycle& a, const Cycle& b) {
    const Space sp = a.space();
    const Mat3 G = gram(sp);
    const Vec3 a1 = G * a.level_normal(), a2 = G * b.level_normal();
    const double k1 = a.level_offset(), k2 = b.level_offset();
    Vec3 d = a1.cross(a2);
    const double dn = d.norm();
    if (dn < 1e-13 * a1.norm() * a2.norm()) return {};  // parallel planes, no carrier match
    d = d / dn;
    const double g11 = a1.dot(a1), g12 = a1.dot(a2), g22 = a2.dot(a2);
    const double det = g11 * g22 - g12 * g12;
    const double al = (k1 * g22 - k2 * g12) / det;
    const double be = (k2 * g11 - k1 * g12) / det;
    const Vec3 x0 = al * a1 + be * a2;
    const double rhs = sp == Space::Sphere ? 1.0 : -1.0;
    const double A = form_dot(sp, d, d);
    const double B = 2.0 * form_dot(sp, x0, d);
    const double C = form_dot(sp, x0, x0) - rhs;
    std::vector<Vec3> roots;
    if (std::fabs(A) < 1e-14) {
        if (std::fabs(B) > 1e-14) roots.push_back(x0 + (-C / B) * d);
        return merge_roots(sp, roots);
    }
    const double disc = B * B - 4 * A * C;
    if (disc < 0) {
        if (disc > -1e-12 * (B * B + std::fabs(4 * A * C)))
            roots.push_back(x0 + (-B / (2 * A)) * d);
        return merge_roots(sp, roots);
    }
    const double sq = std::sqrt(disc);
    // stable quadratic roots
    const double q = -0.5 * (B + (B >= 0 ? sq : -sq));
    roots.push_back(x0 + (q / A) * d);
    if (std::fabs(q) > 1e-300) roots.push_back(x0 + (C / q) * d);
    return merge_roots(sp, roots);
}

}  // namespace

CycleIntersection intersect_cycles(const Cycle& a, const Cycle& b) {
    require(a.space() == b.space(), Errc::SpaceMismatch, "intersecting cycles across spaces");
    if (a.same_carrier(b)) {
        CycleIntersection out;
        out.kind = CycleIntersection::Kind::Coincident;
        return out;
    }
    if (a.space() == Space::Euclidean) return intersect_euclidean(a, b);
    return intersect_curved(a, b);
}

LineRelation classify_line_pair(const Cycle& a, const Cycle& b) {
    require(a.space() == Space::Hyperbolic && b.space() == Space::Hyperbolic,
            Errc::UnsupportedCycle, "line pair relations are an H2 notion");
    require(a.kind() == CycleKind::Geodesic && b.kind() == CycleKind::Geodesic,
            Errc::UnsupportedCycle, "line pair relations need geodesics");
    if (a.same_carrier(b)) return LineRelation::Coincident;
    const double q = std::fabs(form_dot(Space::Hyperbolic, a.level_normal(), b.level_normal()));
    if (q < 1.0 - 1e-9) return LineRelation::Intersecting;
    if (q <= 1.0 + 1e-9) return LineRelation::Parallel;
    return LineRelation::Ultraparallel;
}

Cycle common_perpendicular(const Cycle& a, const Cycle& b) {
    require(classify_line_pair(a, b) == LineRelation::Ultraparallel, Errc::UnsupportedCycle,
            "common perpendicular needs ultraparallel lines");
    const Space sp = Space::Hyperbolic;
    Vec3 n = a.level_normal().cross(b.level_normal());
    n = Vec3{n.x, n.y, -n.z};  // J * cross
    n = n / std::sqrt(form_dot(sp, n, n));
    // anchor: base point projected onto the line, tangent inside the line
    const Vec3 o = base_point(sp);
    Vec3 v = o - form_dot(sp, n, o) * n;
    v = v / std::sqrt(-form_dot(sp, v, v));
    if (v.z < 0) v = -v;
    const Point anchor(sp, v);
    const Vec3 c = v.cross(n);
    const Vec3 t{c.x, c.y, -c.z};
    return make_geodesic_dir(anchor, t);
}

Point foot_on_geodesic(const Cycle& g, const Point& p) {
    require(g.kind() == CycleKind::Geodesic, Errc::UnsupportedCycle,
            "foot needs a geodesic");
    return g.point_at(g.param_of(p));
}

Cycle perpendicular_through_point(const Cycle& base, const Point& p) {
    const Point f = foot_on_geodesic(base, p);
    if (distance(p, f) > 1e-9) return make_geodesic(p, f);
    const Vec3 t = base.tangent_at(base.param_of(p));
    return make_geodesic_dir(f, left_normal(f, t));
}

namespace {
// H2 geodesic with the given unit spacelike normal, anchored near the apex
Cycle geodesic_from_normal(const Vec3& n) {
    const Space sp = Space::Hyperbolic;
    const Vec3 o = base_point(sp);
    Vec3 v = o - form_dot(sp, n, o) * n;
    v = v / std::sqrt(-form_dot(sp, v, v));
    if (v.z < 0) v = -v;
    const Point anchor(sp, v);
    const Vec3 c = v.cross(n);
    return make_geodesic_dir(anchor, {c.x, c.y, -c.z});
}
}  // namespace

Cycle geodesic_between_ideals(const Vec2& u1, const Vec2& u2) {
    require((u1 - u2).norm() > 1e-12, Errc::UnsupportedCycle,
            "a geodesic needs two distinct ideal points");
    const Vec2 m = (u1.normalized() + u2.normalized()) * 0.5;
    const Point anchor = from_model({m, Model::Collinear, Space::Hyperbolic});
    return geodesic_toward_ideal(anchor, u2);
}

Cycle geodesic_toward_ideal(const Point& p, const Vec2& ideal) {
    require(p.space == Space::Hyperbolic, Errc::UnsupportedCycle, "ideal rays need H2");
    const Vec2 b = ideal.normalized();
    const Vec3 nu{b.x, b.y, 1.0};
    const Vec3 radial = nu + form_dot(Space::Hyperbolic, p.v, nu) * p.v;
    return make_geodesic_dir(p, radial);
}

Cycle perpendicular_through_ideal(const Cycle& base, const Vec2& ideal) {
    require(base.space() == Space::Hyperbolic && base.kind() == CycleKind::Geodesic,
            Errc::UnsupportedCycle, "needs an H2 base geodesic");
    const Vec2 b = ideal.normalized();
    const Vec3 nu{b.x, b.y, 1.0};
    for (const Vec2& e : base.ideal_points())
        require((e - b).norm() > 1e-9, Errc::UnsupportedCycle,
                "ideal point lies on the base line");
    Vec3 n = base.level_normal().cross(nu);
    n = Vec3{n.x, n.y, -n.z};
    const double nn = form_dot(Space::Hyperbolic, n, n);
    require(nn > 1e-18, Errc::UnsupportedCycle, "no perpendicular through this ideal point");
    return geodesic_from_normal(n / std::sqrt(nn));
}

}  // namespace ccg
