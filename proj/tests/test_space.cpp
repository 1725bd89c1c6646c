#include <doctest.h>

#include <cmath>

#include "ccg/rng.hpp"
#include "ccg/space.hpp"

using namespace ccg;

namespace {

Point origin(Space s) { return Point(s, base_point(s)); }

Vec3 dir_at(const Point& p, double angle) {
    Vec3 any{1, 0, 0};
    if (std::fabs(p.v.x) > 0.9 * p.v.norm()) any = {0, 1, 0};
    const Vec3 u = unit_tangent(p, any);
    return std::cos(angle) * u + std::sin(angle) * left_normal(p, u);
}

Point random_point(Space s, Rng& rng, double spread = 1.5) {
    return geodesic_walk(origin(s), dir_at(origin(s), rng.uniform(0.0, 2 * pi)),
                         rng.uniform(0.0, spread));
}

Isometry random_iso(Space s, Rng& rng) {
    const Point o = origin(s);
    Isometry m = rotation_about(o, rng.uniform(0.0, 2 * pi));
    m = compose(translation_along(o, dir_at(o, rng.uniform(0.0, 2 * pi)),
                                  rng.uniform(0.0, 1.0)),
                m);
    if (rng.uniform() < 0.5) m = compose(reflection_in(o, dir_at(o, rng.uniform(0.0, pi))), m);
    return m;
}

const Space all_spaces[] = {Space::Sphere, Space::Euclidean, Space::Hyperbolic};

}  // namespace

TEST_CASE("distance basics") {
    // planar Pythagoras
    const Point a(Space::Euclidean, {0, 0, 1});
    const Point b(Space::Euclidean, {3, 4, 1});
    CHECK(distance(a, b) == doctest::Approx(5.0).epsilon(1e-14));

    for (Space s : all_spaces) {
        Rng rng(7);
        const Point p = random_point(s, rng);
        CHECK(distance(p, p) == 0.0);
        const Point q = random_point(s, rng);
        CHECK(distance(p, q) == doctest::Approx(distance(q, p)).epsilon(1e-15));
        CHECK(distance(p, q) >= 0.0);
    }

    // hyperbolic: the collinear model coordinate tanh(r) sits at distance r
    const Point centre = origin(Space::Hyperbolic);
    const Point p = from_model({{std::tanh(1.0), 0.0}, Model::Collinear, Space::Hyperbolic});
    CHECK(distance(centre, p) == doctest::Approx(1.0).epsilon(1e-12));

    // sphere distances stay in [0, pi]
    const Point n(Space::Sphere, {0, 0, 1});
    const Point sp(Space::Sphere, {0, 0, -1});
    CHECK(distance(n, sp) == doctest::Approx(pi));

    CHECK_THROWS_AS(distance(a, n), Error);
}

TEST_CASE("geodesic_point endpoints and midpoints") {
    for (Space s : all_spaces) {
        Rng rng(11);
        const Point a = random_point(s, rng);
        const Point b = random_point(s, rng);
        if (distance(a, b) < 1e-9) continue;
        CHECK(distance(geodesic_point(a, b, 0.0), a) == 0.0);
        CHECK(distance(geodesic_point(a, b, 1.0), b) == 0.0);
        const double d = distance(a, b);
        for (double t : {0.25, 0.5, 0.75}) {
            const Point m = geodesic_point(a, b, t);
            CHECK(distance(a, m) == doctest::Approx(t * d).epsilon(1e-10));
            CHECK(distance(m, b) == doctest::Approx((1 - t) * d).epsilon(1e-10));
        }
    }
    // E2 midpoint
    const Point a(Space::Euclidean, {0, 0, 1}), b(Space::Euclidean, {2, 0, 1});
    const Point m = geodesic_point(a, b, 0.5);
    CHECK(m.v.x == doctest::Approx(1.0));
    CHECK(m.v.y == doctest::Approx(0.0));

    // H2: halfway along an axis
    const Point o = origin(Space::Hyperbolic);
    const Point far = geodesic_walk(o, Vec3{1, 0, 0}, 2.0);
    CHECK(distance(o, geodesic_point(o, far, 0.5)) == doctest::Approx(1.0).epsilon(1e-12));

    // antipodal sphere pair is rejected
    const Point n(Space::Sphere, {0, 0, 1}), sp(Space::Sphere, {0, 0, -1});
    CHECK_THROWS_AS(geodesic_point(n, sp, 0.5), Error);
}

TEST_CASE("angle_at") {
    const Point apex(Space::Euclidean, {0, 0, 1});
    const Point p(Space::Euclidean, {1, 0, 1});
    const Point q(Space::Euclidean, {0, 1, 1});
    CHECK(angle_at(apex, p, q) == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(angle_at(apex, p, p) == doctest::Approx(0.0));
    CHECK_THROWS_AS(angle_at(apex, apex, q), Error);

    // H2 right triangle with legs 1,1: recover the right angle from the three
    // side lengths through the hyperbolic cosine law
    const Point o = origin(Space::Hyperbolic);
    const Point a = geodesic_walk(o, Vec3{1, 0, 0}, 1.0);
    const Point b = geodesic_walk(o, Vec3{0, 1, 0}, 1.0);
    const double opp = distance(a, b);
    CHECK(std::cosh(opp) == doctest::Approx(std::cosh(1.0) * std::cosh(1.0)).epsilon(1e-12));
    const double recovered = std::acos(
        (std::cosh(1.0) * std::cosh(1.0) - std::cosh(opp)) / (std::sinh(1.0) * std::sinh(1.0)));
    CHECK(recovered == doctest::Approx(angle_at(o, a, b)).epsilon(1e-9));
    CHECK(angle_at(o, a, b) == doctest::Approx(pi / 2).epsilon(1e-12));

    // isometry invariance
    for (Space s : all_spaces) {
        Rng rng(23);
        for (int i = 0; i < 20; ++i) {
            const Point ap = random_point(s, rng), pp = random_point(s, rng),
                        qq = random_point(s, rng);
            if (distance(ap, pp) < 1e-6 || distance(ap, qq) < 1e-6) continue;
            const Isometry iso = random_iso(s, rng);
            CHECK(angle_at(iso(ap), iso(pp), iso(qq)) ==
                  doctest::Approx(angle_at(ap, pp, qq)).epsilon(1e-10));
        }
    }
}

TEST_CASE("model maps round-trip and domain errors") {
    for (Space s : all_spaces) {
        for (Model m : {Model::Collinear, Model::Conformal}) {
            CHECK(to_model(origin(s), m).u.norm() == doctest::Approx(0.0));
            Rng rng(31);
            for (int i = 0; i < 50; ++i) {
                const Point p = random_point(s, rng, s == Space::Sphere ? 1.2 : 2.0);
                const ModelPoint mp = to_model(p, m);
                CHECK(distance(from_model(mp), p) <= 1e-12);
            }
        }
    }
    // H2 radial coordinates: tanh r in the collinear model, tanh(r/2) conformal
    const Point o = origin(Space::Hyperbolic);
    for (double r : {0.3, 1.0, 2.5}) {
        const Point p = geodesic_walk(o, Vec3{1, 0, 0}, r);
        CHECK(to_model(p, Model::Collinear).u.x == doctest::Approx(std::tanh(r)).epsilon(1e-13));
        CHECK(to_model(p, Model::Conformal).u.x ==
              doctest::Approx(std::tanh(r / 2)).epsilon(1e-13));
    }
    // sphere: collinear model only covers the open southern hemisphere
    const Point north(Space::Sphere, {0, 0, 1});
    const Point equator(Space::Sphere, {1, 0, 0});
    CHECK_THROWS_AS(to_model(north, Model::Collinear), Error);
    CHECK_THROWS_AS(to_model(equator, Model::Collinear), Error);
    CHECK_THROWS_AS(to_model(north, Model::Conformal), Error);
}

TEST_CASE("collinear model maps geodesics to chords") {
    for (Space s : all_spaces) {
        Rng rng(41);
        for (int i = 0; i < 30; ++i) {
            const Point a = random_point(s, rng, s == Space::Sphere ? 1.0 : 1.8);
            const Point b = random_point(s, rng, s == Space::Sphere ? 1.0 : 1.8);
            if (distance(a, b) < 1e-6) continue;
            const Vec2 ua = to_model(a, Model::Collinear).u;
            const Vec2 ub = to_model(b, Model::Collinear).u;
            for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                const Vec2 um = to_model(geodesic_point(a, b, t), Model::Collinear).u;
                // um lies on the segment [ua, ub]
                const Vec2 d = ub - ua;
                const double cross = d.cross(um - ua);
                CHECK(std::fabs(cross) <= 1e-9 * std::max(1.0, d.norm()));
                const double along = d.dot(um - ua) / d.norm2();
                CHECK(along >= -1e-9);
                CHECK(along <= 1 + 1e-9);
            }
        }
    }
}

TEST_CASE("conformal model preserves angles") {
    for (Space s : all_spaces) {
        Rng rng(43);
        for (int i = 0; i < 20; ++i) {
            const Point apex = random_point(s, rng, 1.0);
            const Point p = geodesic_walk(apex, dir_at(apex, rng.uniform(0.0, 2 * pi)), 0.4);
            const Point q = geodesic_walk(apex, dir_at(apex, rng.uniform(0.0, 2 * pi)), 0.4);
            if (distance(apex, p) < 1e-6 || distance(apex, q) < 1e-6) continue;
            const double intrinsic = angle_at(apex, p, q);
            // measure the Euclidean angle of the mapped curve tangents by
            // central differences
            const double h = 1e-5;
            auto tangent = [&](const Point& to) {
                const Vec3 u = direction(apex, to);
                const Vec2 fwd = to_model(geodesic_walk(apex, u, h), Model::Conformal).u;
                const Vec2 bwd = to_model(geodesic_walk(apex, u, -h), Model::Conformal).u;
                return (fwd - bwd).normalized();
            };
            const Vec2 tp = tangent(p), tq = tangent(q);
            const double mapped = std::atan2(std::fabs(tp.cross(tq)), tp.dot(tq));
            CHECK(mapped == doctest::Approx(intrinsic).epsilon(1e-6));
        }
    }
}

TEST_CASE("angle distortion closed form and bounds") {
    // closed-form spot values
    CHECK(angle_distortion(Space::Sphere, pi / 3, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(angle_distortion(Space::Sphere, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(angle_distortion(Space::Hyperbolic, 0.0, 0.3) == doctest::Approx(1.0));
    const double r2 = std::acosh(2.0);
    CHECK(angle_distortion(Space::Hyperbolic, r2, pi / 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(angle_distortion(Space::Sphere, pi / 2, 0.1), Error);
    CHECK_THROWS_AS(angle_distortion(Space::Hyperbolic, -0.1, 0.1), Error);

    // values stay inside the sharp interval
    for (double r : {0.2, 0.7, 1.3}) {
        for (int k = 0; k <= 32; ++k) {
            const double phi = pi * k / 32;
            const double h = angle_distortion(Space::Hyperbolic, r, phi);
            CHECK(h >= 1.0 / std::cosh(r) - 1e-12);
            CHECK(h <= std::cosh(r) + 1e-12);
            if (r < pi / 2 - 0.05) {
                const double sph = angle_distortion(Space::Sphere, r, phi);
                CHECK(sph >= std::cos(r) - 1e-12);
                CHECK(sph <= 1.0 / std::cos(r) + 1e-12);
            }
        }
    }
}

TEST_CASE("isometry constructors satisfy their contracts") {
    for (Space s : all_spaces) {
        Rng rng(53);
        const Point o = origin(s);

        // point reflection is an involution
        for (int i = 0; i < 10; ++i) {
            const Point p = random_point(s, rng);
            const Isometry pr = point_reflection(p);
            const Isometry twice = compose(pr, pr);
            CHECK((twice.matrix() - Mat3::identity()).max_abs() <= 1e-10);
            CHECK(distance(pr(p), p) <= 1e-12);  // fixes its centre
        }

        // translation moves points of the line by the stated length
        for (int i = 0; i < 10; ++i) {
            const Point p = random_point(s, rng);
            const Vec3 u = dir_at(p, rng.uniform(0.0, 2 * pi));
            const double t = rng.uniform(0.1, 1.0);
            const Isometry tr = translation_along(p, u, t);
            CHECK(distance(tr(p), geodesic_walk(p, u, t)) <= 1e-10);
        }

        // reflections are indirect, rotations direct
        CHECK(reflection_in(o, dir_at(o, 0.4)).orientation() == -1);
        CHECK(rotation_about(o, 0.7).orientation() == 1);

        // form preservation for random products
        for (int i = 0; i < 20; ++i) CHECK(random_iso(s, rng).form_residual() <= 1e-10);

        // distance invariance on random pairs
        for (int i = 0; i < 20; ++i) {
            const Isometry iso = random_iso(s, rng);
            const Point a = random_point(s, rng), b = random_point(s, rng);
            CHECK(std::fabs(distance(iso(a), iso(b)) - distance(a, b)) <= 1e-9);
        }
    }

    // E2 quarter turn about the origin
    const Isometry rot = rotation_about(origin(Space::Euclidean), pi / 2);
    const Point e1(Space::Euclidean, {1, 0, 1});
    const Point im = rot(e1);
    CHECK(im.v.x == doctest::Approx(0.0));
    CHECK(im.v.y == doctest::Approx(1.0));

    // rotations about an infinite point exist only in H2
    CHECK_THROWS_AS(ideal_rotation(Space::Euclidean, {1, 0}, 0.5), Error);
    CHECK_THROWS_AS(ideal_rotation(Space::Sphere, {1, 0}, 0.5), Error);

    // H2 parabolic: preserves the form, fixes no finite point, direct
    const Isometry par = ideal_rotation(Space::Hyperbolic, {1, 0}, 0.8);
    CHECK(par.form_residual() <= 1e-10);
    CHECK(par.orientation() == 1);
}

TEST_CASE("H2 translation along a geodesic stays on it") {
    Rng rng(61);
    const Point o = origin(Space::Hyperbolic);
    const Vec3 u = dir_at(o, 0.9);
    const Isometry tr = translation_along(o, u, 0.75);
    Point p = o;
    for (int k = 1; k <= 4; ++k) {
        p = tr(p);
        CHECK(distance(p, geodesic_walk(o, u, 0.75 * k)) <= 1e-10);
    }
}

TEST_CASE("align maps point pairs and respects orientation") {
    for (Space s : all_spaces) {
        Rng rng(67);
        for (int i = 0; i < 10; ++i) {
            const Point a1 = random_point(s, rng), b1 = random_point(s, rng);
            const double d = rng.uniform(0.2, 0.8);
            const Point a2 = geodesic_walk(a1, dir_at(a1, rng.uniform(0.0, 2 * pi)), d);
            const Point b2 = geodesic_walk(b1, dir_at(b1, rng.uniform(0.0, 2 * pi)), d);
            for (bool direct : {true, false}) {
                const Isometry iso = align(a1, a2, b1, b2, direct);
                CHECK(distance(iso(a1), b1) <= 1e-10);
                CHECK(distance(iso(a2), b2) <= 1e-10);
                CHECK(iso.orientation() == (direct ? 1 : -1));
            }
        }
    }
}

TEST_CASE("apply preserves a random point cloud's distance matrix") {
    Rng rng(71);
    const Space s = Space::Hyperbolic;
    std::vector<Point> cloud;
    for (int i = 0; i < 10; ++i) cloud.push_back(random_point(s, rng));
    const Isometry iso = random_iso(s, rng);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j)
            CHECK(std::fabs(distance(iso(cloud[i]), iso(cloud[j])) -
                            distance(cloud[i], cloud[j])) <= 1e-9);
}

TEST_CASE("distortion of the arc element matches the closed form") {
    for (Space s : {Space::Sphere, Space::Hyperbolic}) {
        for (Model m : {Model::Collinear, Model::Conformal}) {
            Rng rng(73);
            for (int i = 0; i < 20; ++i) {
                const Point p = random_point(s, rng, 1.1);
                const Vec3 u = dir_at(p, rng.uniform(0.0, 2 * pi));
                const double h = 1e-6;
                const Vec2 a = to_model(geodesic_walk(p, u, -h), m).u;
                const Vec2 b = to_model(geodesic_walk(p, u, h), m).u;
                const double numeric = (b - a).norm() / (2 * h);
                const Vec2 up = to_model(p, m).u;
                const Vec2 e = (b - a).normalized();
                CHECK(numeric ==
                      doctest::Approx(model_arc_element_ratio(s, m, up, e)).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("finite-difference angle distortion agrees with the formula") {
    // measured through the collinear model via mapped chords
    for (Space s : {Space::Sphere, Space::Hyperbolic}) {
        const Point o = origin(s);
        int cycle_unused = 0;
        (void)cycle_unused;
        for (double r : {0.25, 0.8}) {
            const Point p = geodesic_walk(o, Vec3{1, 0, 0}, r);
            // tangent of the radial geodesic at p
            const Vec3 t_rad = s == Space::Sphere
                                   ? Vec3{std::cos(r), 0, std::sin(r)}
                                   : Vec3{std::cosh(r), 0, std::sinh(r)};
            auto mapped_angle = [&](double phi) {
                const Vec3 w = std::cos(phi) * t_rad + std::sin(phi) * left_normal(p, t_rad);
                const Vec2 pm = to_model(p, Model::Collinear).u;
                const Vec2 qm = to_model(geodesic_walk(p, w, 0.05), Model::Collinear).u;
                const Vec2 rm = to_model(geodesic_walk(p, t_rad, 0.05), Model::Collinear).u;
                const Vec2 v1 = rm - pm, v2 = qm - pm;
                return std::atan2(std::fabs(v1.cross(v2)), v1.dot(v2));
            };
            const double h = 1e-5;
            for (double phi : {0.2, 0.8, 1.4}) {
                const double measured = (mapped_angle(phi + h) - mapped_angle(phi - h)) / (2 * h);
                CHECK(measured == doctest::Approx(angle_distortion(s, r, phi)).epsilon(1e-6));
            }
        }
    }
}
