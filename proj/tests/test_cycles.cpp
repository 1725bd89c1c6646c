#include <doctest.h>

#include <cmath>

#include "ccg/cycles.hpp"
#include "ccg/rng.hpp"

using namespace ccg;

namespace {

Point origin(Space s) { return Point(s, base_point(s)); }

Vec3 dir_at(const Point& p, double angle) {
    Vec3 any{1, 0, 0};
    if (std::fabs(p.v.x) > 0.9 * p.v.norm()) any = {0, 1, 0};
    const Vec3 u = unit_tangent(p, any);
    return std::cos(angle) * u + std::sin(angle) * left_normal(p, u);
}

Point random_point(Space s, Rng& rng, double spread = 1.2) {
    return geodesic_walk(origin(s), dir_at(origin(s), rng.uniform(0.0, 2 * pi)),
                         rng.uniform(0.0, spread));
}

Isometry random_iso(Space s, Rng& rng) {
    const Point o = origin(s);
    Isometry m = rotation_about(o, rng.uniform(0.0, 2 * pi));
    m = compose(translation_along(o, dir_at(o, rng.uniform(0.0, 2 * pi)),
                                  rng.uniform(0.0, 0.8)),
                m);
    if (rng.uniform() < 0.5) m = compose(reflection_in(o, dir_at(o, rng.uniform(0.0, pi))), m);
    return m;
}

// independent curvature oracle: discrete turning angle per arc length
double turning_curvature(const Cycle& c, double h, std::size_t n) {
    const std::vector<Point> pts = sample_arc({c, 0.0, h * double(n - 1), 1}, n);
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        total += pi - angle_at(pts[i], pts[i - 1], pts[i + 1]);
    return total / (double(n - 2) * h);
}

Cycle random_cycle(Space s, CycleKind kind, Rng& rng) {
    const Point o = origin(s);
    switch (kind) {
        case CycleKind::Circle: {
            const double hi = s == Space::Sphere ? 1.35 : 2.0;
            return make_circle(random_point(s, rng, 0.5), rng.uniform(0.25, hi));
        }
        case CycleKind::Geodesic:
            return make_geodesic_dir(random_point(s, rng, 0.5),
                                     dir_at(o, rng.uniform(0.0, 2 * pi)));
        case CycleKind::Paracycle: {
            const double th = rng.uniform(0.0, 2 * pi);
            return make_paracycle({std::cos(th), std::sin(th)}, random_point(s, rng, 0.5));
        }
        case CycleKind::Hypercycle:
            return make_hypercycle(make_geodesic_dir(random_point(s, rng, 0.5),
                                                     dir_at(o, rng.uniform(0.0, 2 * pi))),
                                   (rng.uniform() < 0.5 ? 1 : -1) * rng.uniform(0.2, 1.4));
    }
    return make_geodesic_dir(o, Vec3{1, 0, 0});
}

}  // namespace

TEST_CASE("constructed cycles pass through their defining data") {
    // E2 circle centre origin radius 2 contains (2,0)
    const Cycle c = make_circle(origin(Space::Euclidean), 2.0);
    const Point p(Space::Euclidean, {2, 0, 1});
    CHECK(std::fabs(c.side_value(p)) <= 1e-12);

    // hypercycle points sit at the stated distance from the base geodesic
    const Cycle base = make_geodesic_dir(origin(Space::Hyperbolic), Vec3{1, 0, 0});
    for (double l : {0.4, -0.7}) {
        const Cycle h = make_hypercycle(base, l);
        for (double s : {-2.0, -0.5, 0.0, 1.5})
            CHECK(std::fabs(base.side_value(h.point_at(s))) ==
                  doctest::Approx(std::fabs(l)).epsilon(1e-12));
    }

    // paracycle through a given point with a given ideal centre
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const double th = rng.uniform(0.0, 2 * pi);
        const Point through = random_point(Space::Hyperbolic, rng);
        const Cycle pc = make_paracycle({std::cos(th), std::sin(th)}, through);
        CHECK(std::fabs(pc.side_value(through)) <= 1e-10);
        CHECK((pc.ideal_points()[0] - Vec2{std::cos(th), std::sin(th)}).norm() <= 1e-12);
    }

    // rejects
    CHECK_THROWS_AS(make_circle(origin(Space::Sphere), 2.0), Error);
    CHECK_THROWS_AS(make_hypercycle(base, 0.0), Error);
    CHECK_THROWS_AS(make_paracycle({1, 0}, origin(Space::Euclidean)), Error);
}

TEST_CASE("paracycle in the conformal model is a circle tangent to the boundary") {
    // fit a Euclidean circle through sampled conformal images and check
    // internal tangency at the ideal point
    const Point o = origin(Space::Hyperbolic);
    const Cycle pc = make_paracycle({1, 0}, o);
    std::vector<Vec2> pts;
    for (double s : {-3.0, -1.5, 0.0, 1.5, 3.0, 5.0})
        pts.push_back(to_model(pc.point_at(s), Model::Conformal).u);
    auto fit_circle = [](const Vec2& a, const Vec2& b, const Vec2& c) {
        const double d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        const double ux = (a.norm2() * (b.y - c.y) + b.norm2() * (c.y - a.y) +
                           c.norm2() * (a.y - b.y)) / d;
        const double uy = (a.norm2() * (c.x - b.x) + b.norm2() * (a.x - c.x) +
                           c.norm2() * (b.x - a.x)) / d;
        return std::pair<Vec2, double>({ux, uy}, (a - Vec2{ux, uy}).norm());
    };
    auto [centre, radius] = fit_circle(pts[0], pts[2], pts[4]);
    for (const Vec2& q : pts)
        CHECK((q - centre).norm() == doctest::Approx(radius).epsilon(1e-9));
    // internally tangent to the unit circle at (1, 0)
    CHECK((centre.norm() + radius) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((centre - Vec2{1.0 - radius, 0.0}).norm() <= 1e-8);
}

TEST_CASE("curvature table values") {
    const Point oh = origin(Space::Hyperbolic);
    CHECK(curvature_of(make_circle(oh, 1.0)) == doctest::Approx(1.0 / std::tanh(1.0)));
    CHECK(curvature_of(make_circle(oh, 1.0)) == doctest::Approx(1.3130352854993312));
    CHECK(curvature_of(make_paracycle({1, 0}, oh)) == 1.0);
    const Cycle base = make_geodesic_dir(oh, Vec3{1, 0, 0});
    CHECK(curvature_of(make_hypercycle(base, 0.5)) == doctest::Approx(std::tanh(0.5)));
    CHECK(curvature_of(make_hypercycle(base, 0.5)) == doctest::Approx(0.46211715726000974));
    CHECK(curvature_of(make_geodesic_dir(origin(Space::Euclidean), Vec3{1, 0, 0})) == 0.0);
    CHECK(curvature_of(make_circle(origin(Space::Euclidean), 2.0)) == doctest::Approx(0.5));
    CHECK(curvature_of(make_circle(origin(Space::Sphere), 0.7)) ==
          doctest::Approx(1.0 / std::tan(0.7)));
}

TEST_CASE("turning-angle estimator validates curvature_of") {
    // H2 circle r=1 with a dense polyline
    const Cycle c = make_circle(origin(Space::Hyperbolic), 1.0);
    const double est = turning_curvature(c, c.period() / 999, 1000);
    CHECK(est == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-4));

    // twenty random draws of every kind
    struct Fam { Space s; CycleKind k; };
    const Fam fams[] = {{Space::Sphere, CycleKind::Circle},
                        {Space::Sphere, CycleKind::Geodesic},
                        {Space::Euclidean, CycleKind::Circle},
                        {Space::Euclidean, CycleKind::Geodesic},
                        {Space::Hyperbolic, CycleKind::Circle},
                        {Space::Hyperbolic, CycleKind::Paracycle},
                        {Space::Hyperbolic, CycleKind::Hypercycle},
                        {Space::Hyperbolic, CycleKind::Geodesic}};
    Rng rng(17);
    for (const Fam& f : fams) {
        for (int i = 0; i < 20; ++i) {
            const Cycle cyc = random_cycle(f.s, f.k, rng);
            const double expected = curvature_of(cyc);
            const double h = 0.004 / std::max(1.0, expected);
            const double est2 = turning_curvature(cyc, h, 400);
            CHECK(std::fabs(est2 - expected) / std::max(1.0, expected) <= 1e-3);
        }
    }
}

TEST_CASE("curvatures of distinct kinds never coincide") {
    // the H2 hierarchy: circles > 1, paracycles = 1, hypercycles in (0,1),
    // geodesics = 0; checked over a parameter grid
    const Point oh = origin(Space::Hyperbolic);
    const Cycle base = make_geodesic_dir(oh, Vec3{1, 0, 0});
    for (double r = 0.1; r < 3.0; r += 0.13) {
        CHECK(curvature_of(make_circle(oh, r)) > 1.0);
        CHECK(curvature_of(make_hypercycle(base, r)) < 1.0);
        CHECK(curvature_of(make_hypercycle(base, r)) > 0.0);
    }
    for (double r = 0.1; r < 2.0; r += 0.17)
        for (double q = r + 0.05; q < 2.0; q += 0.23) {
            CHECK(curvature_of(make_circle(oh, r)) != curvature_of(make_circle(oh, q)));
            CHECK(curvature_of(make_hypercycle(base, r)) !=
                  curvature_of(make_hypercycle(base, q)));
        }
}

TEST_CASE("sample_arc spacing and endpoints") {
    const Cycle c = make_circle(origin(Space::Euclidean), 1.0);
    const CycleArc quarter{c, 0.0, c.period() / 4, 1};
    auto two = sample_arc(quarter, 2);
    CHECK(distance(two[0], quarter.start()) <= 1e-12);
    CHECK(distance(two[1], quarter.end()) <= 1e-12);

    // full unit circle, five samples: quarter points with closure
    const CycleArc full{c, 0.0, c.period(), 1};
    auto five = sample_arc(full, 5);
    CHECK(distance(five[0], five[4]) <= 1e-12);
    CHECK(distance(five[0], Point(Space::Euclidean, {1, 0, 1})) <= 1e-12);
    CHECK(distance(five[1], Point(Space::Euclidean, {0, 1, 1})) <= 1e-12);

    // uniform intrinsic spacing on every kind
    Rng rng(19);
    for (CycleKind k : {CycleKind::Circle, CycleKind::Geodesic, CycleKind::Paracycle,
                        CycleKind::Hypercycle}) {
        const Cycle cyc = random_cycle(Space::Hyperbolic, k, rng);
        const auto pts = sample_arc({cyc, -1.0, 1.5, 1}, 40);
        const double step0 = distance(pts[0], pts[1]);
        for (std::size_t i = 1; i + 1 < pts.size(); ++i)
            CHECK(distance(pts[i], pts[i + 1]) == doctest::Approx(step0).epsilon(1e-8));
    }

    // unbounded arcs need a clip
    const Cycle line = make_geodesic_dir(origin(Space::Euclidean), Vec3{1, 0, 0});
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sample_arc({line, -inf, inf, 1}, 5), Error);
    CHECK(sample_arc({line, -inf, inf, 1}, 5, 4.0).size() == 5);
}

TEST_CASE("side_of conventions") {
    // circle centre is on the positive side
    for (Space s : {Space::Sphere, Space::Euclidean, Space::Hyperbolic}) {
        Rng rng(23);
        const Point c = random_point(s, rng, 0.4);
        const Cycle circ = make_circle(c, 0.8);
        CHECK(side_of(circ, c) > 0);
        CHECK(std::fabs(side_of(circ, circ.point_at(1.0))) <= 1e-10);
    }
    // E2 line x=0 with convex side x <= 0 (travel up, left is -x): the point
    // (1,0) is negative
    const Cycle line = make_geodesic_dir(Point(Space::Euclidean, {0, 0, 1}), Vec3{0, 1, 0});
    CHECK(side_of(line, Point(Space::Euclidean, {1, 0, 1})) < 0);
    CHECK(side_of(line, Point(Space::Euclidean, {-1, 0, 1})) > 0);
    // the margin is the signed intrinsic distance
    CHECK(side_of(line, Point(Space::Euclidean, {-2, 5, 1})) == doctest::Approx(2.0));

    // paracycle margin grows toward the ideal centre
    const Point oh = origin(Space::Hyperbolic);
    const Cycle pc = make_paracycle({1, 0}, oh);
    CHECK(side_of(pc, geodesic_walk(oh, Vec3{1, 0, 0}, 0.5)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(side_of(pc, geodesic_walk(oh, Vec3{1, 0, 0}, -0.5)) ==
          doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("intersect_cycles") {
    // two E2 unit circles at distance 1: the equilateral pair
    const Cycle c1 = make_circle(Point(Space::Euclidean, {0, 0, 1}), 1.0);
    const Cycle c2 = make_circle(Point(Space::Euclidean, {1, 0, 1}), 1.0);
    CycleIntersection x = intersect_cycles(c1, c2);
    REQUIRE(x.kind == CycleIntersection::Kind::Points);
    REQUIRE(x.points.size() == 2);
    for (const Point& p : x.points) {
        CHECK(p.v.x == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::fabs(p.v.y) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    }

    // concentric distinct circles
    const Cycle c3 = make_circle(Point(Space::Euclidean, {0, 0, 1}), 0.5);
    CHECK(intersect_cycles(c1, c3).kind == CycleIntersection::Kind::Empty);

    // identical carriers
    CHECK(intersect_cycles(c1, make_circle(Point(Space::Euclidean, {0, 0, 1}), 1.0)).kind ==
          CycleIntersection::Kind::Coincident);

    // H2 parallels (one shared ideal point) have no finite intersection
    const Cycle g1 = geodesic_between_ideals({1, 0}, {std::cos(2.0), std::sin(2.0)});
    const Cycle g2 = geodesic_between_ideals({1, 0}, {std::cos(-2.0), std::sin(-2.0)});
    CHECK(classify_line_pair(g1, g2) == LineRelation::Parallel);
    CHECK(intersect_cycles(g1, g2).kind == CycleIntersection::Kind::Empty);

    // intersection points satisfy both level sets
    Rng rng(29);
    for (int i = 0; i < 60; ++i) {
        const Space s = i % 3 == 0 ? Space::Sphere
                                   : (i % 3 == 1 ? Space::Euclidean : Space::Hyperbolic);
        const CycleKind kinds_e[] = {CycleKind::Circle, CycleKind::Geodesic};
        const CycleKind kinds_h[] = {CycleKind::Circle, CycleKind::Geodesic,
                                     CycleKind::Paracycle, CycleKind::Hypercycle};
        const Cycle a = s == Space::Hyperbolic ? random_cycle(s, kinds_h[rng.index(4)], rng)
                                               : random_cycle(s, kinds_e[rng.index(2)], rng);
        const Cycle b = s == Space::Hyperbolic ? random_cycle(s, kinds_h[rng.index(4)], rng)
                                               : random_cycle(s, kinds_e[rng.index(2)], rng);
        const CycleIntersection hit = intersect_cycles(a, b);
        if (hit.kind != CycleIntersection::Kind::Points) continue;
        for (const Point& p : hit.points) {
            CHECK(std::fabs(a.side_value(p)) <= 1e-9);
            CHECK(std::fabs(b.side_value(p)) <= 1e-9);
        }
    }
}

TEST_CASE("intersection is equivariant and curvature invariant") {
    Rng rng(31);
    for (Space s : {Space::Sphere, Space::Euclidean, Space::Hyperbolic}) {
        for (int i = 0; i < 25; ++i) {
            const Cycle a = random_cycle(s, CycleKind::Circle, rng);
            const Cycle b = s == Space::Hyperbolic
                                ? random_cycle(s, CycleKind::Hypercycle, rng)
                                : random_cycle(s, CycleKind::Circle, rng);
            const Isometry iso = random_iso(s, rng);
            CHECK(curvature_of(transform_cycle(iso, a)) == doctest::Approx(curvature_of(a)));
            const CycleIntersection plain = intersect_cycles(a, b);
            const CycleIntersection moved =
                intersect_cycles(transform_cycle(iso, a), transform_cycle(iso, b));
            CHECK(int(plain.kind) == int(moved.kind));
            if (plain.kind != CycleIntersection::Kind::Points) continue;
            REQUIRE(plain.points.size() == moved.points.size());
            for (const Point& p : plain.points) {
                double best = 1e300;
                for (const Point& q : moved.points) best = std::min(best, distance(iso(p), q));
                CHECK(best <= 1e-8);
            }
        }
    }
}

TEST_CASE("param_of inverts point_at and locates feet") {
    Rng rng(37);
    for (CycleKind k : {CycleKind::Circle, CycleKind::Geodesic, CycleKind::Paracycle,
                        CycleKind::Hypercycle}) {
        const Cycle c = random_cycle(Space::Hyperbolic, k, rng);
        for (double s : {-1.3, -0.2, 0.9, 2.2}) {
            const double back = c.param_of(c.point_at(s));
            if (c.closed())
                CHECK(std::fabs(std::remainder(back - s, c.period())) <= 1e-9);
            else
                CHECK(back == doctest::Approx(s).epsilon(1e-9));
        }
    }
    // distance_to_arc: exact off-arc distances via the foot
    const Cycle circ = make_circle(origin(Space::Euclidean), 1.0);
    const CycleArc half{circ, 0.0, circ.period() / 2, 1};  // upper half, from (1,0)
    CHECK(distance_to_arc(Point(Space::Euclidean, {0, 2, 1}), half) == doctest::Approx(1.0));
    CHECK(distance_to_arc(Point(Space::Euclidean, {0, -3, 1}), half) ==
          doctest::Approx(std::sqrt(10.0)));  // attained at the endpoints
}

TEST_CASE("ideal point bookkeeping") {
    const Cycle g = geodesic_between_ideals({0, 1}, {1, 0});
    const auto ids = g.ideal_points();
    REQUIRE(ids.size() == 2);
    CHECK((ids[1] - Vec2{1, 0}).norm() <= 1e-12);
    CHECK((ids[0] - Vec2{0, 1}).norm() <= 1e-12);

    const Cycle base = make_geodesic_dir(origin(Space::Hyperbolic), Vec3{1, 0, 0});
    const auto hid = make_hypercycle(base, 0.4).ideal_points();
    REQUIRE(hid.size() == 2);
    CHECK(std::fabs(std::fabs(hid[0].x) - 1.0) <= 1e-12);

    // ultraparallel lines and their common perpendicular
    const Cycle u1 = geodesic_between_ideals({std::cos(0.4), std::sin(0.4)},
                                             {std::cos(-0.4), std::sin(-0.4)});
    const Cycle u2 = geodesic_between_ideals({std::cos(pi - 0.4), std::sin(pi - 0.4)},
                                             {std::cos(pi + 0.4), std::sin(pi + 0.4)});
    CHECK(classify_line_pair(u1, u2) == LineRelation::Ultraparallel);
    const Cycle perp = common_perpendicular(u1, u2);
    for (const Cycle* line : {&u1, &u2}) {
        const CycleIntersection hit = intersect_cycles(perp, *line);
        REQUIRE(hit.kind == CycleIntersection::Kind::Points);
        const Point p = hit.points[0];
        const Vec3 t1 = perp.tangent_at(perp.param_of(p));
        const Vec3 t2 = line->tangent_at(line->param_of(p));
        CHECK(std::fabs(form_dot(Space::Hyperbolic, t1, t2)) <= 1e-9);
    }
    const Cycle v1 = make_geodesic_dir(origin(Space::Hyperbolic), Vec3{1, 0, 0});
    const Cycle v2 = make_geodesic_dir(origin(Space::Hyperbolic), Vec3{0, 1, 0});
    CHECK(classify_line_pair(v1, v2) == LineRelation::Intersecting);
    CHECK_THROWS_AS(common_perpendicular(v1, v2), Error);
}

TEST_CASE("ideal rotations preserve paracycles about their centre") {
    const Point o = origin(Space::Hyperbolic);
    const Cycle pc = make_paracycle({1, 0}, o);
    for (double param : {-0.9, 0.35, 2.0}) {
        const Isometry rot = ideal_rotation(Space::Hyperbolic, {1, 0}, param);
        for (double s : {-2.0, -0.6, 0.0, 1.1, 3.0}) {
            const Point image = rot(pc.point_at(s));
            CHECK(std::fabs(pc.side_value(image)) <= 1e-9);
        }
    }
}
