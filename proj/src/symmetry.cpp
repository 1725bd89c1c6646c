#include "ccg/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 safe_dir(const Point& p) {
    Vec3 any{1, 0, 0};
    if (std::fabs(p.v.x) > 0.9 * p.v.norm()) any = {0, 1, 0};
    return any;
}

Congruence rotation_candidate(const Point& centre, double angle) {
    Congruence c{rotation_about(centre, angle),
                 std::fabs(std::remainder(angle - pi, 2 * pi)) < 1e-9
                     ? CongruenceKind::PointReflection
                     : CongruenceKind::Rotation,
                 centre, std::nullopt, angle, 0.0};
    return c;
}

Congruence reflection_candidate(const Cycle& axis) {
    const Point p = axis.point_at(0.0);
    Congruence c{reflection_in(p, axis.tangent_at(0.0)), CongruenceKind::Reflection,
                 std::nullopt, axis, 0.0, 0.0};
    return c;
}

// signed rotation angle of a direct isometry at its fixed point
double rotation_angle_at(const Isometry& iso, const Point& fixed) {
    const Vec3 u = unit_tangent(fixed, safe_dir(fixed));
    const Point q = geodesic_walk(fixed, u, 1e-3);
    const Vec3 v = direction(fixed, iso(q));
    const double c = form_dot(fixed.space, u, v);
    const double s = form_dot(fixed.space, left_normal(fixed, u), v);
    double a = std::atan2(s, c);
    if (a < 0) a += 2 * pi;
    return a;
}

// mean of a point cloud projected back to the quadric
Point centroid_of(Space s, const std::vector<Point>& pts) {
    Vec3 acc{0, 0, 0};
    for (const Point& p : pts) acc += p.v;
    return Point(s, acc / double(pts.size()));
}

}  // namespace

const char* to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::Trivial: return "trivial";
        case SymmetryClass::CentralOnly: return "central";
        case SymmetryClass::AxialOnly: return "axial";
        case SymmetryClass::CentralAndAxial: return "central+axial";
        case SymmetryClass::Rotational: return "rotational";
        case SymmetryClass::FullDiskGroup: return "full_disk_group";
    }
    return "?";
}

Point circumcentre(const ConvexRegion& r) {
    require(r.compact(), Errc::NonCompact, "circumcentre of an unbounded region");
    const BoundaryCloud cloud = boundary_cloud(r, 256);
    Point best = centroid_of(r.space(), cloud.points);
    auto radius = [&](const Point& c) {
        double m = 0.0;
        for (const Point& p : cloud.points) m = std::max(m, distance(c, p));
        return m;
    };
    // pattern descent on the minimax radius
    double step = 0.25 * radius(best);
    double val = radius(best);
    while (step > 1e-12) {
        bool moved = false;
        for (int k = 0; k < 8; ++k) {
            const double th = 2 * pi * k / 8;
            const Vec3 u =
                unit_tangent(best, std::cos(th) * unit_tangent(best, safe_dir(best)) +
                                       std::sin(th) * left_normal(best, unit_tangent(best, safe_dir(best))));
            const Point cand = geodesic_walk(best, u, step);
            const double v = radius(cand);
            if (v < val) {
                val = v;
                best = cand;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

std::vector<Congruence> candidate_congruences(const ConvexRegion& r) {
    require(r.compact(), Errc::NonCompact, "candidate congruences need a compact region");
    std::vector<Congruence> out;
    const std::vector<Vertex> verts = r.all_vertices();
    const std::size_t V = verts.size();

    auto add = [&](Congruence c) {
        for (const Congruence& e : out)
            if ((e.iso.matrix() - c.iso.matrix()).max_abs() < 1e-8) return;
        out.push_back(std::move(c));
    };

    if (V == 0) {
        // smooth boundary: everything is pinned at the minimax centre
        const Point c = circumcentre(r);
        add(rotation_candidate(c, pi));
        for (int k = 2; k <= 8; ++k) add(rotation_candidate(c, 2 * pi / k));
        // irrational angles separate the continuous group from finite ones
        add(rotation_candidate(c, 2 * pi * 0.3819660112501051));
        add(rotation_candidate(c, 2 * pi * 0.1090169943749474));
        const Vec3 u0 = unit_tangent(c, safe_dir(c));
        for (int k = 0; k < 8; ++k) {
            const double th = pi * k / 8;
            const Vec3 u = std::cos(th) * u0 + std::sin(th) * left_normal(c, u0);
            add(reflection_candidate(make_geodesic_dir(c, u)));
        }
    } else if (V == 1) {
        const Point& p = verts[0].point;
        // bisector of the interior angle at the single corner
        const ArcChain& ch = r.boundary_chains().front();
        for (std::size_t k = 0; k < ch.arcs.size(); ++k) {
            const CycleArc& in = ch.arcs[k];
            const CycleArc& nxt = ch.arcs[(k + 1) % ch.arcs.size()];
            if (distance(in.end(), p) > 1e-9) continue;
            const Vec3 tin = in.cycle.tangent_at(in.s1);
            const Vec3 tout = nxt.cycle.tangent_at(nxt.s0);
            const Vec3 bis = tout - tin;
            if (form_dot(r.space(), bis, bis) > 1e-20)
                add(reflection_candidate(make_geodesic_dir(p, bis)));
            break;
        }
    } else if (V == 2) {
        const Point &v1 = verts[0].point, &v2 = verts[1].point;
        const Point mid = geodesic_point(v1, v2, 0.5);
        add(rotation_candidate(mid, pi));
        add(reflection_candidate(make_geodesic(v1, v2)));
        add(reflection_candidate(
            make_geodesic_dir(mid, left_normal(mid, direction(mid, v2)))));
    } else {
        // align the cyclic vertex sequence with itself
        std::vector<double> chord(V), ang(V);
        for (std::size_t i = 0; i < V; ++i) {
            chord[i] = distance(verts[i].point, verts[(i + 1) % V].point);
            ang[i] = verts[i].outer_angle;
        }
        const double atol = 1e-6;
        for (std::size_t off = 0; off < V; ++off) {
            // direct: i -> i + off
            bool ok = true;
            for (std::size_t i = 0; i < V && ok; ++i)
                ok = std::fabs(ang[i] - ang[(i + off) % V]) <= atol &&
                     std::fabs(chord[i] - chord[(i + off) % V]) <= atol;
            if (ok && off != 0) {
                const Isometry iso = align(verts[0].point, verts[1].point,
                                           verts[off % V].point, verts[(off + 1) % V].point);
                // the vertex centroid is fixed up to matching error; midpoint
                // iteration contracts onto the true fixed point
                Vec3 acc{0, 0, 0};
                for (std::size_t i = 0; i < V; ++i) acc += verts[i].point.v;
                Point c(r.space(), acc / double(V));
                for (int it = 0; it < 90; ++it) {
                    const Point ci = iso(c);
                    if (distance(c, ci) < 1e-13) break;
                    c = geodesic_point(c, ci, 0.5);
                }
                const double a = rotation_angle_at(iso, c);
                Congruence cand{iso,
                                std::fabs(std::remainder(a - pi, 2 * pi)) < 1e-6
                                    ? CongruenceKind::PointReflection
                                    : CongruenceKind::Rotation,
                                c, std::nullopt, a, 0.0};
                add(std::move(cand));
            }
            // indirect: i -> off - i (angles pair with reversed order)
            ok = true;
            for (std::size_t i = 0; i < V && ok; ++i) {
                const std::size_t j = (off + V - i) % V;          // vertex image
                const std::size_t jc = (j + V - 1) % V;           // edge image
                ok = std::fabs(ang[i] - ang[j]) <= atol &&
                     std::fabs(chord[i] - chord[jc]) <= atol;
            }
            if (ok) {
                const Isometry iso =
                    align(verts[0].point, verts[1].point, verts[off % V].point,
                          verts[(off + V - 1) % V].point, /*direct=*/false);
                // reflection axis through the fixed midpoints of the pairing
                const Point m1 = off == 0 ? verts[0].point
                                          : geodesic_point(verts[0].point,
                                                           verts[off % V].point, 0.5);
                Congruence cand{iso, CongruenceKind::Reflection, std::nullopt,
                                std::nullopt, 0.0, 0.0};
                // the axis carries the midpoints of point/image pairs; probe
                // several directions in case one lands perpendicular to it
                const Point m1i = iso(m1);
                Point anchor = distance(m1, m1i) < 1e-9 ? m1 : geodesic_point(m1, m1i, 0.5);
                const Vec3 u0 = unit_tangent(anchor, safe_dir(anchor));
                for (double th : {0.0, 0.9, 1.8}) {
                    const Vec3 d = std::cos(th) * u0 + std::sin(th) * left_normal(anchor, u0);
                    const Point probe = geodesic_walk(anchor, d, 0.05);
                    const Point pim = iso(probe);
                    const Point second =
                        distance(probe, pim) < 1e-9 ? probe : geodesic_point(probe, pim, 0.5);
                    if (distance(anchor, second) > 1e-9) {
                        cand.axis = make_geodesic(anchor, second);
                        break;
                    }
                }
                add(std::move(cand));
            }
        }
    }

    // Lemma-style cycle pair axes for two-constraint regions
    const std::vector<Cycle>& halves = r.halves();
    if (halves.size() == 2) {
        if (auto ax = axis_for_cycle_pair(halves[0], halves[1]))
            add(reflection_candidate(*ax));
    }
    return out;
}

std::optional<Cycle> axis_for_cycle_pair(const Cycle& a, const Cycle& b) {
    require(a.space() == b.space(), Errc::SpaceMismatch, "axis for cycles across spaces");
    const Space s = a.space();
    auto is_circle = [](const Cycle& c) { return c.kind() == CycleKind::Circle; };
    auto base_of = [](const Cycle& c) -> Cycle {
        if (c.kind() == CycleKind::Geodesic) return c;
        // hypercycle base: same frame, geodesic kind
        return Cycle(make_geodesic_dir(c.frame()(Point(c.space(), base_point(c.space()))),
                                       c.frame().matrix() * Vec3{1, 0, 0}));
    };
    auto has_base = [](const Cycle& c) {
        return c.kind() == CycleKind::Geodesic || c.kind() == CycleKind::Hypercycle;
    };

    if (is_circle(a) && is_circle(b)) {
        if (distance(a.centre(), b.centre()) < 1e-9) return std::nullopt;
        return make_geodesic(a.centre(), b.centre());
    }
    if (s == Space::Hyperbolic) {
        auto ideal_of = [](const Cycle& c) { return c.ideal_points()[0]; };
        const bool pa = a.kind() == CycleKind::Paracycle;
        const bool pb = b.kind() == CycleKind::Paracycle;
        if (is_circle(a) && pb) return geodesic_toward_ideal(a.centre(), ideal_of(b));
        if (is_circle(b) && pa) return geodesic_toward_ideal(b.centre(), ideal_of(a));
        if (pa && pb) {
            const Vec2 u1 = ideal_of(a), u2 = ideal_of(b);
            if ((u1 - u2).norm() < 1e-9) return std::nullopt;
            return geodesic_between_ideals(u1, u2);
        }
        if (pa && has_base(b)) return perpendicular_through_ideal(base_of(b), ideal_of(a));
        if (pb && has_base(a)) return perpendicular_through_ideal(base_of(a), ideal_of(b));
    }
    if (is_circle(a) && has_base(b)) return perpendicular_through_point(base_of(b), a.centre());
    if (is_circle(b) && has_base(a)) return perpendicular_through_point(base_of(a), b.centre());
    if (has_base(a) && has_base(b) && s == Space::Hyperbolic) {
        const Cycle ba = base_of(a), bb = base_of(b);
        if (classify_line_pair(ba, bb) == LineRelation::Ultraparallel)
            return common_perpendicular(ba, bb);
        return std::nullopt;
    }
    return std::nullopt;
}

// --- verification + report derivation --------------------------------------------

namespace {

struct Verified {
    std::vector<Congruence> witnesses;
    std::vector<Congruence> ambiguous;
};

Verified verify_candidates(const ConvexRegion& r, const BoundaryCloud& cloud,
                           std::vector<Congruence> cands, double tol, double diam) {
    Verified v;
    const double pass = tol * diam;
    for (Congruence& c : cands) {
        const double resid = symmetry_residual(r, cloud, c.iso, 2.0 * pass);
        c.residual = resid;
        if (resid <= pass) v.witnesses.push_back(c);
        else if (resid <= 2.0 * pass) v.ambiguous.push_back(c);
    }
    return v;
}

SymmetryReport derive_report(const ConvexRegion& r, const BoundaryCloud& cloud,
                             Verified v, double tol, double diam) {
    SymmetryReport rep;
    rep.tol = tol;
    rep.diameter = diam;
    rep.witnesses = std::move(v.witnesses);
    rep.ambiguous = std::move(v.ambiguous);

    // rotation subgroup
    std::vector<const Congruence*> rots;
    for (const Congruence& c : rep.witnesses)
        if (c.kind != CongruenceKind::Reflection) rots.push_back(&c);
    std::vector<double> angles;
    std::optional<Point> centre;
    for (const Congruence* c : rots) {
        if (!c->fixed_point) continue;
        Point fp = *c->fixed_point;
        if (r.space() == Space::Sphere && distance(fp, r.witness()) > pi / 2)
            fp = Point(Space::Sphere, -fp.v);  // antipodal representative
        if (!centre) centre = fp;
        if (std::fabs(std::remainder(c->angle, 2 * pi)) < 1e-6) continue;  // identity
        bool known = false;
        for (double a : angles)
            if (std::fabs(std::remainder(a - c->angle, 2 * pi)) < 1e-6) known = true;
        if (!known) angles.push_back(c->angle);
    }
    bool continuous = angles.size() >= 5;  // the golden probe arbitrates
    const double golden1 = 2 * pi * 0.3819660112501051;
    const double golden2 = 2 * pi * 0.1090169943749474;
    for (double a : angles)
        for (double g : {golden1, golden2})
            if (std::fabs(a - g) < 1e-9) continuous = true;
    if (continuous && centre) {
        // a finite group cannot contain an irrational rotation; double-check
        // with a second irrational angle before declaring the full group
        const Isometry probe = rotation_about(*centre, 2 * pi * 0.2360679774997897);
        continuous = symmetry_residual(r, cloud, probe, tol * diam) <= tol * diam;
    }

    // axes
    int reflections = 0;
    for (const Congruence& c : rep.witnesses) {
        if (c.kind != CongruenceKind::Reflection) continue;
        ++reflections;
        if (!c.axis) continue;
        bool dup = false;
        for (const Cycle& ax : rep.axes)
            if (ax.same_carrier(*c.axis, 1e-6)) dup = true;
        if (!dup) rep.axes.push_back(*c.axis);
    }

    const int order = continuous ? -1 : int(angles.size()) + 1;
    rep.rotation_order = order;
    rep.centre = centre;
    if (continuous)
        rep.classification = SymmetryClass::FullDiskGroup;
    else if (order >= 3)
        rep.classification = SymmetryClass::Rotational;
    else if (order == 2 && reflections > 0)
        rep.classification = SymmetryClass::CentralAndAxial;
    else if (order == 2)
        rep.classification = SymmetryClass::CentralOnly;
    else if (reflections > 0)
        rep.classification = SymmetryClass::AxialOnly;
    else
        rep.classification = SymmetryClass::Trivial;
    return rep;
}

}  // namespace

SymmetryReport classify(const ConvexRegion& r, double tol) {
    if (tol <= 0) tol = config().symmetry_tol;
    require(r.compact(), Errc::NonCompact, "classify needs a compact region");
    const double diam = diameter(r);
    const BoundaryCloud cloud = boundary_cloud(r);
    Verified v = verify_candidates(r, cloud, candidate_congruences(r), tol, diam);
    return derive_report(r, cloud, std::move(v), tol, diam);
}

// --- oracle ---------------------------------------------------------------------------

namespace {

struct OracleParams {
    bool is_reflection;
    // rotation: chart offset of the centre + angle; reflection: axis direction
    // angle + signed offset along its normal, both in a chart at the centroid
    double x = 0, y = 0, angle = 0;
    double dir = 0, offset = 0;
};

Congruence realize(const OracleParams& p, const Point& c0) {
    const Vec3 u0 = unit_tangent(c0, safe_dir(c0));
    const Vec3 v0 = left_normal(c0, u0);
    if (p.is_reflection) {
        // axis at signed distance `offset` from c0, direction angle `dir`
        if (std::fabs(p.offset) < 1e-14) {
            const Vec3 d = std::cos(p.dir) * u0 + std::sin(p.dir) * v0;
            return reflection_candidate(make_geodesic_dir(c0, d));
        }
        const Vec3 n = std::cos(p.dir + pi / 2) * u0 + std::sin(p.dir + pi / 2) * v0;
        const Point on = geodesic_walk(c0, unit_tangent(c0, n), p.offset);
        const Vec3 back = direction(on, c0);
        Vec3 d = left_normal(on, back);
        if (p.offset > 0) d = -1.0 * d;  // keep the direction angle convention
        return reflection_candidate(make_geodesic_dir(on, d));
    }
    Point centre = c0;
    const double rr = std::hypot(p.x, p.y);
    if (rr > 1e-15) {
        const Vec3 u = (p.x / rr) * u0 + (p.y / rr) * v0;
        centre = geodesic_walk(c0, unit_tangent(c0, u), rr);
    }
    return rotation_candidate(centre, p.angle);
}

// Nelder-Mead in 2 or 3 parameters. The residual is a max of smooth pieces,
// which stalls coordinate descent on its ridges; the simplex handles it.
template <typename F>
std::vector<double> nelder_mead_min(const F& f, std::vector<double> x0,
                                    const std::vector<double>& scale, int iters) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale[i];
    std::vector<double> val(n + 1);
    for (std::size_t i = 0; i <= n; ++i) val[i] = f(pts[i]);
    auto order = [&]() {
        for (std::size_t a = 0; a <= n; ++a)
            for (std::size_t b = a + 1; b <= n; ++b)
                if (val[b] < val[a]) { std::swap(val[a], val[b]); std::swap(pts[a], pts[b]); }
    };
    for (int it = 0; it < iters; ++it) {
        order();
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / double(n);
        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
            return x;
        };
        const std::vector<double> refl = blend(-1.0);
        const double fr = f(refl);
        if (fr < val[0]) {
            const std::vector<double> exp_ = blend(-2.0);
            const double fe = f(exp_);
            if (fe < fr) { pts[n] = exp_; val[n] = fe; }
            else { pts[n] = refl; val[n] = fr; }
        } else if (fr < val[n - 1]) {
            pts[n] = refl;
            val[n] = fr;
        } else {
            const std::vector<double> contr = blend(fr < val[n] ? -0.5 : 0.5);
            const double fc = f(contr);
            if (fc < std::min(fr, val[n])) { pts[n] = contr; val[n] = fc; }
            else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t k = 0; k < n; ++k)
                        pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
                    val[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return pts[0];
}

}  // namespace

SymmetryReport oracle_classify(const ConvexRegion& r, double tol) {
    if (tol <= 0) tol = config().symmetry_tol;
    require(r.compact(), Errc::NonCompact, "oracle_classify needs a compact region");
    const double diam = diameter(r);
    const BoundaryCloud fine = boundary_cloud(r);
    const BoundaryCloud coarse = boundary_cloud(r, 64);
    const BoundaryCloud medium = boundary_cloud(r, 160);
    const Point c0 = centroid_of(r.space(), coarse.points);

    // descent objective: forward deviation only. For a compact convex region,
    // iso(R) inside R forces iso(R) = R, so the zero set is unchanged and the
    // image arcs need not be rebuilt per evaluation.
    auto forward_residual = [&](const BoundaryCloud& cloud, const Isometry& iso,
                                double stop) {
        std::vector<Point> mapped;
        mapped.reserve(cloud.points.size());
        for (const Point& p : cloud.points) mapped.push_back(iso(p));
        return boundary_deviation(mapped, r, stop);
    };

    struct Scored {
        OracleParams p;
        double score;
    };
    std::vector<Scored> keep;
    const std::size_t top_k = 40;
    double worst_kept = kInf;
    auto offer = [&](const OracleParams& p, double score) {
        if (keep.size() < top_k) {
            keep.push_back({p, score});
            if (keep.size() == top_k) {
                std::stable_sort(keep.begin(), keep.end(),
                                 [](const Scored& a, const Scored& b) { return a.score < b.score; });
                worst_kept = keep.back().score;
            }
            return;
        }
        if (score >= worst_kept) return;
        keep.back() = {p, score};
        std::stable_sort(keep.begin(), keep.end(),
                         [](const Scored& a, const Scored& b) { return a.score < b.score; });
        worst_kept = keep.back().score;
    };

    // family sweeps: rotation centres on a polar grid with a circle of
    // angles, reflection axes by direction and offset
    for (double rad : {0.0, 0.18, 0.36, 0.54, 0.75}) {
        const int nth = rad == 0.0 ? 1 : 14;
        for (int it = 0; it < nth; ++it) {
            const double phi = 2 * pi * it / nth;
            for (int ia = 1; ia < 24; ++ia) {
                OracleParams p;
                p.is_reflection = false;
                p.x = rad * diam * std::cos(phi);
                p.y = rad * diam * std::sin(phi);
                p.angle = 2 * pi * ia / 24;
                offer(p, forward_residual(coarse, realize(p, c0).iso, worst_kept));
            }
        }
    }
    for (int id = 0; id < 24; ++id) {
        for (int io = -8; io <= 8; ++io) {
            OracleParams p;
            p.is_reflection = true;
            p.dir = pi * id / 24;
            p.offset = 0.09 * diam * io;
            offer(p, forward_residual(coarse, realize(p, c0).iso, worst_kept));
        }
    }
    std::stable_sort(keep.begin(), keep.end(),
                     [](const Scored& a, const Scored& b) { return a.score < b.score; });

    // one descent per parameter-space cluster
    std::vector<Scored> starts;
    for (const Scored& sc : keep) {
        bool dup = false;
        for (const Scored& st : starts) {
            if (st.p.is_reflection != sc.p.is_reflection) continue;
            if (sc.p.is_reflection) {
                const double dd = std::fabs(std::remainder(st.p.dir - sc.p.dir, pi));
                if (dd < 0.2 && std::fabs(st.p.offset - sc.p.offset) < 0.12 * diam) dup = true;
            } else {
                const double da = std::fabs(std::remainder(st.p.angle - sc.p.angle, 2 * pi));
                if (da < 0.3 && std::hypot(st.p.x - sc.p.x, st.p.y - sc.p.y) < 0.25 * diam)
                    dup = true;
            }
            if (dup) break;
        }
        if (!dup) starts.push_back(sc);
        if (starts.size() >= 20) break;
    }

    std::vector<Congruence> cands;
    auto add_cand = [&](Congruence c) {
        if ((c.iso.matrix() - Mat3::identity()).max_abs() < 1e-6) return;  // drifted to id
        for (const Congruence& e : cands)
            if ((e.iso.matrix() - c.iso.matrix()).max_abs() < 1e-7) return;
        cands.push_back(std::move(c));
    };
    for (const Scored& sc : starts) {
        OracleParams p = sc.p;
        std::vector<double> q = p.is_reflection ? std::vector<double>{p.dir, p.offset}
                                                : std::vector<double>{p.x, p.y, p.angle};
        auto objective = [&](const std::vector<double>& qq) {
            OracleParams t = p;
            if (p.is_reflection) { t.dir = qq[0]; t.offset = qq[1]; }
            else { t.x = qq[0]; t.y = qq[1]; t.angle = qq[2]; }
            return forward_residual(medium, realize(t, c0).iso, kInf);
        };
        std::vector<double> scale = p.is_reflection
                                        ? std::vector<double>{0.14, 0.08 * diam}
                                        : std::vector<double>{0.1 * diam, 0.1 * diam, 0.15};
        q = nelder_mead_min(objective, q, scale, 110);
        if (objective(q) > 0.02 * diam) continue;  // not converging to a symmetry
        for (double shrink : {1e-3, 1e-6}) {
            std::vector<double> fine_scale = scale;
            for (double& v : fine_scale) v *= shrink;
            q = nelder_mead_min(objective, q, fine_scale, 70);
        }
        if (p.is_reflection) { p.dir = q[0]; p.offset = q[1]; }
        else { p.x = q[0]; p.y = q[1]; p.angle = q[2]; }
        add_cand(realize(p, c0));
    }
    Verified v = verify_candidates(r, fine, std::move(cands), tol, diam);
    return derive_report(r, fine, std::move(v), tol, diam);
}

}  // namespace ccg
