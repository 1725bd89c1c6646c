#include "ccg/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "ccg/kernels.hpp"

namespace ccg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_margin(const std::vector<Cycle>& halves, const Point& p) {
    double m = kInf;
    for (const Cycle& c : halves) m = std::min(m, c.side_value(p));
    return m;
}

// Local chart around `centre` for derivative-free searches: collinear model
// coordinates recentred at `centre`.
struct Chart {
    Isometry frame;
    explicit Chart(const Point& centre) : frame(frame_at(centre, pick_dir(centre))) {}
    static Vec3 pick_dir(const Point& p) {
        Vec3 any{1, 0, 0};
        if (std::fabs(p.v.x) > 0.9 * p.v.norm()) any = {0, 1, 0};
        return any;
    }
    std::optional<Point> lift(const Vec2& u) const {
        const Space s = frame.space();
        if (s == Space::Hyperbolic && u.norm2() >= 1.0) return std::nullopt;
        return frame(from_model({u, Model::Collinear, s}));
    }
};

// Nelder-Mead maximization of f over the chart plane.
template <typename F>
Vec2 nelder_mead_max(const F& f, Vec2 start, double scale, int iters) {
    auto eval = [&](const Vec2& u) { return f(u); };
    Vec2 pts[3] = {start, start + Vec2{scale, 0}, start + Vec2{0, scale}};
    double val[3] = {eval(pts[0]), eval(pts[1]), eval(pts[2])};
    for (int it = 0; it < iters; ++it) {
        int hi = 0, lo = 0;
        for (int i = 1; i < 3; ++i) {
            if (val[i] < val[lo]) lo = i;
            if (val[i] > val[hi]) hi = i;
        }
        int mid = 3 - hi - lo;
        if (hi == lo) mid = (hi + 1) % 3;
        const Vec2 centroid = (pts[hi] + pts[mid]) * 0.5;
        const Vec2 refl = centroid + (centroid - pts[lo]);
        double vr = eval(refl);
        if (vr > val[hi]) {
            const Vec2 exp_ = centroid + (refl - centroid) * 2.0;
            const double ve = eval(exp_);
            if (ve > vr) { pts[lo] = exp_; val[lo] = ve; }
            else { pts[lo] = refl; val[lo] = vr; }
        } else if (vr > val[lo]) {
            pts[lo] = refl; val[lo] = vr;
        } else {
            const Vec2 contr = centroid + (pts[lo] - centroid) * 0.5;
            const double vc = eval(contr);
            if (vc > val[lo]) { pts[lo] = contr; val[lo] = vc; }
            else {
                for (int i = 0; i < 3; ++i) {
                    if (i == hi) continue;
                    pts[i] = (pts[i] + pts[hi]) * 0.5;
                    val[i] = eval(pts[i]);
                }
            }
        }
    }
    int hi = 0;
    for (int i = 1; i < 3; ++i)
        if (val[i] > val[hi]) hi = i;
    return pts[hi];
}

struct WitnessResult {
    std::optional<Point> point;
    double margin = -kInf;
    std::vector<Point> feasible;  // boundary-feasible points seen on the way
};

// Search for an interior point of the intersection of the half-domains.
WitnessResult find_witness(Space space, const std::vector<Cycle>& halves,
                           const std::vector<Point>& seeds) {
    WitnessResult res;
    std::vector<Point> cands = seeds;
    const double feas = config().feasibility;

    // vertices of the constraint arrangement, nudged inward
    for (std::size_t i = 0; i < halves.size(); ++i) {
        for (std::size_t j = i + 1; j < halves.size(); ++j) {
            CycleIntersection x = intersect_cycles(halves[i], halves[j]);
            if (x.kind != CycleIntersection::Kind::Points) continue;
            for (const Point& p : x.points) {
                bool ok = true;
                for (std::size_t k = 0; k < halves.size() && ok; ++k)
                    if (k != i && k != j && halves[k].side_value(p) < -feas) ok = false;
                if (!ok) continue;
                res.feasible.push_back(p);
                cands.push_back(p);
                const Vec3 ti = halves[i].tangent_at(halves[i].param_of(p));
                const Vec3 tj = halves[j].tangent_at(halves[j].param_of(p));
                const Vec3 ni = left_normal(p, ti), nj = left_normal(p, tj);
                Vec3 w = ni + nj;
                if (form_dot(space, w, w) < 1e-20) continue;
                w = unit_tangent(p, w);
                for (double d : {1e-6, 1e-3, 0.05, 0.4})
                    cands.push_back(geodesic_walk(p, w, d));
            }
        }
    }
    // midpoints of feasible vertex pairs
    const std::size_t nf = res.feasible.size();
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = i + 1; j < nf; ++j)
            if (distance(res.feasible[i], res.feasible[j]) > 1e-12)
                cands.push_back(geodesic_point(res.feasible[i], res.feasible[j], 0.5));
    // points pushed inward from each cycle
    for (const Cycle& c : halves) {
        const Point p = c.point_at(0.0);
        const Vec3 n = left_normal(p, c.tangent_at(0.0));
        for (double d : {1e-3, 0.3, 1.0})
            cands.push_back(geodesic_walk(p, unit_tangent(p, n), d));
    }

    const Point* best = nullptr;
    for (const Point& p : cands) {
        if (p.space != space) continue;
        const double m = min_margin(halves, p);
        if (m > res.margin) { res.margin = m; best = &p; }
    }
    if (!best) return res;
    Point anchor = *best;

    // polish with a small simplex search in a local chart
    const Chart chart(anchor);
    auto objective = [&](const Vec2& u) {
        const auto p = chart.lift(u);
        return p ? min_margin(halves, *p) : -kInf;
    };
    for (double scale : {0.2, 0.01}) {
        const Vec2 u = nelder_mead_max(objective, {0, 0}, scale, 80);
        if (const auto p = chart.lift(u)) {
            const double m = min_margin(halves, *p);
            if (m > res.margin) { res.margin = m; anchor = *p; }
        }
    }
    res.point = anchor;
    return res;
}

bool same_half_domain(const Cycle& a, const Cycle& b) {
    if (!a.same_carrier(b)) return false;
    if (a.kind() != CycleKind::Geodesic) return true;  // curved: side is intrinsic
    // geodesics: compare the convex-side normals
    const Vec3 d = a.level_normal() - b.level_normal();
    return d.norm() < 1e-9 && std::fabs(a.level_offset() - b.level_offset()) < 1e-9;
}

}  // namespace

double ArcChain::length() const {
    double total = 0.0;
    for (const CycleArc& a : arcs)
        if (!a.unbounded()) total += a.length();
    return total;
}

// --- ConvexRegion -------------------------------------------------------------

ConvexRegion::ConvexRegion(Space space, std::vector<Cycle> halves, const Point& witness,
                           std::optional<Isometry> placement)
    : space_(space),
      halves_(std::move(halves)),
      placement_(placement.value_or(Isometry::identity(space))),
      witness_(witness) {
    require(!halves_.empty(), Errc::InvalidArgument, "a region needs at least one constraint");
    require(halves_.size() <= config().max_constraints, Errc::OutOfRange,
            "too many constraints");
    for (const Cycle& c : halves_)
        require(c.space() == space_, Errc::SpaceMismatch, "constraint space mismatch");
    require(witness_.space == space_, Errc::SpaceMismatch, "witness space mismatch");
    placed_.reserve(halves_.size());
    for (const Cycle& c : halves_) placed_.push_back(transform_cycle(placement_, c));
    require(margin(witness_) > 0, Errc::EmptyInterior, "witness is not interior");
}

ConvexRegion::ConvexRegion(const ConvexRegion& other)
    : space_(other.space_),
      halves_(other.halves_),
      placed_(other.placed_),
      placement_(other.placement_),
      witness_(other.witness_) {
    std::lock_guard<std::mutex> lock(other.cache_mutex_);
    traced_ = other.traced_;
    chains_ = other.chains_;
    redundant_ = other.redundant_;
}

ConvexRegion& ConvexRegion::operator=(const ConvexRegion& other) {
    if (this == &other) return *this;
    space_ = other.space_;
    halves_ = other.halves_;
    placed_ = other.placed_;
    placement_ = other.placement_;
    witness_ = other.witness_;
    std::scoped_lock lock(cache_mutex_, other.cache_mutex_);
    traced_ = other.traced_;
    chains_ = other.chains_;
    redundant_ = other.redundant_;
    return *this;
}

double ConvexRegion::margin(const Point& p) const { return min_margin(placed_, p); }

bool ConvexRegion::contains(const Point& p) const { return margin(p) >= -config().on_cycle; }

ConvexRegion transform_region(const Isometry& iso, const ConvexRegion& r) {
    return ConvexRegion(r.space(), r.canonical_halves(), iso(r.witness()),
                        compose(iso, r.placement()));
}

void ConvexRegion::trace_boundary() const {
    const double feas = config().feasibility;
    const double join = config().chain_join;
    const std::size_t n = placed_.size();

    // split parameters on each cycle: crossings with every other constraint.
    // Between consecutive crossings every other margin keeps its sign, so a
    // single midpoint probe decides each stretch.
    std::vector<std::vector<double>> splits(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            CycleIntersection x = intersect_cycles(placed_[i], placed_[j]);
            if (x.kind != CycleIntersection::Kind::Points) continue;
            for (const Point& p : x.points) {
                splits[i].push_back(placed_[i].param_of(p));
                splits[j].push_back(placed_[j].param_of(p));
            }
        }
    }

    auto feasible_on = [&](std::size_t i, double s) {
        const Point p = placed_[i].point_at(s);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i && placed_[k].side_value(p) < -feas) return false;
        return true;
    };

    std::vector<CycleArc> pool;
    redundant_.assign(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double>& sp = splits[i];
        std::sort(sp.begin(), sp.end());
        sp.erase(std::unique(sp.begin(), sp.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-11; }),
                 sp.end());
        const bool closed = placed_[i].closed();
        if (sp.empty()) {
            if (feasible_on(i, 0.0)) {
                redundant_[i] = false;
                if (closed)
                    pool.push_back({placed_[i], 0.0, placed_[i].period(), 1});
                else
                    pool.push_back({placed_[i], -kInf, kInf, 1});
            }
            continue;
        }
        if (closed) {
            const double per = placed_[i].period();
            for (std::size_t k = 0; k < sp.size(); ++k) {
                const double s0 = sp[k];
                const double s1 = k + 1 < sp.size() ? sp[k + 1] : sp[0] + per;
                if (s1 - s0 < 1e-11) continue;
                if (feasible_on(i, 0.5 * (s0 + s1))) {
                    redundant_[i] = false;
                    pool.push_back({placed_[i], s0, s1, 1});
                }
            }
        } else {
            if (feasible_on(i, sp.front() - 1.0)) {
                redundant_[i] = false;
                pool.push_back({placed_[i], -kInf, sp.front(), 1});
            }
            for (std::size_t k = 0; k + 1 < sp.size(); ++k) {
                if (sp[k + 1] - sp[k] < 1e-11) continue;
                if (feasible_on(i, 0.5 * (sp[k] + sp[k + 1]))) {
                    redundant_[i] = false;
                    pool.push_back({placed_[i], sp[k], sp[k + 1], 1});
                }
            }
            if (feasible_on(i, sp.back() + 1.0)) {
                redundant_[i] = false;
                pool.push_back({placed_[i], sp.back(), kInf, 1});
            }
        }
    }

    // assemble chains by endpoint matching
    std::vector<bool> used(pool.size(), false);
    chains_.clear();
    auto find_next = [&](const Point& at) -> int {
        int best = -1;
        double bd = join;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (used[k] || std::isinf(pool[k].s0)) continue;
            const double d = distance(pool[k].start(), at);
            if (d <= bd) { bd = d; best = int(k); }
        }
        return best;
    };

    auto finish_chain = [&](ArcChain& ch) {
        // record genuine corners at internal junctions (and the closing one)
        const std::size_t m = ch.arcs.size();
        if (m == 0) return;
        const std::size_t joints = ch.closed ? m : m - 1;
        for (std::size_t k = 0; k < joints; ++k) {
            const CycleArc& in = ch.arcs[k];
            const CycleArc& out = ch.arcs[(k + 1) % m];
            if (std::isinf(in.s1) || std::isinf(out.s0)) continue;
            const Point p = in.end();
            const Vec3 tin = in.cycle.tangent_at(in.s1);
            const Vec3 tout = out.cycle.tangent_at(out.s0);
            const Vec3 dm = tin - tout, dp = tin + tout;
            const double nm = std::sqrt(std::max(0.0, form_dot(space_, dm, dm)));
            const double np = std::sqrt(std::max(0.0, form_dot(space_, dp, dp)));
            double turn = 2.0 * std::atan2(nm, np);
            if (form_dot(space_, left_normal(p, tin), tout) < 0) turn = -turn;
            if (turn > config().vertex_angle) ch.vertices.push_back({p, turn});
        }
        chains_.push_back(std::move(ch));
    };

    // closed chains and full cycles first
    for (std::size_t k = 0; k < pool.size(); ++k) {
        if (used[k] || std::isinf(pool[k].s0) || std::isinf(pool[k].s1)) continue;
        if (pool[k].cycle.closed() &&
            pool[k].s1 - pool[k].s0 >= pool[k].cycle.period() - 1e-11) {
            used[k] = true;
            ArcChain ch;
            ch.arcs.push_back(pool[k]);
            ch.closed = true;
            finish_chain(ch);
        }
    }
    for (std::size_t k = 0; k < pool.size(); ++k) {
        if (used[k] || std::isinf(pool[k].s0)) continue;
        // walk forward from this arc; closes or ends at an unbounded tail
        ArcChain ch;
        std::size_t cur = k;
        used[cur] = true;
        ch.arcs.push_back(pool[cur]);
        while (true) {
            if (std::isinf(ch.arcs.back().s1)) break;
            const Point tail = ch.arcs.back().end();
            if (ch.arcs.size() > 1 && distance(tail, ch.arcs.front().start()) <= join) {
                ch.closed = true;
                break;
            }
            const int nxt = find_next(tail);
            if (nxt < 0) break;
            used[nxt] = true;
            ch.arcs.push_back(pool[nxt]);
        }
        if (!ch.closed && !std::isinf(ch.arcs.front().s0)) {
            // extend backward (we may have started mid-chain)
            while (true) {
                const Point head = ch.arcs.front().start();
                int best = -1;
                double bd = join;
                for (std::size_t q = 0; q < pool.size(); ++q) {
                    if (used[q] || std::isinf(pool[q].s1)) continue;
                    const double d = distance(pool[q].end(), head);
                    if (d <= bd) { bd = d; best = int(q); }
                }
                if (best < 0) break;
                used[best] = true;
                ch.arcs.insert(ch.arcs.begin(), pool[best]);
                if (std::isinf(ch.arcs.front().s0)) break;
            }
        }
        finish_chain(ch);
    }
    // leftover purely-unbounded arcs (whole lines)
    for (std::size_t k = 0; k < pool.size(); ++k) {
        if (used[k]) continue;
        used[k] = true;
        ArcChain ch;
        ch.arcs.push_back(pool[k]);
        finish_chain(ch);
    }
    traced_ = true;
}

const std::vector<ArcChain>& ConvexRegion::boundary_chains() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!traced_) trace_boundary();
    return chains_;
}

std::vector<bool> ConvexRegion::redundant_flags() const {
    const std::size_t nprobe = config().redundancy_probe;
    std::vector<bool> out(placed_.size(), true);
    for (std::size_t i = 0; i < placed_.size(); ++i) {
        const Cycle& c = placed_[i];
        const bool closed = c.closed();
        const double lo = closed ? 0.0 : -config().clip_radius;
        const double hi = closed ? c.period() : config().clip_radius;
        for (std::size_t k = 0; k < nprobe && out[i]; ++k) {
            const double s = lo + (hi - lo) * (double(k) + 0.5) / double(nprobe);
            const Point p = c.point_at(s);
            bool feas = true;
            for (std::size_t j = 0; j < placed_.size() && feas; ++j)
                if (j != i && placed_[j].side_value(p) < -config().feasibility) feas = false;
            if (feas) out[i] = false;
        }
    }
    return out;
}

bool ConvexRegion::compact() const {
    for (const ArcChain& ch : boundary_chains()) {
        if (!ch.closed) return false;
        for (const CycleArc& a : ch.arcs)
            if (a.unbounded()) return false;
    }
    return !boundary_chains().empty();
}

std::size_t ConvexRegion::vertex_count() const {
    std::size_t v = 0;
    for (const ArcChain& ch : boundary_chains()) v += ch.vertices.size();
    return v;
}

std::vector<Vertex> ConvexRegion::all_vertices() const {
    std::vector<Vertex> out;
    for (const ArcChain& ch : boundary_chains())
        out.insert(out.end(), ch.vertices.begin(), ch.vertices.end());
    return out;
}

namespace {

// Whether the ideal point with boundary coordinate u lies in the closure of a
// half-domain: decided by the sign of <c, (u,1)> (the value of <c, x> along a
// ray toward u grows like that sign).
//   geodesic half-plane {<c,x> >= 0}:      closure-ideal iff <c,nu> >= -tol
//   hypercycle domain  {<c,x> <= sinh l}:  closure-ideal iff <c,nu> <= +tol
//   horoball: only its own centre; disk: nothing.
int ideal_side(const Cycle& c, const Vec2& u, double tol) {
    const Vec3 nu{u.x, u.y, 1.0};
    switch (c.kind()) {
        case CycleKind::Circle: return -1;
        case CycleKind::Paracycle:
            return (c.ideal_points()[0] - u).norm() <= 1e-9 ? 0 : -1;
        case CycleKind::Geodesic: {
            const double v = form_dot(Space::Hyperbolic, c.level_normal(), nu);
            return v > tol ? 1 : (v >= -tol ? 0 : -1);
        }
        case CycleKind::Hypercycle: {
            const double v = form_dot(Space::Hyperbolic, c.level_normal(), nu);
            return v < -tol ? 1 : (v <= tol ? 0 : -1);
        }
    }
    return -1;
}

}  // namespace

std::vector<Vec2> ConvexRegion::ideal_points() const {
    require(space_ == Space::Hyperbolic, Errc::UnsupportedCycle, "ideal points need H2");
    std::vector<Vec2> out;
    auto push_unique = [&](const Vec2& u) {
        for (const Vec2& v : out)
            if ((v - u).norm() < 1e-9) return;
        out.push_back(u);
    };
    // isolated closure ideals sit at ideal endpoints of the constraints
    for (const Cycle& c : placed_) {
        if (c.kind() == CycleKind::Circle) return {};
        for (const Vec2& u : c.ideal_points()) {
            bool inside = true;
            for (const Cycle& other : placed_)
                if (ideal_side(other, u, 1e-9) < 0) { inside = false; break; }
            if (inside) push_unique(u);
        }
    }
    return out;
}

bool ConvexRegion::closure_meets_ideal_arc() const {
    require(space_ == Space::Hyperbolic, Errc::UnsupportedCycle, "ideal arcs need H2");
    // a strictly feasible boundary direction implies a whole feasible arc
    const int N = 2048;
    for (int k = 0; k < N; ++k) {
        const double th = 2.0 * pi * (double(k) + 0.5) / N;
        const Vec2 u{std::cos(th), std::sin(th)};
        bool ok = true;
        for (const Cycle& c : placed_)
            if (ideal_side(c, u, 1e-9) <= 0) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

// --- constructors ----------------------------------------------------------------

ConvexRegion disk(const Point& centre, double r) {
    return ConvexRegion(centre.space, {make_circle(centre, r)}, centre);
}

ConvexRegion half_plane(const Point& on_line, const Vec3& dir) {
    const Cycle g = make_geodesic_dir(on_line, dir);
    const Vec3 inward = unit_tangent(on_line, left_normal(on_line, g.tangent_at(0)));
    const double step = on_line.space == Space::Sphere ? 0.7 : 1.0;
    return ConvexRegion(on_line.space, {g}, geodesic_walk(on_line, inward, step));
}

ConvexRegion strip(const Point& on_line, const Vec3& dir, double width) {
    require(on_line.space == Space::Euclidean, Errc::UnsupportedCycle,
            "parallel strips are Euclidean");
    require(width > 0, Errc::OutOfRange, "strip width must be positive");
    const Cycle mid = make_geodesic_dir(on_line, dir);
    const Vec3 up = unit_tangent(on_line, left_normal(on_line, mid.tangent_at(0)));
    const Point a = geodesic_walk(on_line, up, width / 2);
    const Point b = geodesic_walk(on_line, up, -width / 2);
    const Vec3 t = mid.tangent_at(0);
    return ConvexRegion(Space::Euclidean,
                        {make_geodesic_dir(a, -1.0 * t), make_geodesic_dir(b, t)}, on_line);
}

ConvexRegion paraball(const Vec2& ideal, const Point& through) {
    const Cycle pc = make_paracycle(ideal, through);
    const Vec2 b = ideal.normalized();
    const Vec3 n{b.x, b.y, 1.0};
    const Vec3 radial = n + form_dot(Space::Hyperbolic, through.v, n) * through.v;
    const Point w = geodesic_walk(through, unit_tangent(through, radial), 1.0);
    return ConvexRegion(Space::Hyperbolic, {pc}, w);
}

ConvexRegion hypercycle_region(const Cycle& base, double l, bool both_sides) {
    require(base.space() == Space::Hyperbolic && base.kind() == CycleKind::Geodesic,
            Errc::UnsupportedCycle, "hypercycle regions need an H2 base geodesic");
    require(l > 0, Errc::OutOfRange, "hypercycle distance must be positive");
    std::vector<Cycle> halves{make_hypercycle(base, l)};
    if (both_sides) halves.push_back(make_hypercycle(base, -l));
    return ConvexRegion(Space::Hyperbolic, std::move(halves), base.point_at(0.0));
}

ConvexRegion from_halves(Space space, std::vector<Cycle> halves,
                         std::optional<Point> witness) {
    // drop duplicated half-domains
    std::vector<Cycle> dedup;
    for (const Cycle& c : halves) {
        bool dup = false;
        for (const Cycle& d : dedup)
            if (same_half_domain(c, d)) { dup = true; break; }
        if (!dup) dedup.push_back(c);
    }
    if (witness) return ConvexRegion(space, std::move(dedup), *witness);
    WitnessResult w = find_witness(space, dedup, {});
    require(w.point.has_value() && w.margin > 1e-12, Errc::EmptyInterior,
            "constraints have no interior point");
    return ConvexRegion(space, std::move(dedup), *w.point);
}

ConvexRegion polygon(Space space, const std::vector<Point>& verts) {
    require(verts.size() >= 3, Errc::InvalidArgument, "polygon needs three vertices");
    std::vector<Cycle> halves;
    Vec3 acc{0, 0, 0};
    for (const Point& v : verts) acc += v.v;
    const Point centroid(space, acc / double(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        halves.push_back(make_geodesic(verts[i], verts[(i + 1) % verts.size()]));
    return ConvexRegion(space, std::move(halves), centroid);
}

// --- intersection -------------------------------------------------------------------

IntersectionResult intersect_regions(const ConvexRegion& a, const ConvexRegion& b) {
    require(a.space() == b.space(), Errc::SpaceMismatch, "intersecting across spaces");
    IntersectionResult out;
    std::vector<Cycle> halves;
    for (const Cycle& c : a.halves()) halves.push_back(c);
    for (const Cycle& c : b.halves()) {
        bool dup = false;
        for (const Cycle& d : halves)
            if (same_half_domain(c, d)) { dup = true; break; }
        if (!dup) halves.push_back(c);
    }
    require(halves.size() <= config().max_constraints, Errc::OutOfRange,
            "too many constraints in the intersection");

    WitnessResult w = find_witness(a.space(), halves, {a.witness(), b.witness()});
    if (!w.point || w.margin <= 1e-12) {
        // no interior: either empty, or a shared chord
        std::vector<Point> feas;
        for (const Point& p : w.feasible)
            if (min_margin(halves, p) >= -config().feasibility) feas.push_back(p);
        // probe cycles for feasible stretches (covers the no-vertex case)
        for (const Cycle& c : halves) {
            const bool closed = c.closed();
            const double lo = closed ? 0.0 : -config().clip_radius;
            const double hi = closed ? c.period() : config().clip_radius;
            for (int k = 0; k < 64; ++k) {
                const Point p = c.point_at(lo + (hi - lo) * (k + 0.5) / 64.0);
                if (min_margin(halves, p) >= -config().feasibility) feas.push_back(p);
            }
        }
        double best = 0.0;
        std::pair<int, int> pick{-1, -1};
        for (std::size_t i = 0; i < feas.size(); ++i)
            for (std::size_t j = i + 1; j < feas.size(); ++j) {
                const double d = distance(feas[i], feas[j]);
                if (d > best) { best = d; pick = {int(i), int(j)}; }
            }
        if (best > 1e-8) {
            out.status = IntersectionResult::Status::DegenerateChord;
            out.chord = {feas[pick.first], feas[pick.second]};
            out.description = "common chord";
        } else {
            out.status = IntersectionResult::Status::EmptyInterior;
        }
        return out;
    }

    ConvexRegion r(a.space(), halves, *w.point);
    if (r.compact()) {
        out.status = IntersectionResult::Status::CompactLens;
        out.chain = r.boundary_chains().front();
        out.region = std::move(r);
    } else {
        out.status = IntersectionResult::Status::Unbounded;
        out.description =
            std::to_string(r.boundary_chains().size()) + " boundary chains, not compact";
        out.region = std::move(r);
    }
    return out;
}

// --- scalar operations ----------------------------------------------------------------

BoundaryCloud boundary_cloud(const ConvexRegion& r, std::size_t n_per_chain) {
    if (n_per_chain == 0) n_per_chain = config().boundary_samples;
    BoundaryCloud out;
    for (const ArcChain& ch : r.boundary_chains()) {
        double total = 0.0;
        for (const CycleArc& a : ch.arcs)
            total += a.unbounded() ? 2 * config().clip_radius : a.length();
        for (const CycleArc& a : ch.arcs) {
            out.arcs.push_back(a);
            const double len = a.unbounded() ? 2 * config().clip_radius : a.length();
            const auto n = std::max<std::size_t>(
                2, std::size_t(double(n_per_chain) * len / std::max(total, 1e-30)));
            auto pts = sample_arc(a, n, config().clip_radius);
            out.points.insert(out.points.end(), pts.begin(), pts.end());
        }
    }
    return out;
}

double region_distance(const Point& p, const ConvexRegion& r) {
    if (r.contains(p)) return 0.0;
    double best = kInf;
    for (const ArcChain& ch : r.boundary_chains())
        for (const CycleArc& a : ch.arcs) best = std::min(best, distance_to_arc(p, a));
    return best;
}

double perimeter(const ConvexRegion& r) {
    require(r.compact(), Errc::NonCompact, "perimeter of an unbounded region");
    double total = 0.0;
    for (const ArcChain& ch : r.boundary_chains()) total += ch.length();
    return total;
}

double diameter(const ConvexRegion& r) {
    require(r.compact(), Errc::NonCompact, "diameter of an unbounded region");
    return max_pairwise_distance(boundary_cloud(r).points);
}

double area(const ConvexRegion& r) {
    require(r.compact(), Errc::NonCompact, "area of an unbounded region");
    const Chart chart(r.witness());
    const Isometry recentre = chart.frame.inverse();
    const Space s = r.space();
    auto F = [&](double rho2) {
        switch (s) {
            case Space::Euclidean: return rho2 / 2.0;
            case Space::Hyperbolic: return 1.0 / std::sqrt(1.0 - rho2) - 1.0;
            case Space::Sphere: return 1.0 - 1.0 / std::sqrt(1.0 + rho2);
        }
        return 0.0;
    };
    double total = 0.0;
    for (const ArcChain& ch : r.boundary_chains()) {
        std::vector<Vec2> us;
        for (const CycleArc& a : ch.arcs) {
            const auto n = std::max<std::size_t>(8, std::size_t(a.length() * 2048));
            for (const Point& p : sample_arc(a, n)) us.push_back(to_model(recentre(p), Model::Collinear).u);
        }
        for (std::size_t k = 0; k < us.size(); ++k) {
            const Vec2& u0 = us[k];
            const Vec2& u1 = us[(k + 1) % us.size()];
            double dth = std::atan2(u1.y, u1.x) - std::atan2(u0.y, u0.x);
            while (dth > pi) dth -= 2 * pi;
            while (dth < -pi) dth += 2 * pi;
            total += 0.5 * (F(u0.norm2()) + F(u1.norm2())) * dth;
        }
    }
    return std::fabs(total);
}

double support_function(const ConvexRegion& r, const Point& base, const Vec2& u) {
    require(r.compact(), Errc::NonCompact, "support function of an unbounded region");
    const Chart chart(base);
    const Isometry recentre = chart.frame.inverse();
    const Vec2 uh = u.normalized();
    double best = -kInf;
    const BoundaryCloud cloud = boundary_cloud(r);
    for (const Point& p : cloud.points) {
        const Point q = recentre(p);
        if (r.space() == Space::Sphere && q.v.z >= -1e-12)
            fail(Errc::OutsideModelDomain, "region leaves the collinear model domain");
        best = std::max(best, to_model(q, Model::Collinear).u.dot(uh));
    }
    // refine on each arc around the sampled maximum
    for (const CycleArc& a : cloud.arcs) {
        double lo = a.s0, hi = a.s1;
        auto val = [&](double s) {
            return to_model(recentre(a.cycle.point_at(s)), Model::Collinear).u.dot(uh);
        };
        for (int it = 0; it < 60; ++it) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (val(m1) < val(m2)) lo = m1;
            else hi = m2;
        }
        best = std::max(best, val(0.5 * (lo + hi)));
    }
    return best;
}

double radial_function(const ConvexRegion& r, const Point& base, const Vec3& u) {
    require(r.margin(base) > 0, Errc::BaseNotInterior, "radial base must be interior");
    const Vec3 uh = unit_tangent(base, u);
    if (r.space() == Space::Sphere) {
        for (const Point& p : boundary_cloud(r, 256).points)
            require(distance(base, p) < pi / 2 - 1e-9, Errc::OutOfRange,
                    "sphere radial needs the region inside an open hemisphere");
    }
    double hi = 1.0;
    const double cap = r.compact() ? 4.0 * config().clip_radius : config().clip_radius;
    while (r.contains(geodesic_walk(base, uh, hi))) {
        hi *= 2.0;
        if (hi > cap) return kInf;
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (r.contains(geodesic_walk(base, uh, mid))) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b) {
    require(a.compact() && b.compact(), Errc::NonCompact,
            "Hausdorff distance needs compact regions");
    const double d1 = boundary_deviation(boundary_cloud(a).points, b, kInf);
    const double d2 = boundary_deviation(boundary_cloud(b).points, a, kInf);
    return std::max(d1, d2);
}

}  // namespace ccg
