#include "ccg/render.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ccg {

namespace {

struct Viewport {
    double cx = 0, cy = 0, half = 1.1;
    double px(double x) const { return 480.0 + 440.0 * (x - cx) / half; }
    double py(double y) const { return 480.0 - 440.0 * (y - cy) / half; }
};

const char* body_colour(std::size_t i) {
    static const char* palette[] = {"#2266cc", "#cc4422", "#22aa66", "#aa22aa",
                                    "#888822", "#2299aa"};
    return palette[i % 6];
}

std::vector<Vec2> chain_model_points(const ArcChain& ch, Model model, Space space) {
    std::vector<Vec2> out;
    for (const CycleArc& a : ch.arcs) {
        const double len = a.unbounded() ? 2 * config().clip_radius : a.length();
        const auto n = std::max<std::size_t>(16, std::size_t(len * 96));
        for (const Point& p : sample_arc(a, n, config().clip_radius)) {
            if (space == Space::Sphere && model == Model::Collinear && p.v.z >= -1e-9)
                fail(Errc::OutsideModelDomain,
                     "region crosses the collinear model boundary");
            out.push_back(to_model(p, model).u);
        }
    }
    return out;
}

void path_element(std::ostringstream& svg, const std::vector<Vec2>& pts,
                  const Viewport& vp, const char* colour, bool closed, bool dashed) {
    if (pts.empty()) return;
    svg << "<path d=\"M " << vp.px(pts[0].x) << ' ' << vp.py(pts[0].y);
    for (std::size_t i = 1; i < pts.size(); ++i)
        svg << " L " << vp.px(pts[i].x) << ' ' << vp.py(pts[i].y);
    if (closed) svg << " Z";
    svg << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.6\"";
    if (dashed) svg << " stroke-dasharray=\"6 5\"";
    svg << "/>\n";
}

}  // namespace

void render_scene(const Scene& scene, Model model, const std::string& path,
                  const std::vector<SymmetryReport>& reports) {
    const Space space = scene.space;
    Viewport vp;
    if (space == Space::Euclidean) {
        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        for (const ConvexRegion& body : scene.bodies)
            for (const ArcChain& ch : body.boundary_chains())
                for (const Vec2& u : chain_model_points(ch, model, space)) {
                    lo_x = std::min(lo_x, u.x);
                    hi_x = std::max(hi_x, u.x);
                    lo_y = std::min(lo_y, u.y);
                    hi_y = std::max(hi_y, u.y);
                }
        if (lo_x > hi_x) { lo_x = -1; hi_x = 1; lo_y = -1; hi_y = 1; }
        vp.cx = 0.5 * (lo_x + hi_x);
        vp.cy = 0.5 * (lo_y + hi_y);
        vp.half = 0.6 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"960\" "
           "viewBox=\"0 0 960 960\">\n<rect width=\"960\" height=\"960\" fill=\"white\"/>\n";
    if (space != Space::Euclidean) {
        svg << "<circle cx=\"" << vp.px(0) << "\" cy=\"" << vp.py(0) << "\" r=\""
            << 440.0 / vp.half << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }

    for (std::size_t i = 0; i < scene.bodies.size(); ++i) {
        const ConvexRegion& body = scene.bodies[i];
        for (const ArcChain& ch : body.boundary_chains()) {
            path_element(svg, chain_model_points(ch, model, space), vp, body_colour(i),
                         ch.closed, false);
            for (const Vertex& v : ch.vertices) {
                const Vec2 u = to_model(v.point, model).u;
                svg << "<circle cx=\"" << vp.px(u.x) << "\" cy=\"" << vp.py(u.y)
                    << "\" r=\"3.5\" fill=\"" << body_colour(i) << "\"/>\n";
            }
        }
    }

    for (const SymmetryReport& rep : reports) {
        for (const Cycle& ax : rep.axes) {
            CycleArc arc{ax, -config().clip_radius, config().clip_radius, 1};
            std::vector<Vec2> pts;
            for (const Point& p : sample_arc(arc, 128))
                pts.push_back(to_model(p, model).u);
            path_element(svg, pts, vp, "#444444", false, true);
        }
        if (rep.centre) {
            const Vec2 u = to_model(*rep.centre, model).u;
            const double x = vp.px(u.x), y = vp.py(u.y);
            svg << "<path d=\"M " << x - 6 << ' ' << y << " L " << x + 6 << ' ' << y
                << " M " << x << ' ' << y - 6 << " L " << x << ' ' << y + 6
                << "\" stroke=\"#000000\" stroke-width=\"1.6\"/>\n";
        }
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    require(out.good(), Errc::ParseError, "cannot write SVG file '" + path + "'");
    out << svg.str();
}

}  // namespace ccg
