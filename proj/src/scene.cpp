#include "ccg/scene.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ccg {

using nlohmann::json;

namespace {

Space space_from(const std::string& s) {
    if (s == "S2") return Space::Sphere;
    if (s == "E2") return Space::Euclidean;
    if (s == "H2") return Space::Hyperbolic;
    fail(Errc::ParseError, "unknown space tag '" + s + "'");
}

json point_json(const Point& p) { return json::array({p.v.x, p.v.y, p.v.z}); }

Point parse_point(Space s, const json& j) {
    if (j.is_array() && j.size() == 3)
        return Point(s, {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()});
    if (j.is_array() && j.size() == 2)
        return from_model({{j[0].get<double>(), j[1].get<double>()}, Model::Collinear, s});
    fail(Errc::ParseError, "point must be [x,y,z] embedding or [u,v] model coordinates");
}

Vec3 parse_vec3(const json& j) {
    require(j.is_array() && j.size() == 3, Errc::ParseError, "expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Vec2 parse_vec2(const json& j) {
    require(j.is_array() && j.size() == 2, Errc::ParseError, "expected a 2-vector");
    return {j[0].get<double>(), j[1].get<double>()};
}

Cycle parse_cycle(Space s, const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle")
        return make_circle(parse_point(s, j.at("centre")), j.at("radius").get<double>());
    if (kind == "geodesic") {
        if (j.contains("through")) {
            const json& th = j.at("through");
            require(th.is_array() && th.size() == 2, Errc::ParseError,
                    "geodesic 'through' needs two points");
            return make_geodesic(parse_point(s, th[0]), parse_point(s, th[1]));
        }
        return make_geodesic_dir(parse_point(s, j.at("anchor")), parse_vec3(j.at("dir")));
    }
    if (kind == "paracycle") {
        require(s == Space::Hyperbolic, Errc::ParseError, "paracycle outside H2");
        return make_paracycle(parse_vec2(j.at("ideal")), parse_point(s, j.at("through")));
    }
    if (kind == "hypercycle") {
        require(s == Space::Hyperbolic, Errc::ParseError, "hypercycle outside H2");
        return make_hypercycle(parse_cycle(s, j.at("base")), j.at("distance").get<double>());
    }
    fail(Errc::ParseError, "unknown cycle kind '" + kind + "'");
}

json cycle_json(const Cycle& c) {
    json j;
    j["kind"] = to_string(c.kind());
    switch (c.kind()) {
        case CycleKind::Circle:
            j["centre"] = point_json(c.centre());
            j["radius"] = c.param();
            break;
        case CycleKind::Geodesic: {
            const Point a = c.point_at(0.0);
            j["anchor"] = point_json(a);
            const Vec3 t = c.tangent_at(0.0);
            j["dir"] = json::array({t.x, t.y, t.z});
            break;
        }
        case CycleKind::Paracycle: {
            const Vec2 u = c.ideal_points()[0];
            j["ideal"] = json::array({u.x, u.y});
            j["through"] = point_json(c.point_at(0.0));
            break;
        }
        case CycleKind::Hypercycle: {
            json base;
            base["kind"] = "geodesic";
            const Isometry& f = c.frame();
            const Point a = f(Point(c.space(), base_point(c.space())));
            base["anchor"] = point_json(a);
            const Vec3 t = f.matrix() * Vec3{1, 0, 0};
            base["dir"] = json::array({t.x, t.y, t.z});
            j["base"] = base;
            j["distance"] = c.param();
            break;
        }
    }
    return j;
}

Isometry parse_placement(Space s, const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "identity") return Isometry::identity(s);
    if (type == "rotation")
        return rotation_about(parse_point(s, j.at("centre")), j.at("angle").get<double>());
    if (type == "point_reflection")
        return point_reflection(parse_point(s, j.at("centre")));
    if (type == "translation")
        return translation_along(parse_point(s, j.at("anchor")), parse_vec3(j.at("dir")),
                                 j.at("length").get<double>());
    if (type == "reflection")
        return reflection_in(parse_point(s, j.at("anchor")), parse_vec3(j.at("dir")));
    if (type == "ideal_rotation")
        return ideal_rotation(s, parse_vec2(j.at("ideal")), j.at("param").get<double>());
    if (type == "sequence") {
        Isometry acc = Isometry::identity(s);
        for (const json& step : j.at("steps")) acc = compose(parse_placement(s, step), acc);
        return acc;
    }
    fail(Errc::ParseError, "unknown placement type '" + type + "'");
}

json placement_json(const Isometry& iso) {
    // placements round-trip through the raw matrix
    json j;
    j["type"] = "matrix";
    j["m"] = iso.matrix().a;
    return j;
}

Isometry parse_any_placement(Space s, const json& j) {
    if (j.at("type").get<std::string>() == "matrix") {
        const auto arr = j.at("m").get<std::array<double, 9>>();
        Mat3 m;
        m.a = arr;
        return Isometry(s, m);
    }
    return parse_placement(s, j);
}

}  // namespace

Isometry parse_placement_json(Space space, const std::string& json_text) {
    return parse_any_placement(space, json::parse(json_text));
}

Scene parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // recover line/column from the byte offset
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') { ++line; col = 1; }
            else ++col;
        }
        fail(Errc::ParseError, "scene parse error at line " + std::to_string(line) +
                                   ", column " + std::to_string(col) + ": " + e.what());
    }
    try {
        Scene scene;
        scene.space = space_from(j.at("space").get<std::string>());
        scene.seed = j.value("seed", std::uint64_t(0));
        scene.name = j.value("name", std::string());
        for (const json& body : j.value("bodies", json::array())) {
            std::vector<Cycle> halves;
            for (const json& half : body.at("halves")) {
                Cycle c = parse_cycle(scene.space, half.at("cycle"));
                const std::string side = half.value("side", std::string("convex"));
                if (side == "concave") {
                    require(c.kind() == CycleKind::Geodesic, Errc::UnsupportedCycle,
                            "only geodesic halves admit the concave side");
                    c = flipped(c);
                } else {
                    require(side == "convex", Errc::ParseError,
                            "side must be 'convex' or 'concave'");
                }
                halves.push_back(std::move(c));
            }
            ConvexRegion canonical = from_halves(scene.space, std::move(halves));
            Isometry placement = body.contains("placement")
                                     ? parse_any_placement(scene.space, body.at("placement"))
                                     : Isometry::identity(scene.space);
            scene.bodies.push_back(transform_region(placement, canonical));
        }
        return scene;
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("scene structure error: ") + e.what());
    }
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::ParseError, "cannot open scene file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

std::string serialize_scene(const Scene& scene) {
    json j;
    j["space"] = to_string(scene.space);
    j["seed"] = scene.seed;
    if (!scene.name.empty()) j["name"] = scene.name;
    j["bodies"] = json::array();
    for (const ConvexRegion& body : scene.bodies) {
        json b;
        b["halves"] = json::array();
        for (const Cycle& c : body.canonical_halves()) {
            json half;
            half["cycle"] = cycle_json(c);
            half["side"] = "convex";
            b["halves"].push_back(half);
        }
        b["placement"] = placement_json(body.placement());
        j["bodies"].push_back(b);
    }
    return j.dump(2);
}

void save_scene(const Scene& scene, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), Errc::ParseError, "cannot write scene file '" + path + "'");
    out << serialize_scene(scene) << "\n";
}

std::string serialize_report(const SymmetryReport& report) {
    json j;
    j["classification"] = to_string(report.classification);
    j["rotation_order"] = report.rotation_order;
    j["tol"] = report.tol;
    j["diameter"] = report.diameter;
    if (report.centre) j["centre"] = point_json(*report.centre);
    j["axes"] = json::array();
    for (const Cycle& ax : report.axes) j["axes"].push_back(cycle_json(ax));
    auto congruences = [&](const std::vector<Congruence>& list) {
        json arr = json::array();
        for (const Congruence& c : list) {
            json w;
            switch (c.kind) {
                case CongruenceKind::Rotation: w["kind"] = "rotation"; break;
                case CongruenceKind::PointReflection: w["kind"] = "point_reflection"; break;
                case CongruenceKind::Reflection: w["kind"] = "reflection"; break;
            }
            w["residual"] = c.residual;
            if (c.kind != CongruenceKind::Reflection) w["angle"] = c.angle;
            if (c.fixed_point) w["fixed_point"] = point_json(*c.fixed_point);
            w["matrix"] = c.iso.matrix().a;
            arr.push_back(w);
        }
        return arr;
    };
    j["witnesses"] = congruences(report.witnesses);
    j["ambiguous"] = congruences(report.ambiguous);
    return j.dump(2);
}

}  // namespace ccg
