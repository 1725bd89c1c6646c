// ccgeom: scene intersection, symmetry classification, verification
// experiments and SVG rendering for the three constant-curvature planes.
//
// Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 usage/parse error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ccg/experiments.hpp"
#include "ccg/render.hpp"
#include "ccg/scene.hpp"

using namespace ccg;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out.good()) fail(Errc::ParseError, "cannot write '" + path + "'");
    out << text;
}

int run_intersect(const std::string& scene_path, const std::string& out_path) {
    Scene scene = load_scene(scene_path);
    require(scene.bodies.size() >= 2, Errc::InvalidArgument,
            "intersect needs a scene with at least two bodies");
    IntersectionResult res = intersect_regions(scene.bodies[0], scene.bodies[1]);
    for (std::size_t k = 2; k < scene.bodies.size(); ++k) {
        require(res.region.has_value(), Errc::EmptyInterior,
                "intermediate intersection lost its interior");
        res = intersect_regions(*res.region, scene.bodies[k]);
    }
    Scene out;
    out.space = scene.space;
    out.seed = scene.seed;
    out.name = scene.name + "_intersection";
    switch (res.status) {
        case IntersectionResult::Status::CompactLens:
            std::cout << "compact intersection: " << res.chain->arcs.size() << " arcs, "
                      << res.chain->vertices.size() << " vertices\n";
            out.bodies = {*res.region};
            break;
        case IntersectionResult::Status::Unbounded:
            std::cout << "unbounded intersection: " << res.description << "\n";
            out.bodies = {*res.region};
            break;
        case IntersectionResult::Status::DegenerateChord:
            std::cout << "degenerate intersection: common chord of length "
                      << distance(res.chord->first, res.chord->second) << "\n";
            break;
        case IntersectionResult::Status::EmptyInterior:
            std::cout << "empty interior\n";
            break;
    }
    if (!out.bodies.empty()) save_scene(out, out_path);
    return 0;
}

int run_symmetry(const std::string& scene_path, double tol, const std::string& report_path) {
    Scene scene = load_scene(scene_path);
    require(!scene.bodies.empty(), Errc::InvalidArgument, "scene has no bodies");
    ConvexRegion region = scene.bodies[0];
    if (scene.bodies.size() > 1) {
        IntersectionResult res = intersect_regions(scene.bodies[0], scene.bodies[1]);
        require(res.status == IntersectionResult::Status::CompactLens, Errc::NonCompact,
                "symmetry classification needs a compact intersection");
        region = *res.region;
    }
    const SymmetryReport rep = classify(region, tol);
    const std::string text = serialize_report(rep);
    if (!report_path.empty()) write_file(report_path, text);
    std::cout << "classification: " << to_string(rep.classification)
              << " (rotation order " << rep.rotation_order << ", " << rep.axes.size()
              << " axes)\n";
    return 0;
}

int run_verify(const std::string& experiment, int trials, std::uint64_t seed,
               const std::string& csv_path, const std::string& json_path) {
    std::vector<ExperimentReport> reports;
    if (experiment == "thm2") {
        reports.push_back(run_theorem2(Space::Sphere, 0.8, trials, seed));
        reports.push_back(run_theorem2(Space::Euclidean, 1.0, trials, seed));
        reports.push_back(run_theorem2(Space::Hyperbolic, 1.0, trials, seed));
    } else if (experiment == "thm3") {
        reports.push_back(run_theorem3_cases(trials, seed));
    } else if (experiment == "thm4") {
        reports.push_back(run_theorem2(Space::Hyperbolic, 1.0, trials, seed));
        reports.back().id = "thm4_H2";
    } else if (experiment == "lemma1.1") {
        reports.push_back(run_distortion(Space::Hyperbolic, {0.2, 0.6, 1.0}, 64));
        reports.push_back(run_distortion(Space::Sphere, {0.3, pi / 4, 1.2}, 64));
        reports.push_back(run_model_angle_identity(std::max(trials, 50), seed));
    } else if (experiment == "lemma1.9") {
        reports.push_back(build_lemma19(Lemma19Mode::TwoZeroCurvatures, 0.05, seed, trials).second);
        reports.push_back(build_lemma19(Lemma19Mode::InfimumZero, 0.05, seed, trials).second);
    } else if (experiment == "lemma4.1") {
        for (Lemma41Case c : {Lemma41Case::Sector, Lemma41Case::TriangleParallel,
                              Lemma41Case::QuadrangleParallel})
            reports.push_back(build_lemma41(c, seed, trials).second);
    } else if (experiment == "lemma4.2") {
        for (double l : {0.25, 0.5, 1.0}) reports.push_back(build_lemma42(l, seed).second);
    } else {
        std::cerr << "unknown experiment '" << experiment << "'\n";
        return 2;
    }

    bool all = true;
    std::string csv, json = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ExperimentReport& r = reports[i];
        all = all && r.all_pass();
        std::cout << (r.all_pass() ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.summary
                  << "\n";
        csv += "# " + r.id + "\n" + report_csv(r);
        json += report_json(r);
        json += i + 1 < reports.size() ? ",\n" : "\n";
    }
    json += "]\n";
    if (!csv_path.empty()) write_file(csv_path, csv);
    if (!json_path.empty()) write_file(json_path, json);
    return all ? 0 : 1;
}

int run_render(const std::string& scene_path, const std::string& model_name,
               const std::string& svg_path) {
    Scene scene = load_scene(scene_path);
    Model model;
    if (model_name == "klein") model = Model::Collinear;
    else if (model_name == "poincare") model = Model::Conformal;
    else {
        std::cerr << "model must be 'klein' or 'poincare'\n";
        return 2;
    }
    std::vector<SymmetryReport> reports;
    for (const ConvexRegion& body : scene.bodies)
        if (body.compact()) reports.push_back(classify(body));
    render_scene(scene, model, svg_path, reports);
    std::cout << "wrote " << svg_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-curvature geometry kernel and verification harness"};
    app.require_subcommand(1);

    std::string scene_path, out_path, report_path, csv_path, json_path, svg_path;
    std::string experiment, model_name = "klein";
    double tol = 1e-6;
    int trials = 20;
    std::uint64_t seed = 1;

    CLI::App* cmd_intersect = app.add_subcommand("intersect", "intersect scene bodies");
    cmd_intersect->add_option("--scene", scene_path)->required();
    cmd_intersect->add_option("--out", out_path)->required();

    CLI::App* cmd_sym = app.add_subcommand("symmetry", "classify the congruence group");
    cmd_sym->add_option("--scene", scene_path)->required();
    cmd_sym->add_option("--tol", tol);
    cmd_sym->add_option("--report", report_path);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification experiment");
    cmd_verify->add_option("--experiment", experiment)
        ->required()
        ->check(CLI::IsMember(
            {"thm2", "thm3", "thm4", "lemma1.1", "lemma1.9", "lemma4.1", "lemma4.2"}));
    cmd_verify->add_option("--trials", trials);
    cmd_verify->add_option("--seed", seed);
    cmd_verify->add_option("--csv", csv_path);
    cmd_verify->add_option("--json", json_path);

    CLI::App* cmd_render = app.add_subcommand("render", "draw a scene as SVG");
    cmd_render->add_option("--scene", scene_path)->required();
    cmd_render->add_option("--model", model_name)->check(CLI::IsMember({"klein", "poincare"}));
    cmd_render->add_option("--svg", svg_path)->required();

    try {
        app.parse(argc, argv);
        if (cmd_intersect->parsed()) return run_intersect(scene_path, out_path);
        if (cmd_sym->parsed()) return run_symmetry(scene_path, tol, report_path);
        if (cmd_verify->parsed())
            return run_verify(experiment, trials, seed, csv_path, json_path);
        if (cmd_render->parsed()) return run_render(scene_path, model_name, svg_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
