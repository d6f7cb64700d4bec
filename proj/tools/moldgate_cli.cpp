// moldgate: locates and sizes the injection gate for a molded part given its
// STL surface, a demolding direction and the melt material parameters.
//
// Exit codes: 0 success, 1 input or validation error, 2 no feasible gate
// location (the report is still written with status "infeasible").

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <moldgate/moldgate.hpp>

namespace {

struct CliOptions {
    std::string input_path;
    std::string material_name;
    std::string custom_name = "custom";
    std::optional<double> mat_n, mat_t_melt, mat_t_wall, mat_gamma_opt, mat_mu_opt, mat_kappa;
    std::vector<double> direction{0.0, 0.0, 1.0};
    std::optional<double> spacing;
    double thickness = 0.0;
    bool aesthetic = false;
    int ring_samples = 16;
    std::optional<double> rect_aspect;
    std::string parting_line_path;
    std::string report_path;
    std::string ply_path;
    unsigned threads = 1;
    bool strict = false;
};

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<moldgate::MaterialParams> material_database() {
    if (const char* env = std::getenv("MOLDGATE_MATERIALS")) {
        return moldgate::load_materials(env);
    }
    return moldgate::builtin_materials();
}

moldgate::MaterialParams resolve_material(const CliOptions& opt) {
    moldgate::MaterialParams mat;
    if (!opt.material_name.empty()) {
        mat = moldgate::find_material(material_database(), opt.material_name);
    } else {
        const bool all_inline = opt.mat_n && opt.mat_t_melt && opt.mat_t_wall &&
                                opt.mat_gamma_opt && opt.mat_mu_opt && opt.mat_kappa;
        if (!all_inline) {
            throw std::runtime_error(
                "no material selected: pass --material NAME (available: " +
                moldgate::list_material_names(material_database()) +
                ") or all of --mat-n, --mat-t-melt, --mat-t-wall, --mat-gamma-opt, "
                "--mat-mu-opt, --mat-kappa");
        }
        mat.name = opt.custom_name;
    }
    if (opt.mat_n) mat.n = *opt.mat_n;
    if (opt.mat_t_melt) mat.t_melt = *opt.mat_t_melt;
    if (opt.mat_t_wall) mat.t_wall = *opt.mat_t_wall;
    if (opt.mat_gamma_opt) mat.gamma_opt = *opt.mat_gamma_opt;
    if (opt.mat_mu_opt) mat.mu_opt = *opt.mat_mu_opt;
    if (opt.mat_kappa) mat.kappa = *opt.mat_kappa;
    moldgate::validate_material(mat);
    return mat;
}

int run(const CliOptions& opt) {
    const std::string stl_bytes = read_file(opt.input_path, "STL file");
    const moldgate::TriangleMesh mesh = moldgate::parse_stl(stl_bytes);
    const moldgate::ValidationReport validation = moldgate::validate_mesh(mesh);
    if (!validation.degenerate_facets.empty()) {
        std::cerr << "note: " << validation.degenerate_facets.size()
                  << " degenerate facet(s) retained with zero weight\n";
    }

    const moldgate::MaterialParams material = resolve_material(opt);

    moldgate::PlanConfig config;
    config.demold_dir = {opt.direction[0], opt.direction[1], opt.direction[2]};
    config.grid_spacing = opt.spacing;
    config.ring_samples = opt.ring_samples;
    config.part_thickness = opt.thickness;
    config.aesthetic = opt.aesthetic;
    config.check_depth_coherence = !opt.strict;
    config.rect_aspect = opt.rect_aspect;
    if (!opt.parting_line_path.empty()) {
        config.parting_line_override =
            moldgate::parse_polyline(read_file(opt.parting_line_path, "parting line file"));
        config.aesthetic = true;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const moldgate::GatePlan plan = moldgate::plan_gate(mesh, material, config, opt.threads);
    const auto t1 = std::chrono::steady_clock::now();

    moldgate::ReportMetadata meta;
    meta.input_path = opt.input_path;
    meta.input_digest = moldgate::fnv1a64_hex(stl_bytes);
    meta.input_facets = mesh.facets.size();
    meta.input_vertices = mesh.vertices.size();
    meta.material = material;
    meta.duration_s = std::chrono::duration<double>(t1 - t0).count();

    const std::string report_path =
        opt.report_path.empty() ? opt.input_path + ".gateplan.json" : opt.report_path;
    moldgate::save_file(report_path, moldgate::render_report(plan, meta));

    if (plan.status == moldgate::PlanStatus::ok) {
        std::cerr << "gate point: (" << plan.gate_point->x << ", " << plan.gate_point->y << ", "
                  << plan.gate_point->z << ") mm, R_gate " << plan.gate_radius << " mm, "
                  << plan.feasible_nodes << "/" << plan.total_nodes << " nodes feasible\n";
        if (!opt.ply_path.empty()) {
            moldgate::save_file(opt.ply_path, moldgate::export_marked_geometry(mesh, plan));
            std::cerr << "marked geometry written to " << opt.ply_path << "\n";
        }
    } else {
        std::cerr << "no valid gate location found; see the rejection histogram in the report\n";
        if (!opt.ply_path.empty()) {
            std::cerr << "marked geometry not written: the plan is infeasible\n";
        }
    }

    std::cout << report_path << "\n";
    return plan.status == moldgate::PlanStatus::ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moldgate: injection gate location and sizing from STL geometry"};
    CliOptions opt;

    app.add_option("input", opt.input_path, "input STL file (ASCII or binary)")->required();
    app.add_option("--material", opt.material_name, "material name from the database");
    app.add_option("--mat-name", opt.custom_name, "name for an inline-defined material");
    app.add_option("--mat-n", opt.mat_n, "power-law index n, in (0, 1]");
    app.add_option("--mat-t-melt", opt.mat_t_melt, "melt temperature, degC");
    app.add_option("--mat-t-wall", opt.mat_t_wall, "mold wall temperature, degC");
    app.add_option("--mat-gamma-opt", opt.mat_gamma_opt, "optimal shear rate, 1/s");
    app.add_option("--mat-mu-opt", opt.mat_mu_opt, "optimal viscosity, Pa*s");
    app.add_option("--mat-kappa", opt.mat_kappa, "thermal conductivity, W/(m*degC)");
    app.add_option("--direction", opt.direction, "demolding direction (default 0 0 1)")
        ->expected(3);
    app.add_option("--spacing", opt.spacing, "grid spacing in mm (default: derived from the mesh)");
    app.add_option("--thickness", opt.thickness, "part thickness H in mm")->required();
    app.add_flag("--aesthetic", opt.aesthetic, "place the gate on the parting line");
    app.add_option("--ring-samples", opt.ring_samples, "ring sample count (>= 8, default 16)");
    app.add_option("--rect-aspect", opt.rect_aspect,
                   "also size a rectangular gate with this width/height aspect (>= 1)");
    app.add_option("--parting-line", opt.parting_line_path,
                   "parting polyline file (one 'x y z' per line); implies --aesthetic");
    app.add_option("--report,-o", opt.report_path,
                   "report output path (default: <input>.gateplan.json)");
    app.add_option("--ply", opt.ply_path, "write the part plus gate marker as binary PLY");
    app.add_option("--threads", opt.threads, "worker threads for node evaluation (default 1)");
    app.add_flag("--strict", opt.strict,
                 "disable the ring depth-coherence check (projection-only feasibility)");

    CLI11_PARSE(app, argc, argv);

    try {
        return run(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
