#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fluxred/experiments.hpp"

namespace {

using namespace fluxred;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output path '" + out_path + "'");
    out << text;
}

void check_combo(ExperimentCase c, BasisKind b, bool allow_extra) {
    if (!is_paper_combo(c, b) && !allow_extra)
        throw ConfigError("case " + case_name(c) + " with basis " + basis_name(b) +
                          " is not an experiment combination; pass --allow-extra to run it");
}

int run_selftest(unsigned seed) {
    int failures = 0;
    auto report = [&failures](const std::string& name, bool ok, const std::string& detail = "") {
        if (ok) {
            std::cout << "[PASS] " << name << "\n";
        } else {
            ++failures;
            std::cout << "[FAIL] " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
        }
    };

    // Generated meshes satisfy every FittedMesh invariant.
    {
        FittedMesh line = build_line_mesh(32, 1.0, 5.0);
        FittedMesh circle = build_mapped_mesh([](double) { return 0.5; }, 64, 8, 8, 1.0, 1.0, 5.0);
        FittedMesh star = build_mapped_mesh(star_radius, 64, 8, 8, 1.0, 1.0, 5.0);
        report("mesh_validation", validate_mesh(line).ok() && validate_mesh(circle).ok() &&
                                      validate_mesh(star).ok());
    }

    // Lifting jump exactness at every interface vertex.
    {
        FittedMesh mesh = build_line_mesh(16, 1.0, 5.0);
        InterfaceTrace trace = extract_interface(mesh, ParamKind::LINE_X, 10);
        LiftingField lift = build_lifting(mesh, trace, line_datum);
        double worst = 0.0;
        for (int v : mesh.interface_vertices)
            worst = std::max(worst, std::abs(lift.field.jump(v) - line_datum(mesh.interface_param(v))));
        report("lifting_jump_exactness", worst <= 1e-15, "max deviation " + format_sci(worst));
    }

    // Projection: Pythagoras and idempotence under the discrete inner product.
    {
        FittedMesh mesh = build_mapped_mesh([](double) { return 0.5; }, 64, 8, 8, 1.0, 1.0, 5.0);
        InterfaceTrace trace = extract_interface(mesh, ParamKind::ANGLE, 10);
        InterfaceBasis basis = make_basis(BasisKind::FOURIER, 5);
        Projection proj = project_interface_data(angle_datum, basis, trace);
        double g2 = std::pow(interface_l2_norm(angle_datum, trace), 2);
        double gm2 = std::pow(interface_l2_norm(proj.approx(), trace), 2);
        double r2 = std::pow(proj.relative_error, 2) * g2;
        report("projection_pythagoras", std::abs(g2 - gm2 - r2) <= 1e-12 * g2);

        Projection again = project_interface_data(proj.approx(), basis, trace);
        double dc = 0.0;
        for (int j = 0; j < basis.size; ++j)
            dc = std::max(dc, std::abs(again.coefficients[j] - proj.coefficients[j]));
        report("projection_idempotence", dc <= 1e-13, "coefficient drift " + format_sci(dc));
    }

    // Divergence identity and interface residual on a line flux-jump run.
    {
        Experiment ex = build_experiment(ExperimentCase::LINE_FLUX, BasisKind::ADAPTED_LINE,
                                         MeshParams{.n = 32});
        BrokenSolution u = solve_flux_jump(ex.mesh, ex.trace, ex.spec);
        RecoveredFlux q = recover_flux(ex.mesh, ex.trace, u, ex.spec);
        bool div_ok = true;
        for (int k = 0; k < ex.mesh.triangle_count(); ++k)
            div_ok = div_ok && q.divergence(k) == ex.spec.source_at(ex.mesh, k);
        report("divergence_identity", div_ok);
        ResidualStats res = interface_residual(q, ex.mesh, ex.trace, ex.spec);
        report("interface_residual_contract", res.max_abs <= 1e-13,
               "max " + format_sci(res.max_abs));
    }

    // Superposition of the two data channels in the flux-jump problem.
    {
        Experiment ex = build_experiment(ExperimentCase::LINE_FLUX, BasisKind::ADAPTED_LINE,
                                         MeshParams{.n = 16});
        TransmissionSolver solver(ex.mesh, ex.trace, ex.spec);
        BrokenSolution full = solver.solve();
        ProblemSpec no_f = ex.spec;
        no_f.source_minus = {};
        no_f.source_plus = {};
        BrokenSolution part_g = TransmissionSolver(ex.mesh, ex.trace, no_f).solve();
        ProblemSpec no_g = ex.spec;
        no_g.datum = [](double) { return 0.0; };
        BrokenSolution part_f = TransmissionSolver(ex.mesh, ex.trace, no_g).solve();
        double scale = 0.0, worst = 0.0;
        for (size_t i = 0; i < full.values.size(); ++i) {
            scale = std::max(scale, std::abs(full.values[i]));
            worst = std::max(worst, std::abs(full.values[i] - part_g.values[i] - part_f.values[i]));
        }
        report("superposition", worst <= 1e-12 * std::max(scale, 1.0));
    }

    // Exact-representation collapse at rank 3 on the line.
    {
        Experiment ex = build_experiment(ExperimentCase::LINE_FLUX, BasisKind::ADAPTED_LINE,
                                         MeshParams{.n = 32});
        ReducedPipeline pipeline(ex.mesh, ex.trace, ex.spec, ex.basis);
        ReducedRunRecord rec = pipeline.run(3);
        bool ok = rec.g_rel_err <= 1e-13 && rec.eu_inf <= 1e-11 * std::max(1.0, pipeline.solution_scale_rms());
        report("exact_representation_collapse", ok,
               "g_rel " + format_sci(rec.g_rel_err) + " eu_inf " + format_sci(rec.eu_inf));
    }

    // Seeded random SPD solve honors the residual contract.
    {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const int n = 50;
        std::vector<Triplet> ts;
        std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M[i][j] = unit(rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = (i == j) ? 1.0 : 0.0;  // A = M^T M + I
                for (int k = 0; k < n; ++k) v += M[k][i] * M[k][j];
                ts.push_back({i, j, v});
            }
        SparseSymMatrix A = SparseSymMatrix::from_triplets(n, ts);
        std::vector<double> x_ref(n);
        for (int i = 0; i < n; ++i) x_ref[i] = unit(rng);
        std::vector<double> b = A.multiply(x_ref);
        std::vector<double> x = solve_spd(A, b);
        std::vector<double> Ax = A.multiply(x);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += (Ax[i] - b[i]) * (Ax[i] - b[i]);
            den += b[i] * b[i];
        }
        report("spd_residual_contract", std::sqrt(num / den) <= 1e-13);
    }

    // Stability of the least-squares correction on seeded random triangles.
    {
        std::mt19937 rng(seed + 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int tested = 0;
        bool ok = true;
        while (tested < 1000) {
            Vec2 p[3] = {{unit(rng), unit(rng)}, {unit(rng), unit(rng)}, {unit(rng), unit(rng)}};
            double area = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
            if (area <= 1e-4) continue;
            double min_ang = 180.0;
            for (int i = 0; i < 3; ++i) {
                Vec2 u = p[(i + 1) % 3] - p[i], w = p[(i + 2) % 3] - p[i];
                min_ang = std::min(min_ang, std::atan2(std::abs(cross(u, w)), dot(u, w)) * 180.0 / M_PI);
            }
            if (min_ang < 15.0) continue;
            ++tested;
            std::array<Vec2, 3> normals;
            std::array<double, 3> b{};
            double m00 = 0, m01 = 0, m11 = 0;
            for (int i = 0; i < 3; ++i) {
                Vec2 edge = p[(i + 1) % 3] - p[i];
                Vec2 n = normalized(perp(edge));
                Vec2 mid = 0.5 * (p[i] + p[(i + 1) % 3]);
                Vec2 opposite = p[(i + 2) % 3];
                if (dot(n, mid - opposite) < 0.0) n = -1.0 * n;
                normals[i] = n;
                b[i] = 2.0 * unit(rng) - 1.0;
                m00 += n.x * n.x;
                m01 += n.x * n.y;
                m11 += n.y * n.y;
            }
            double tr = m00 + m11, det = m00 * m11 - m01 * m01;
            double lam_min = 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
            double sigma_min = std::sqrt(lam_min);
            Vec2 C = correct_element(normals, b, {false, false, false});
            double bn = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
            if (!(norm(C) <= bn / sigma_min + 1e-12) || !(sigma_min >= 0.3)) {
                ok = false;
                break;
            }
        }
        report("correction_stability", ok);
    }

    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fluxred: elliptic interface experiments with conservative flux recovery "
                 "and interface-data reduction"};
    app.require_subcommand(1);

    std::string case_str, basis_str, out_path, export_kind;
    int m = 3, m_max = 10, table_id = 1;
    unsigned seed = 20240811;
    bool allow_extra = false;
    MeshParams params;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", params.n, "line mesh resolution");
        cmd->add_option("--n-theta", params.n_theta, "angular resolution of mapped meshes");
        cmd->add_option("--quad-order", params.quad_order, "interface quadrature points per edge");
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    };

    CLI::App* cmd_solve = app.add_subcommand("solve", "one reduced run at rank m");
    cmd_solve->add_option("--case", case_str, "experiment case")->required();
    cmd_solve->add_option("--basis", basis_str, "interface basis (default per case)");
    cmd_solve->add_option("--m", m, "reduced rank");
    cmd_solve->add_flag("--allow-extra", allow_extra, "permit non-experiment case/basis combos");
    add_common(cmd_solve);

    CLI::App* cmd_table = app.add_subcommand("table", "experiment table by id (1..5)");
    cmd_table->add_option("--id", table_id, "table id")->required();
    add_common(cmd_table);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "error versus rank, m = 1..m_max");
    cmd_sweep->add_option("--case", case_str, "experiment case")->required();
    cmd_sweep->add_option("--basis", basis_str, "interface basis (default per case)");
    cmd_sweep->add_option("--m-max", m_max, "largest rank");
    cmd_sweep->add_flag("--allow-extra", allow_extra, "permit non-experiment case/basis combos");
    add_common(cmd_sweep);

    CLI::App* cmd_conv = app.add_subcommand("convergence",
                                            "manufactured-solution convergence study");
    cmd_conv->add_option("--out", out_path, "write output to this file instead of stdout");

    CLI::App* cmd_export = app.add_subcommand("export", "write mesh or flux to a file");
    cmd_export->add_option("kind", export_kind, "mesh|flux")->required();
    cmd_export->add_option("--case", case_str, "experiment case")->required();
    add_common(cmd_export);

    CLI::App* cmd_selftest = app.add_subcommand("selftest", "run the invariant suites");
    cmd_selftest->add_option("--seed", seed, "seed for the randomized property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_solve->parsed() || cmd_sweep->parsed()) {
            ExperimentCase c = parse_case(case_str);
            BasisKind b = basis_str.empty() ? default_basis(c) : parse_basis(basis_str);
            check_combo(c, b, allow_extra);
            emit(cmd_solve->parsed() ? solve_csv(c, b, m, params) : sweep_csv(c, b, m_max, params),
                 out_path);
        } else if (cmd_table->parsed()) {
            emit(table_csv(table_id, params), out_path);
        } else if (cmd_conv->parsed()) {
            emit(convergence_csv(), out_path);
        } else if (cmd_export->parsed()) {
            ExperimentCase c = parse_case(case_str);
            Experiment ex = build_experiment(c, default_basis(c), params);
            std::ostringstream os;
            if (export_kind == "mesh") {
                write_mesh(ex.mesh, os);
            } else if (export_kind == "flux") {
                BrokenSolution u = ex.spec.kind == ProblemCase::FLUX_JUMP
                                       ? solve_flux_jump(ex.mesh, ex.trace, ex.spec)
                                       : solve_solution_jump(ex.mesh, ex.trace, ex.spec);
                write_flux(recover_flux(ex.mesh, ex.trace, u, ex.spec), os);
            } else {
                throw ConfigError("export kind must be mesh or flux, got '" + export_kind + "'");
            }
            emit(os.str(), out_path);
        } else if (cmd_selftest->parsed()) {
            return run_selftest(seed);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        // Numerical-contract violations: solver, definiteness, conditioning, assembly.
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
