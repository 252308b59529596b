#include "fluxred/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fluxred {

namespace {

constexpr double kBetaMinus = 1.0;
constexpr double kBetaPlus = 5.0;

double bulk_source(Vec2 p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); }

bool is_line_case(ExperimentCase c) {
    return c == ExperimentCase::LINE_FLUX || c == ExperimentCase::LINE_SOL;
}

ProblemCase problem_case(ExperimentCase c) {
    return (c == ExperimentCase::LINE_SOL || c == ExperimentCase::CIRCLE_SOL)
               ? ProblemCase::SOLUTION_JUMP
               : ProblemCase::FLUX_JUMP;
}

std::string csv_row(const ReducedRunRecord& r) {
    std::ostringstream os;
    os << r.m << "," << format_sci(r.g_rel_err) << "," << format_sci(r.eu_rms) << ","
       << format_sci(r.eu_inf) << "," << format_sci(r.eq_rms) << "," << format_sci(r.eq_inf)
       << "," << format_sci(r.residual) << "\n";
    return os.str();
}

const char* kHeader = "m,g_rel_err,eu_rms,eu_inf,eq_rms,eq_inf,residual\n";

}  // namespace

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

double line_datum(double x) {
    double u = 2.0 * x - 1.0;
    return std::sin(2.0 * M_PI * x) + 0.35 * std::cos(5.0 * M_PI * x) + 0.20 * u * u;
}

double angle_datum(double t) {
    return std::sin(2.0 * t) + 0.35 * std::cos(5.0 * t) + 0.20 * std::cos(t);
}

double star_radius(double t) { return 0.35 * (1.0 + 0.25 * std::cos(5.0 * t)); }

bool is_paper_combo(ExperimentCase c, BasisKind basis) {
    switch (c) {
        case ExperimentCase::LINE_FLUX: return basis == BasisKind::ADAPTED_LINE;
        case ExperimentCase::LINE_SOL:
            return basis == BasisKind::POLY || basis == BasisKind::ADAPTED_LINE;
        case ExperimentCase::CIRCLE_FLUX:
        case ExperimentCase::CIRCLE_SOL:
        case ExperimentCase::STAR_FLUX: return basis == BasisKind::FOURIER;
    }
    return false;
}

BasisKind default_basis(ExperimentCase c) {
    switch (c) {
        case ExperimentCase::LINE_FLUX: return BasisKind::ADAPTED_LINE;
        case ExperimentCase::LINE_SOL: return BasisKind::POLY;
        default: return BasisKind::FOURIER;
    }
}

Experiment build_experiment(ExperimentCase c, BasisKind basis, const MeshParams& params) {
    Experiment ex;
    std::ostringstream comment;
    if (is_line_case(c)) {
        ex.mesh = build_line_mesh(params.n, kBetaMinus, kBetaPlus);
        ex.trace = extract_interface(ex.mesh, ParamKind::LINE_X, params.quad_order);
        ex.spec.datum = line_datum;
        comment << "# mesh n=" << params.n << " quad_order=" << params.quad_order << "\n";
    } else {
        auto radius = (c == ExperimentCase::STAR_FLUX)
                          ? std::function<double(double)>(star_radius)
                          : std::function<double(double)>([](double) { return 0.5; });
        ex.mesh = build_mapped_mesh(radius, params.n_theta, params.n_radial_in,
                                    params.n_radial_out, 1.0, kBetaMinus, kBetaPlus);
        ex.trace = extract_interface(ex.mesh, ParamKind::ANGLE, params.quad_order);
        ex.spec.datum = angle_datum;
        comment << "# mesh n_theta=" << params.n_theta << " n_radial_in=" << params.n_radial_in
                << " n_radial_out=" << params.n_radial_out << " quad_order=" << params.quad_order
                << "\n";
    }
    ex.spec.kind = problem_case(c);
    ex.spec.source_minus = bulk_source;
    ex.spec.source_plus = bulk_source;
    ex.spec.beta_minus = kBetaMinus;
    ex.spec.beta_plus = kBetaPlus;
    ex.basis = make_basis(basis, 16);
    ex.mesh_comment = comment.str();
    return ex;
}

namespace {

std::string runs_csv(ExperimentCase c, BasisKind basis, const std::vector<int>& ranks,
                     const MeshParams& params) {
    Experiment ex = build_experiment(c, basis, params);
    ReducedPipeline pipeline(ex.mesh, ex.trace, ex.spec, ex.basis);
    std::ostringstream os;
    os << ex.mesh_comment << kHeader;
    for (int m : ranks) os << csv_row(pipeline.run(m));
    return os.str();
}

}  // namespace

std::string table_csv(int id, const MeshParams& params) {
    switch (id) {
        case 1: return runs_csv(ExperimentCase::LINE_FLUX, BasisKind::ADAPTED_LINE, {1, 2, 3}, params);
        case 2: return runs_csv(ExperimentCase::LINE_SOL, BasisKind::POLY, {1, 4, 8}, params);
        case 3: return runs_csv(ExperimentCase::LINE_SOL, BasisKind::ADAPTED_LINE, {1, 2, 3}, params);
        case 4: return runs_csv(ExperimentCase::CIRCLE_FLUX, BasisKind::FOURIER, {1, 5, 10}, params);
        case 5: return runs_csv(ExperimentCase::STAR_FLUX, BasisKind::FOURIER, {1, 3, 5, 8, 10}, params);
        default: throw ConfigError("table id must be in 1..5, got " + std::to_string(id));
    }
}

std::string sweep_csv(ExperimentCase c, BasisKind basis, int m_max, const MeshParams& params) {
    if (m_max < 1) throw ConfigError("sweep: m_max must be >= 1");
    std::vector<int> ranks(m_max);
    for (int m = 1; m <= m_max; ++m) ranks[m - 1] = m;
    return runs_csv(c, basis, ranks, params);
}

std::string solve_csv(ExperimentCase c, BasisKind basis, int m, const MeshParams& params) {
    if (m < 1) throw ConfigError("solve: m must be >= 1");
    return runs_csv(c, basis, {m}, params);
}

double ManufacturedLine::exact(Vec2 p) const {
    double sx = std::sin(M_PI * p.x);
    return p.y <= 0.5 ? sx * p.y : sx * (p.y / 5.0 + 2.0 / 5.0);
}

Vec2 ManufacturedLine::exact_flux(Vec2 p) const {
    double cx = std::cos(M_PI * p.x);
    double sx = std::sin(M_PI * p.x);
    if (p.y <= 0.5) return {-M_PI * cx * p.y, -sx};
    return {-M_PI * cx * (p.y + 2.0), -sx};
}

double ManufacturedLine::source(Vec2 p) const {
    double sx = std::sin(M_PI * p.x);
    return p.y <= 0.5 ? M_PI * M_PI * p.y * sx : M_PI * M_PI * sx * (p.y + 2.0);
}

ProblemSpec ManufacturedLine::problem() const {
    ManufacturedLine self = *this;
    ProblemSpec spec;
    spec.kind = ProblemCase::FLUX_JUMP;
    spec.beta_minus = beta_minus;
    spec.beta_plus = beta_plus;
    spec.source_minus = [self](Vec2 p) { return self.source(p); };
    spec.source_plus = spec.source_minus;
    spec.datum = [](double) { return 0.0; };
    spec.dirichlet = [self](Vec2 p) { return self.exact(p); };
    return spec;
}

std::vector<ConvergenceRow> run_convergence(const std::vector<int>& resolutions) {
    ManufacturedLine mf;
    std::vector<ConvergenceRow> rows;
    for (int n : resolutions) {
        FittedMesh mesh = build_line_mesh(n, mf.beta_minus, mf.beta_plus);
        InterfaceTrace trace = extract_interface(mesh, ParamKind::LINE_X, 10);
        ProblemSpec spec = mf.problem();
        BrokenSolution u = solve_flux_jump(mesh, trace, spec);
        RecoveredFlux q = recover_flux(mesh, trace, u, spec);

        double sum2 = 0.0;
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            double d = u.values[v] - mf.exact(mesh.vertices[v]);
            sum2 += d * d;
        }
        ConvergenceRow row;
        row.n = n;
        row.h = 1.0 / n;
        row.eu_l2 = std::sqrt(sum2 / mesh.vertex_count());
        row.eq_hdiv = broken_hdiv_error(
            q, mesh, [&mf](Vec2 p) { return mf.exact_flux(p); },
            [&mf](Vec2 p) { return mf.source(p); });
        rows.push_back(row);
    }
    return rows;
}

std::string convergence_csv() {
    auto rows = run_convergence({16, 32, 64, 128});
    std::ostringstream os;
    os << "h,eu_l2,eq_hdiv,order_u,order_q\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        os << format_sci(rows[i].h) << "," << format_sci(rows[i].eu_l2) << ","
           << format_sci(rows[i].eq_hdiv);
        if (i == 0) {
            os << ",,";
        } else {
            double ou = std::log2(rows[i - 1].eu_l2 / rows[i].eu_l2);
            double oq = std::log2(rows[i - 1].eq_hdiv / rows[i].eq_hdiv);
            os << "," << format_sci(ou) << "," << format_sci(oq);
        }
        os << "\n";
    }
    return os.str();
}

std::string case_name(ExperimentCase c) {
    switch (c) {
        case ExperimentCase::LINE_FLUX: return "line-flux";
        case ExperimentCase::LINE_SOL: return "line-sol";
        case ExperimentCase::CIRCLE_FLUX: return "circle-flux";
        case ExperimentCase::CIRCLE_SOL: return "circle-sol";
        case ExperimentCase::STAR_FLUX: return "star-flux";
    }
    return "?";
}

std::string basis_name(BasisKind b) {
    switch (b) {
        case BasisKind::POLY: return "poly";
        case BasisKind::FOURIER: return "fourier";
        case BasisKind::ADAPTED_LINE: return "adapted";
    }
    return "?";
}

ExperimentCase parse_case(const std::string& name) {
    if (name == "line-flux") return ExperimentCase::LINE_FLUX;
    if (name == "line-sol") return ExperimentCase::LINE_SOL;
    if (name == "circle-flux") return ExperimentCase::CIRCLE_FLUX;
    if (name == "circle-sol") return ExperimentCase::CIRCLE_SOL;
    if (name == "star-flux") return ExperimentCase::STAR_FLUX;
    throw ConfigError("unknown case '" + name +
                      "' (expected line-flux|line-sol|circle-flux|circle-sol|star-flux)");
}

BasisKind parse_basis(const std::string& name) {
    if (name == "poly") return BasisKind::POLY;
    if (name == "fourier") return BasisKind::FOURIER;
    if (name == "adapted") return BasisKind::ADAPTED_LINE;
    throw ConfigError("unknown basis '" + name + "' (expected poly|fourier|adapted)");
}

}  // namespace fluxred
