#include "fluxred/fem.hpp"

#include <cmath>

namespace fluxred {

double ProblemSpec::source_at(const FittedMesh& mesh, int k) const {
    const ScalarField& f =
        mesh.triangles[k].label == Subdomain::MINUS ? source_minus : source_plus;
    if (!f) return 0.0;
    return f(mesh.centroid(k));
}

std::array<std::array<double, 3>, 3> element_stiffness(const FittedMesh& mesh, int k) {
    const auto& t = mesh.triangles[k];
    Vec2 p[3] = {mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]};
    double area = mesh.area(k);
    Vec2 grad[3];
    for (int i = 0; i < 3; ++i) grad[i] = (1.0 / (2.0 * area)) * perp(p[(i + 2) % 3] - p[(i + 1) % 3]);
    std::array<std::array<double, 3>, 3> ke{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ke[i][j] = t.beta * area * dot(grad[i], grad[j]);
    return ke;
}

namespace {

// Vertex owning a broken dof.
int vertex_of_dof(const FittedMesh& mesh, int d) {
    return d < mesh.vertex_count() ? d : mesh.interface_vertices[d - mesh.vertex_count()];
}

DofMap make_dof_map(const FittedMesh& mesh, bool broken) {
    DofMap map;
    map.n_full = broken ? mesh.broken_dof_count : mesh.vertex_count();
    map.free_index.assign(map.n_full, -1);
    for (int d = 0; d < map.n_full; ++d) {
        if (mesh.boundary_vertex[vertex_of_dof(mesh, d)]) continue;
        map.free_index[d] = static_cast<int>(map.full_index.size());
        map.full_index.push_back(d);
    }
    return map;
}

}  // namespace

StiffnessSystem assemble_stiffness(const FittedMesh& mesh, bool broken) {
    StiffnessSystem sys;
    sys.broken = broken;
    sys.dofs = make_dof_map(mesh, broken);

    std::vector<Triplet> triplets;
    triplets.reserve(9 * mesh.triangle_count());
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const auto& t = mesh.triangles[k];
        auto ke = element_stiffness(mesh, k);
        int dof[3];
        for (int i = 0; i < 3; ++i)
            dof[i] = broken ? broken_dof(mesh, t.v[i], t.label) : t.v[i];
        for (int i = 0; i < 3; ++i) {
            int fi = sys.dofs.free_index[dof[i]];
            if (fi < 0) continue;
            for (int j = 0; j < 3; ++j) {
                int fj = sys.dofs.free_index[dof[j]];
                if (fj < 0) continue;
                triplets.push_back({fi, fj, ke[i][j]});
            }
        }
    }
    sys.A = SparseSymMatrix::from_triplets(sys.dofs.n_free(), triplets);
    return sys;
}

std::vector<double> assemble_load(const FittedMesh& mesh, const ScalarField& f_minus,
                                  const ScalarField& f_plus) {
    std::vector<double> b(mesh.vertex_count(), 0.0);
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const auto& t = mesh.triangles[k];
        const ScalarField& f = t.label == Subdomain::MINUS ? f_minus : f_plus;
        if (!f) continue;
        double w = f(mesh.centroid(k)) * mesh.area(k) / 3.0;
        for (int v : t.v) b[v] += w;
    }
    return b;
}

std::vector<double> assemble_load(const FittedMesh& mesh, const ScalarField& f) {
    return assemble_load(mesh, f, f);
}

std::vector<double> assemble_interface_load(const FittedMesh& mesh, const InterfaceTrace& trace,
                                            const InterfaceFn& g) {
    if (trace.quad_points < 2)
        throw ConfigError("assemble_interface_load: trace quadrature order must be >= 2");
    std::vector<double> b(mesh.vertex_count(), 0.0);
    if (!g) return b;
    for (const auto& te : trace.edges) {
        for (size_t q = 0; q < te.q_param.size(); ++q) {
            double u = (te.q_param[q] - te.s0) / (te.s1 - te.s0);
            double gw = g(te.q_param[q]) * te.q_weight[q];
            b[te.v0] -= gw * (1.0 - u);
            b[te.v1] -= gw * u;
        }
    }
    return b;
}

LiftingField build_lifting(const FittedMesh& mesh, const InterfaceTrace& trace,
                           const InterfaceFn& phi) {
    LiftingField lift;
    lift.datum = phi;
    lift.field.mesh = &mesh;
    lift.field.produced_by = ProblemCase::SOLUTION_JUMP;
    lift.field.values.assign(mesh.broken_dof_count, 0.0);
    if (!phi) return lift;
    for (size_t i = 0; i < trace.vertex_ids.size(); ++i) {
        int v = trace.vertex_ids[i];
        lift.field.values[mesh.plus_dof[v]] = phi(trace.vertex_param[i]);
    }
    return lift;
}

TransmissionSolver::TransmissionSolver(const FittedMesh& mesh, const InterfaceTrace& trace,
                                       const ProblemSpec& spec)
    : mesh_(mesh),
      trace_(trace),
      spec_(spec),
      sys_(assemble_stiffness(mesh, /*broken=*/false)),
      factor_(sys_.A) {
    if (spec.beta_minus != mesh.beta_minus || spec.beta_plus != mesh.beta_plus)
        throw AssemblyError("problem coefficients do not match the mesh coefficients");

    dirichlet_values_.assign(mesh.vertex_count(), 0.0);
    if (spec_.dirichlet)
        for (int v = 0; v < mesh.vertex_count(); ++v)
            if (mesh.boundary_vertex[v]) dirichlet_values_[v] = spec_.dirichlet(mesh.vertices[v]);

    // Datum-independent right-hand side: (f, v) minus the Dirichlet coupling.
    std::vector<double> load = assemble_load(mesh, spec_.source_minus, spec_.source_plus);
    rhs_base_.assign(sys_.dofs.n_free(), 0.0);
    for (int i = 0; i < sys_.dofs.n_free(); ++i) rhs_base_[i] = load[sys_.dofs.full_index[i]];
    if (spec_.dirichlet) {
        for (int k = 0; k < mesh.triangle_count(); ++k) {
            const auto& t = mesh.triangles[k];
            auto ke = element_stiffness(mesh, k);
            for (int i = 0; i < 3; ++i) {
                int fi = sys_.dofs.free_index[t.v[i]];
                if (fi < 0) continue;
                for (int j = 0; j < 3; ++j)
                    if (sys_.dofs.free_index[t.v[j]] < 0)
                        rhs_base_[fi] -= ke[i][j] * dirichlet_values_[t.v[j]];
            }
        }
    }
}

BrokenSolution TransmissionSolver::solve() const { return solve_with_datum(spec_.datum); }

BrokenSolution TransmissionSolver::solve_with_datum(const InterfaceFn& g) const {
    std::vector<double> rhs = rhs_base_;
    LiftingField lift;

    if (spec_.kind == ProblemCase::FLUX_JUMP) {
        std::vector<double> gb = assemble_interface_load(mesh_, trace_, g);
        for (int i = 0; i < sys_.dofs.n_free(); ++i) rhs[i] += gb[sys_.dofs.full_index[i]];
    } else {
        lift = build_lifting(mesh_, trace_, g);
        // a(w, v) for the continuous test functions, element by element.
        for (int k = 0; k < mesh_.triangle_count(); ++k) {
            const auto& t = mesh_.triangles[k];
            double wloc[3];
            bool any = false;
            for (int j = 0; j < 3; ++j) {
                wloc[j] = lift.field.values[broken_dof(mesh_, t.v[j], t.label)];
                any = any || wloc[j] != 0.0;
            }
            if (!any) continue;
            auto ke = element_stiffness(mesh_, k);
            for (int i = 0; i < 3; ++i) {
                int fi = sys_.dofs.free_index[t.v[i]];
                if (fi < 0) continue;
                double s = 0.0;
                for (int j = 0; j < 3; ++j) s += ke[i][j] * wloc[j];
                rhs[fi] -= s;
            }
        }
    }

    std::vector<double> x = factor_.solve(rhs);

    std::vector<double> u(mesh_.vertex_count());
    for (int v = 0; v < mesh_.vertex_count(); ++v) u[v] = dirichlet_values_[v];
    for (int i = 0; i < sys_.dofs.n_free(); ++i) u[sys_.dofs.full_index[i]] = x[i];

    BrokenSolution sol;
    sol.mesh = &mesh_;
    sol.produced_by = spec_.kind;
    sol.values.assign(mesh_.broken_dof_count, 0.0);
    for (int v = 0; v < mesh_.vertex_count(); ++v) sol.values[v] = u[v];
    for (int v : mesh_.interface_vertices) sol.values[mesh_.plus_dof[v]] = u[v];
    if (spec_.kind == ProblemCase::SOLUTION_JUMP)
        for (int d = 0; d < mesh_.broken_dof_count; ++d) sol.values[d] += lift.field.values[d];
    return sol;
}

BrokenSolution solve_flux_jump(const FittedMesh& mesh, const InterfaceTrace& trace,
                               const ProblemSpec& spec) {
    if (spec.kind != ProblemCase::FLUX_JUMP)
        throw ConfigError("solve_flux_jump: spec.kind must be FLUX_JUMP");
    return TransmissionSolver(mesh, trace, spec).solve();
}

BrokenSolution solve_solution_jump(const FittedMesh& mesh, const InterfaceTrace& trace,
                                   const ProblemSpec& spec) {
    if (spec.kind != ProblemCase::SOLUTION_JUMP)
        throw ConfigError("solve_solution_jump: spec.kind must be SOLUTION_JUMP");
    return TransmissionSolver(mesh, trace, spec).solve();
}

}  // namespace fluxred
