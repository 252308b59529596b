#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fluxred/linalg.hpp"
#include "fluxred/mesh.hpp"

namespace fluxred {

enum class ProblemCase { FLUX_JUMP, SOLUTION_JUMP };

using ScalarField = std::function<double(Vec2)>;
using InterfaceFn = std::function<double(double)>;

/// Transmission problem data. The jump convention is [a] = a+ - a- with the
/// interface normal oriented from the MINUS into the PLUS subdomain, so the
/// flux-jump condition enters the weak form as -<g, v> on the interface.
struct ProblemSpec {
    ProblemCase kind = ProblemCase::FLUX_JUMP;
    ScalarField source_minus;  // f on the MINUS side; null means 0
    ScalarField source_plus;
    InterfaceFn datum;         // g as a function of the interface parameter
    double beta_minus = 1.0;
    double beta_plus = 1.0;
    ScalarField dirichlet;     // boundary trace; null means homogeneous

    /// Barycenter value of f on element k (the elementwise mean used by both
    /// the load vector and the flux recovery).
    double source_at(const FittedMesh& mesh, int k) const;
};

/// Nodal P1 field over the broken degrees of freedom: every interface vertex
/// carries a minus and a plus value, all other vertices one value. Layout:
/// values[v] is the minus/base value, values[mesh.plus_dof[v]] the plus value.
struct BrokenSolution {
    const FittedMesh* mesh = nullptr;
    ProblemCase produced_by = ProblemCase::FLUX_JUMP;
    std::vector<double> values;

    double minus_value(int v) const { return values[v]; }
    double plus_value(int v) const { return values[mesh->plus_dof[v]]; }
    double side_value(int v, Subdomain s) const {
        return s == Subdomain::PLUS ? plus_value(v) : minus_value(v);
    }
    double jump(int v) const { return plus_value(v) - minus_value(v); }
};

/// Broken field with support confined to the PLUS triangles touching the
/// interface, whose jump at every interface vertex equals the nodal sample of
/// the lifted datum.
struct LiftingField {
    BrokenSolution field;
    InterfaceFn datum;
};

struct DofMap {
    int n_full = 0;
    std::vector<int> free_index;  // full dof -> free index, -1 if Dirichlet
    std::vector<int> full_index;  // free index -> full dof
    int n_free() const { return static_cast<int>(full_index.size()); }
};

struct StiffnessSystem {
    SparseSymMatrix A;  // over free dofs, Dirichlet rows/columns eliminated
    DofMap dofs;
    bool broken = false;
};

/// Local P1 stiffness of one element (beta included).
std::array<std::array<double, 3>, 3> element_stiffness(const FittedMesh& mesh, int k);

/// Side-specific degree of freedom of vertex v as seen from `side`.
inline int broken_dof(const FittedMesh& mesh, int v, Subdomain side) {
    return side == Subdomain::PLUS ? mesh.plus_dof[v] : v;
}

/// P1 stiffness with coefficient beta_K per element. In broken mode interface
/// vertices use their side-specific dof; Dirichlet dofs (vertices on the outer
/// boundary, both copies) are eliminated symmetrically by reduction.
StiffnessSystem assemble_stiffness(const FittedMesh& mesh, bool broken);

/// Load vector (f, v) by the one-point barycenter rule, continuous numbering.
std::vector<double> assemble_load(const FittedMesh& mesh, const ScalarField& f_minus,
                                  const ScalarField& f_plus);
std::vector<double> assemble_load(const FittedMesh& mesh, const ScalarField& f);

/// Interface load: entries -int_Gamma g phi_v ds at interface vertices,
/// assembled edge by edge with the trace quadrature. Continuous numbering.
std::vector<double> assemble_interface_load(const FittedMesh& mesh, const InterfaceTrace& trace,
                                            const InterfaceFn& g);

/// One-sided nodal lifting: plus value phi(s_v) at every interface vertex,
/// minus value 0, zero elsewhere.
LiftingField build_lifting(const FittedMesh& mesh, const InterfaceTrace& trace,
                           const InterfaceFn& phi);

/// Factor-once solver for both transmission problems: the stiffness and the
/// datum-independent right-hand side are built at construction, after which
/// solves for different interface data reuse the factorization.
class TransmissionSolver {
public:
    TransmissionSolver(const FittedMesh& mesh, const InterfaceTrace& trace,
                       const ProblemSpec& spec);

    /// Solve with the spec's own datum.
    BrokenSolution solve() const;
    /// Solve with a replacement interface datum (same f, beta, boundary data).
    BrokenSolution solve_with_datum(const InterfaceFn& g) const;

    const StiffnessSystem& system() const { return sys_; }

private:
    const FittedMesh& mesh_;
    const InterfaceTrace& trace_;
    ProblemSpec spec_;
    StiffnessSystem sys_;
    SpdFactorization factor_;
    std::vector<double> dirichlet_values_;  // per vertex, 0 where free
    std::vector<double> rhs_base_;          // free-size, datum-independent part
};

BrokenSolution solve_flux_jump(const FittedMesh& mesh, const InterfaceTrace& trace,
                               const ProblemSpec& spec);
BrokenSolution solve_solution_jump(const FittedMesh& mesh, const InterfaceTrace& trace,
                                   const ProblemSpec& spec);

}  // namespace fluxred
