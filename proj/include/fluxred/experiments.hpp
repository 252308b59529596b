#pragma once

#include <string>

#include "fluxred/reduction.hpp"

namespace fluxred {

enum class ExperimentCase { LINE_FLUX, LINE_SOL, CIRCLE_FLUX, CIRCLE_SOL, STAR_FLUX };

/// Mesh resolution and quadrature knobs shared by all experiment commands.
struct MeshParams {
    int n = 64;            // line mesh
    int n_theta = 128;     // mapped meshes
    int n_radial_in = 16;
    int n_radial_out = 16;
    int quad_order = 10;
};

/// Interface data of the experiments.
double line_datum(double x);    // sin(2 pi x) + 0.35 cos(5 pi x) + 0.20 (2x-1)^2
double angle_datum(double t);   // sin(2t) + 0.35 cos(5t) + 0.20 cos(t)
double star_radius(double t);   // 0.35 (1 + 0.25 cos(5t))

/// Case/basis combinations backed by an experiment table; anything else only
/// runs behind an explicit flag.
bool is_paper_combo(ExperimentCase c, BasisKind basis);

BasisKind default_basis(ExperimentCase c);

struct Experiment {
    FittedMesh mesh;
    InterfaceTrace trace;
    ProblemSpec spec;
    InterfaceBasis basis;
    std::string mesh_comment;  // self-describing "# mesh ..." line
};

Experiment build_experiment(ExperimentCase c, BasisKind basis, const MeshParams& params);

/// Experiment tables: id 1..5 with the per-table rank lists
/// {1,2,3}, {1,4,8}, {1,2,3}, {1,5,10}, {1,3,5,8,10}.
std::string table_csv(int id, const MeshParams& params = {});

std::string sweep_csv(ExperimentCase c, BasisKind basis, int m_max, const MeshParams& params = {});

/// Single reduced run at rank m (one data row).
std::string solve_csv(ExperimentCase c, BasisKind basis, int m, const MeshParams& params = {});

/// Manufactured line-interface solution used by the convergence study:
/// beta- = 1, beta+ = 5, u- = sin(pi x) y, u+ = sin(pi x)(y/5 + 2/5),
/// continuous with continuous flux across y = 1/2.
struct ManufacturedLine {
    double beta_minus = 1.0;
    double beta_plus = 5.0;
    double exact(Vec2 p) const;
    Vec2 exact_flux(Vec2 p) const;
    double source(Vec2 p) const;
    ProblemSpec problem() const;
};

struct ConvergenceRow {
    int n;
    double h;
    double eu_l2;
    double eq_hdiv;
};

std::vector<ConvergenceRow> run_convergence(const std::vector<int>& resolutions);
std::string convergence_csv();

std::string case_name(ExperimentCase c);
std::string basis_name(BasisKind b);
ExperimentCase parse_case(const std::string& name);
BasisKind parse_basis(const std::string& name);

/// Paper-style scientific formatting with four significant digits.
std::string format_sci(double v);

}  // namespace fluxred
