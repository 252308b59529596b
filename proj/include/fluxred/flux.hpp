#pragma once

#include <array>
#include <iosfwd>

#include "fluxred/fem.hpp"
#include "fluxred/mesh.hpp"

namespace fluxred {

/// Elementwise affine flux q|_K(x) = a_K + f_K * (x - x_K)/2, whose divergence
/// is f_K identically on K.
struct RecoveredFlux {
    std::vector<Vec2> const_part;    // a_K
    std::vector<double> elem_source; // f_K
    std::vector<Vec2> barycenter;    // x_K

    int element_count() const { return static_cast<int>(const_part.size()); }
    Vec2 eval(int k, Vec2 x) const {
        return const_part[k] + (0.5 * elem_source[k]) * (x - barycenter[k]);
    }
    double divergence(int k) const { return elem_source[k]; }
};

/// Per-edge flux targets. `normal` is the fixed orientation choice (the
/// MINUS->PLUS normal on interface edges, the lexicographic-vertex normal
/// elsewhere); `sigma[slot]` is the target one-sided normal flux in the
/// adjacent element's outward sense, slot-aligned with MeshEdge::tri;
/// `outward_sign[slot]` converts between the two senses. Interface edges are
/// HARD equality constraints, all others SOFT.
struct EdgeTargets {
    std::vector<Vec2> normal;
    std::vector<std::array<double, 2>> sigma;
    std::vector<std::array<double, 2>> outward_sign;
    std::vector<bool> hard;
};

/// Raw flux -beta_K grad u_h + f_K P_K (no correction).
RecoveredFlux raw_flux(const FittedMesh& mesh, const BrokenSolution& u, const ProblemSpec& spec);

EdgeTargets compute_edge_targets(const FittedMesh& mesh, const InterfaceTrace& trace,
                                 const RecoveredFlux& raw, const ProblemSpec& spec);

/// Correction vector of one element: least squares over the soft edges with
/// the hard edge (at most one) satisfied exactly.
Vec2 correct_element(const std::array<Vec2, 3>& normals, const std::array<double, 3>& mismatches,
                     const std::array<bool, 3>& hard);

/// Full recovery: raw flux plus the per-element correction against the edge
/// targets. The elementwise divergence stays f_K; the interface transmission
/// relation holds to machine precision.
RecoveredFlux recover_flux(const FittedMesh& mesh, const InterfaceTrace& trace,
                           const BrokenSolution& u, const ProblemSpec& spec);

/// sqrt( sum_K ||q||^2_{L2(K)} + ||div q||^2_{L2(K)} ), closed form for the
/// affine representation.
double broken_hdiv_norm(const RecoveredFlux& q, const FittedMesh& mesh);

struct ResidualStats {
    double max_abs = 0.0;
    double rms = 0.0;
};

/// Violation of the prescribed transmission relation at interface edge
/// midpoints: |(q+ - q-).n + g| in the flux-jump case, |(q+ - q-).n| in the
/// solution-jump case.
ResidualStats interface_residual(const RecoveredFlux& q, const FittedMesh& mesh,
                                 const InterfaceTrace& trace, const ProblemSpec& spec);

/// Broken H(div) distance to a smooth exact flux, by elementwise quadrature.
double broken_hdiv_error(const RecoveredFlux& q, const FittedMesh& mesh,
                         const std::function<Vec2(Vec2)>& exact_flux,
                         const ScalarField& exact_div);

/// Plain-text export: one line per element `k a_x a_y f_K x_K y_K`.
void write_flux(const RecoveredFlux& q, std::ostream& out);

}  // namespace fluxred
