#pragma once

#include <vector>

#include "fluxred/fem.hpp"
#include "fluxred/flux.hpp"
#include "fluxred/mesh.hpp"

namespace fluxred {

enum class BasisKind { POLY, FOURIER, ADAPTED_LINE };

/// Ordered family of scalar functions of the interface parameter.
///   POLY:         1, s, s^2, ...           with s = 2x - 1 on [0,1]
///   FOURIER:      1, cos t, sin t, cos 2t, sin 2t, ...   on [0, 2 pi)
///   ADAPTED_LINE: sin 2 pi x, cos 5 pi x, (2x-1)^2, 1, cos 2 pi x,
///                 sin 5 pi x, then the remaining cos/sin k pi x pairs by
///                 ascending frequency.
struct InterfaceBasis {
    BasisKind kind = BasisKind::POLY;
    int size = 0;
    double param_lo = 0.0;
    double param_hi = 1.0;

    double eval(int j, double s) const;
    InterfaceBasis truncated(int m) const;
};

InterfaceBasis make_basis(BasisKind kind, int m);

/// L2(Gamma) projection result. Coefficients are reported in the basis's own
/// ordering; the fit itself runs through orthogonalized quadrature samples.
struct Projection {
    InterfaceBasis basis;
    std::vector<double> coefficients;
    double relative_error = 0.0;

    double evaluate(double s) const;
    InterfaceFn approx() const;
};

/// Discrete L2(Gamma) projection of g onto the basis span under the trace's
/// arc-length inner product. Throws ConditioningError when the basis Gram
/// matrix is numerically unusable (condition estimate beyond 1e12).
Projection project_interface_data(const InterfaceFn& g, const InterfaceBasis& basis,
                                  const InterfaceTrace& trace);

/// Discrete L2 norm over the polygonal trace.
double interface_l2_norm(const InterfaceFn& g, const InterfaceTrace& trace);

struct ReducedRunRecord {
    int m = 0;
    double g_rel_err = 0.0;
    double eu_rms = 0.0;
    double eu_inf = 0.0;
    double eq_rms = 0.0;
    double eq_inf = 0.0;
    double residual = 0.0;
};

/// Reference solve with the exact datum plus reduced solves sharing the mesh,
/// factorization and recovered reference flux across ranks.
class ReducedPipeline {
public:
    ReducedPipeline(const FittedMesh& mesh, const InterfaceTrace& trace, const ProblemSpec& spec,
                    InterfaceBasis basis);

    ReducedRunRecord run(int m) const;

    const BrokenSolution& reference_solution() const { return ref_; }
    const RecoveredFlux& reference_flux() const { return ref_flux_; }
    const InterfaceBasis& basis() const { return basis_; }

    /// RMS / max scales of the reference fields, for relative comparisons.
    double solution_scale_rms() const;
    double flux_scale_rms() const;

private:
    const FittedMesh& mesh_;
    const InterfaceTrace& trace_;
    ProblemSpec spec_;
    InterfaceBasis basis_;
    TransmissionSolver solver_;
    BrokenSolution ref_;
    RecoveredFlux ref_flux_;
};

/// One-shot reference-vs-reduced comparison at rank m.
ReducedRunRecord reduced_solve(const FittedMesh& mesh, const InterfaceTrace& trace,
                               const ProblemSpec& spec, const InterfaceBasis& basis, int m);

}  // namespace fluxred
