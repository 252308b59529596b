#include "fluxred/reduction.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace fluxred {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Frequency of the k-th cos/sin pair appended after the six leading adapted
// functions: ascending, skipping the frequencies 2 and 5 already present.
int adapted_tail_frequency(int pair_index) {
    int k = 0, seen = -1;
    while (seen < pair_index) {
        ++k;
        if (k != 2 && k != 5) ++seen;
    }
    return k;
}

}  // namespace

double InterfaceBasis::eval(int j, double s) const {
    switch (kind) {
        case BasisKind::POLY: {
            double u = 2.0 * (s - param_lo) / (param_hi - param_lo) - 1.0;
            double p = 1.0;
            for (int i = 0; i < j; ++i) p *= u;
            return p;
        }
        case BasisKind::FOURIER: {
            if (j == 0) return 1.0;
            int k = (j + 1) / 2;
            return (j % 2 == 1) ? std::cos(k * s) : std::sin(k * s);
        }
        case BasisKind::ADAPTED_LINE: {
            switch (j) {
                case 0: return std::sin(kTwoPi * s);
                case 1: return std::cos(5.0 * M_PI * s);
                case 2: {
                    double u = 2.0 * s - 1.0;
                    return u * u;
                }
                case 3: return 1.0;
                case 4: return std::cos(kTwoPi * s);
                case 5: return std::sin(5.0 * M_PI * s);
                default: {
                    int k = adapted_tail_frequency((j - 6) / 2);
                    double a = k * M_PI * s;
                    return (j - 6) % 2 == 0 ? std::cos(a) : std::sin(a);
                }
            }
        }
    }
    throw ConfigError("unknown basis kind");
}

InterfaceBasis InterfaceBasis::truncated(int m) const {
    if (m < 1 || m > size) throw ConfigError("basis truncation out of range");
    InterfaceBasis b = *this;
    b.size = m;
    return b;
}

InterfaceBasis make_basis(BasisKind kind, int m) {
    if (m < 1) throw ConfigError("make_basis: m must be >= 1");
    InterfaceBasis b;
    b.kind = kind;
    b.size = m;
    if (kind == BasisKind::FOURIER) {
        b.param_lo = 0.0;
        b.param_hi = kTwoPi;
    } else {
        b.param_lo = 0.0;
        b.param_hi = 1.0;
    }
    return b;
}

double Projection::evaluate(double s) const {
    double v = 0.0;
    for (int j = 0; j < basis.size; ++j) v += coefficients[j] * basis.eval(j, s);
    return v;
}

InterfaceFn Projection::approx() const {
    Projection copy = *this;
    return [copy](double s) { return copy.evaluate(s); };
}

Projection project_interface_data(const InterfaceFn& g, const InterfaceBasis& basis,
                                  const InterfaceTrace& trace) {
    const int m = basis.size;
    int rows = 0;
    for (const auto& te : trace.edges) rows += static_cast<int>(te.q_param.size());
    if (rows < m) throw ConditioningError("fewer quadrature samples than basis functions");

    Eigen::MatrixXd B(rows, m);
    Eigen::VectorXd y(rows);
    int r = 0;
    for (const auto& te : trace.edges) {
        for (size_t q = 0; q < te.q_param.size(); ++q, ++r) {
            double s = te.q_param[q];
            double sw = std::sqrt(te.q_weight[q]);
            for (int j = 0; j < m; ++j) B(r, j) = sw * basis.eval(j, s);
            y(r) = sw * (g ? g(s) : 0.0);
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
    const auto& R = qr.matrixR();
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
        double d = std::abs(R(j, j));
        rmax = std::max(rmax, d);
        rmin = std::min(rmin, d);
    }
    // cond of the Gram matrix is the square of the triangular factor's.
    if (!(rmin > 0.0) || (rmax / rmin) * (rmax / rmin) > 1e12)
        throw ConditioningError("interface basis Gram matrix condition estimate beyond 1e12");

    Eigen::VectorXd c = qr.solve(y);

    Projection proj;
    proj.basis = basis;
    proj.coefficients.assign(c.data(), c.data() + m);

    double num = 0.0, den = 0.0;
    for (const auto& te : trace.edges) {
        for (size_t q = 0; q < te.q_param.size(); ++q) {
            double s = te.q_param[q];
            double gv = g ? g(s) : 0.0;
            double d = gv - proj.evaluate(s);
            num += te.q_weight[q] * d * d;
            den += te.q_weight[q] * gv * gv;
        }
    }
    proj.relative_error = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return proj;
}

double interface_l2_norm(const InterfaceFn& g, const InterfaceTrace& trace) {
    double s2 = 0.0;
    for (const auto& te : trace.edges)
        for (size_t q = 0; q < te.q_param.size(); ++q) {
            double gv = g ? g(te.q_param[q]) : 0.0;
            s2 += te.q_weight[q] * gv * gv;
        }
    return std::sqrt(s2);
}

ReducedPipeline::ReducedPipeline(const FittedMesh& mesh, const InterfaceTrace& trace,
                                 const ProblemSpec& spec, InterfaceBasis basis)
    : mesh_(mesh),
      trace_(trace),
      spec_(spec),
      basis_(basis),
      solver_(mesh, trace, spec),
      ref_(solver_.solve()),
      ref_flux_(recover_flux(mesh, trace, ref_, spec)) {}

double ReducedPipeline::solution_scale_rms() const {
    double s = 0.0;
    for (double v : ref_.values) s += v * v;
    return std::sqrt(s / ref_.values.size());
}

double ReducedPipeline::flux_scale_rms() const {
    double s = 0.0;
    for (const Vec2& a : ref_flux_.const_part) s += dot(a, a);
    return std::sqrt(s / ref_flux_.const_part.size());
}

ReducedRunRecord ReducedPipeline::run(int m) const {
    Projection proj = project_interface_data(spec_.datum, basis_.truncated(m), trace_);
    InterfaceFn g_m = proj.approx();

    BrokenSolution u_m = solver_.solve_with_datum(g_m);
    ProblemSpec spec_m = spec_;
    spec_m.datum = g_m;
    RecoveredFlux q_m = recover_flux(mesh_, trace_, u_m, spec_m);

    ReducedRunRecord rec;
    rec.m = m;
    rec.g_rel_err = proj.relative_error;

    double sum2 = 0.0;
    for (size_t i = 0; i < ref_.values.size(); ++i) {
        double d = std::abs(ref_.values[i] - u_m.values[i]);
        rec.eu_inf = std::max(rec.eu_inf, d);
        sum2 += d * d;
    }
    rec.eu_rms = std::sqrt(sum2 / ref_.values.size());

    sum2 = 0.0;
    for (int k = 0; k < ref_flux_.element_count(); ++k) {
        double d = norm(ref_flux_.const_part[k] - q_m.const_part[k]);
        rec.eq_inf = std::max(rec.eq_inf, d);
        sum2 += d * d;
    }
    rec.eq_rms = std::sqrt(sum2 / ref_flux_.element_count());

    rec.residual = interface_residual(q_m, mesh_, trace_, spec_m).max_abs;
    return rec;
}

ReducedRunRecord reduced_solve(const FittedMesh& mesh, const InterfaceTrace& trace,
                               const ProblemSpec& spec, const InterfaceBasis& basis, int m) {
    return ReducedPipeline(mesh, trace, spec, basis).run(m);
}

}  // namespace fluxred
