#include "fluxred/flux.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "fluxred/quadrature.hpp"

namespace fluxred {

RecoveredFlux raw_flux(const FittedMesh& mesh, const BrokenSolution& u, const ProblemSpec& spec) {
    RecoveredFlux q;
    const int nt = mesh.triangle_count();
    q.const_part.resize(nt);
    q.elem_source.resize(nt);
    q.barycenter.resize(nt);
    for (int k = 0; k < nt; ++k) {
        const auto& t = mesh.triangles[k];
        Vec2 p[3] = {mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]};
        double area = mesh.area(k);
        Vec2 grad{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            double ui = u.side_value(t.v[i], t.label);
            grad += (ui / (2.0 * area)) * perp(p[(i + 2) % 3] - p[(i + 1) % 3]);
        }
        q.const_part[k] = -t.beta * grad;
        q.elem_source[k] = spec.source_at(mesh, k);
        q.barycenter[k] = mesh.centroid(k);
    }
    return q;
}

EdgeTargets compute_edge_targets(const FittedMesh& mesh, const InterfaceTrace& trace,
                                 const RecoveredFlux& raw, const ProblemSpec& spec) {
    const int ne = static_cast<int>(mesh.edges.size());
    EdgeTargets targets;
    targets.normal.resize(ne);
    targets.sigma.assign(ne, {0.0, 0.0});
    targets.outward_sign.assign(ne, {1.0, 1.0});
    targets.hard.assign(ne, false);

    // Interface edges take the trace normal (MINUS->PLUS) and the datum at the
    // midpoint parameter.
    std::vector<double> iface_g(ne, 0.0);
    std::vector<char> is_iface(ne, 0);
    std::vector<Vec2> iface_normal(ne);
    for (const auto& te : trace.edges) {
        is_iface[te.edge_id] = 1;
        iface_normal[te.edge_id] = te.normal;
        iface_g[te.edge_id] = spec.datum ? spec.datum(te.s_mid) : 0.0;
    }

    for (int e = 0; e < ne; ++e) {
        const MeshEdge& me = mesh.edges[e];
        Vec2 mid = 0.5 * (mesh.vertices[me.v0] + mesh.vertices[me.v1]);
        Vec2 n;
        if (is_iface[e]) {
            n = iface_normal[e];
            targets.hard[e] = true;
        } else {
            n = normalized(perp(mesh.vertices[me.v1] - mesh.vertices[me.v0]));
        }
        targets.normal[e] = n;

        double sign[2] = {0.0, 0.0};
        double t_fixed[2] = {0.0, 0.0};  // raw midpoint flux in the fixed orientation
        for (int slot = 0; slot < 2; ++slot) {
            int k = me.tri[slot];
            if (k < 0) continue;
            sign[slot] = dot(n, mid - mesh.centroid(k)) > 0.0 ? 1.0 : -1.0;
            t_fixed[slot] = dot(raw.eval(k, mid), n);
            targets.outward_sign[e][slot] = sign[slot];
        }

        if (me.tri[1] < 0) {
            // Boundary edge: the element's own raw value, an inert constraint.
            targets.sigma[e][0] = sign[0] * t_fixed[0];
            continue;
        }

        double mu = 0.5 * (t_fixed[0] + t_fixed[1]);
        if (!is_iface[e] || spec.kind == ProblemCase::SOLUTION_JUMP) {
            // Shared value in the fixed orientation encodes normal continuity.
            for (int slot = 0; slot < 2; ++slot) targets.sigma[e][slot] = sign[slot] * mu;
        } else {
            // Flux-jump interface edge: (q+ - q-).n = -g, mean preserved.
            double g = iface_g[e];
            for (int slot = 0; slot < 2; ++slot) {
                bool plus_side = mesh.triangles[me.tri[slot]].label == Subdomain::PLUS;
                double fixed_target = plus_side ? mu - 0.5 * g : mu + 0.5 * g;
                targets.sigma[e][slot] = sign[slot] * fixed_target;
            }
        }
    }
    return targets;
}

Vec2 correct_element(const std::array<Vec2, 3>& normals, const std::array<double, 3>& mismatches,
                     const std::array<bool, 3>& hard) {
    int n_hard = 0, hard_idx = -1;
    for (int i = 0; i < 3; ++i)
        if (hard[i]) {
            ++n_hard;
            hard_idx = i;
        }
    if (n_hard > 1) throw ConfigError("correct_element: more than one hard edge constraint");

    if (n_hard == 0) {
        // Normal equations (N^T N) C = N^T r for the 2x2 system.
        double m00 = 0.0, m01 = 0.0, m11 = 0.0, b0 = 0.0, b1 = 0.0;
        for (int i = 0; i < 3; ++i) {
            m00 += normals[i].x * normals[i].x;
            m01 += normals[i].x * normals[i].y;
            m11 += normals[i].y * normals[i].y;
            b0 += normals[i].x * mismatches[i];
            b1 += normals[i].y * mismatches[i];
        }
        double det = m00 * m11 - m01 * m01;
        if (!(det > 1e-12)) throw GeometryError("correct_element: collinear edge normals");
        return {(m11 * b0 - m01 * b1) / det, (-m01 * b0 + m00 * b1) / det};
    }

    // One hard constraint: satisfy it exactly, least squares over the soft
    // edges along the remaining tangential direction.
    Vec2 nh = normals[hard_idx];
    Vec2 tau = perp(nh);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (i == hard_idx) continue;
        double a = dot(tau, normals[i]);
        double c = mismatches[i] - mismatches[hard_idx] * dot(nh, normals[i]);
        num += a * c;
        den += a * a;
    }
    if (!(den > 1e-12)) throw GeometryError("correct_element: soft edge normals parallel to the hard edge");
    return mismatches[hard_idx] * nh + (num / den) * tau;
}

RecoveredFlux recover_flux(const FittedMesh& mesh, const InterfaceTrace& trace,
                           const BrokenSolution& u, const ProblemSpec& spec) {
    RecoveredFlux q = raw_flux(mesh, u, spec);
    EdgeTargets targets = compute_edge_targets(mesh, trace, q, spec);
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        std::array<Vec2, 3> normals;
        std::array<double, 3> mismatches;
        std::array<bool, 3> hard;
        for (int j = 0; j < 3; ++j) {
            int e = mesh.tri_edges[k][j];
            const MeshEdge& me = mesh.edges[e];
            int slot = me.tri[0] == k ? 0 : 1;
            Vec2 n_out = targets.outward_sign[e][slot] * targets.normal[e];
            Vec2 mid = 0.5 * (mesh.vertices[me.v0] + mesh.vertices[me.v1]);
            normals[j] = n_out;
            mismatches[j] = targets.sigma[e][slot] - dot(q.eval(k, mid), n_out);
            hard[j] = targets.hard[e];
        }
        q.const_part[k] += correct_element(normals, mismatches, hard);
    }
    return q;
}

double broken_hdiv_norm(const RecoveredFlux& q, const FittedMesh& mesh) {
    double total = 0.0;
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const auto& t = mesh.triangles[k];
        Vec2 p[3] = {mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]};
        double area = mesh.area(k);
        double sum_sq_sides = 0.0;
        for (int j = 0; j < 3; ++j) {
            Vec2 d = p[(j + 1) % 3] - p[j];
            sum_sq_sides += dot(d, d);
        }
        Vec2 a = q.const_part[k];
        double f = q.elem_source[k];
        // Exact integrals of the affine representation: the linear term is
        // centered at the barycenter, so its second moment is area*S/36.
        double l2 = area * (dot(a, a) + 0.25 * f * f * sum_sq_sides / 36.0);
        double div2 = area * f * f;
        total += l2 + div2;
    }
    return std::sqrt(total);
}

ResidualStats interface_residual(const RecoveredFlux& q, const FittedMesh& mesh,
                                 const InterfaceTrace& trace, const ProblemSpec& spec) {
    ResidualStats stats;
    if (trace.edges.empty()) return stats;
    double sum_sq = 0.0;
    for (const auto& te : trace.edges) {
        const MeshEdge& me = mesh.edges[te.edge_id];
        int tri_plus = mesh.triangles[me.tri[0]].label == Subdomain::PLUS ? me.tri[0] : me.tri[1];
        int tri_minus = me.tri[0] == tri_plus ? me.tri[1] : me.tri[0];
        double jump = dot(q.eval(tri_plus, te.mid) - q.eval(tri_minus, te.mid), te.normal);
        double viol;
        if (spec.kind == ProblemCase::FLUX_JUMP)
            viol = std::abs(jump + (spec.datum ? spec.datum(te.s_mid) : 0.0));
        else
            viol = std::abs(jump);
        stats.max_abs = std::max(stats.max_abs, viol);
        sum_sq += viol * viol;
    }
    stats.rms = std::sqrt(sum_sq / trace.edges.size());
    return stats;
}

double broken_hdiv_error(const RecoveredFlux& q, const FittedMesh& mesh,
                         const std::function<Vec2(Vec2)>& exact_flux,
                         const ScalarField& exact_div) {
    const auto& rule = triangle_rule_deg5();
    double total = 0.0;
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const auto& t = mesh.triangles[k];
        Vec2 p[3] = {mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]};
        double area = mesh.area(k);
        double l2 = 0.0, div2 = 0.0;
        for (const auto& node : rule) {
            Vec2 x = node.bary[0] * p[0] + node.bary[1] * p[1] + node.bary[2] * p[2];
            Vec2 dq = exact_flux(x) - q.eval(k, x);
            l2 += node.weight * dot(dq, dq);
            if (exact_div) {
                double dd = exact_div(x) - q.divergence(k);
                div2 += node.weight * dd * dd;
            }
        }
        total += area * (l2 + div2);
    }
    return std::sqrt(total);
}

void write_flux(const RecoveredFlux& q, std::ostream& out) {
    out << std::setprecision(17);
    for (int k = 0; k < q.element_count(); ++k)
        out << k << " " << q.const_part[k].x << " " << q.const_part[k].y << " "
            << q.elem_source[k] << " " << q.barycenter[k].x << " " << q.barycenter[k].y << "\n";
}

}  // namespace fluxred
