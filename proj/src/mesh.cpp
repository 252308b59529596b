#include "fluxred/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fluxred/quadrature.hpp"

namespace fluxred {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double tri_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

double corner_angle(Vec2 at, Vec2 p, Vec2 q) {
    Vec2 u = p - at, v = q - at;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

double tri_min_angle_deg(Vec2 a, Vec2 b, Vec2 c) {
    double m = std::min({corner_angle(a, b, c), corner_angle(b, c, a), corner_angle(c, a, b)});
    return m * 180.0 / M_PI;
}

long long edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<long long>(a) << 32) | static_cast<unsigned int>(b);
}

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    double d = cross(b - a, c - a);
    return (d > 0.0) - (d < 0.0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& poly) {
    const int n = static_cast<int>(poly.size());
    if (n < 3) return false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

int FittedMesh::interface_edge_count() const {
    int c = 0;
    for (const auto& e : edges)
        if (e.kind == EdgeKind::INTERFACE) ++c;
    return c;
}

double FittedMesh::area(int k) const {
    const auto& t = triangles[k];
    return tri_area(vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]]);
}

Vec2 FittedMesh::centroid(int k) const {
    const auto& t = triangles[k];
    Vec2 c = vertices[t.v[0]] + vertices[t.v[1]] + vertices[t.v[2]];
    return {c.x / 3.0, c.y / 3.0};
}

double FittedMesh::min_angle_deg(int k) const {
    const auto& t = triangles[k];
    return tri_min_angle_deg(vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]]);
}

double FittedMesh::interface_param(int v) const {
    auto it = std::lower_bound(interface_vertices.begin(), interface_vertices.end(), v);
    if (it == interface_vertices.end() || *it != v)
        throw GeometryError("vertex " + std::to_string(v) + " is not on the interface");
    return interface_vertex_param[it - interface_vertices.begin()];
}

FittedMesh make_fitted_mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles,
                            const std::vector<std::pair<int, double>>& interface_params,
                            double beta_minus, double beta_plus) {
    FittedMesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.triangles = std::move(triangles);
    mesh.beta_minus = beta_minus;
    mesh.beta_plus = beta_plus;
    const int nv = mesh.vertex_count();
    const int nt = mesh.triangle_count();

    for (int k = 0; k < nt; ++k) {
        for (int v : mesh.triangles[k].v)
            if (v < 0 || v >= nv) throw GeometryError("triangle vertex index out of range");
        if (!(mesh.area(k) > 0.0))
            throw GeometryError("triangle " + std::to_string(k) + " has nonpositive area");
    }

    std::unordered_map<long long, int> edge_of;
    edge_of.reserve(3 * nt);
    mesh.tri_edges.assign(nt, {-1, -1, -1});
    for (int k = 0; k < nt; ++k) {
        for (int j = 0; j < 3; ++j) {
            int a = mesh.triangles[k].v[j];
            int b = mesh.triangles[k].v[(j + 1) % 3];
            long long key = edge_key(a, b);
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                MeshEdge e;
                e.v0 = std::min(a, b);
                e.v1 = std::max(a, b);
                e.tri[0] = k;
                e.tri[1] = -1;
                e.kind = EdgeKind::BOUNDARY;
                it = edge_of.emplace(key, static_cast<int>(mesh.edges.size())).first;
                mesh.edges.push_back(e);
            } else {
                MeshEdge& e = mesh.edges[it->second];
                if (e.tri[1] != -1)
                    throw GeometryError("edge (" + std::to_string(e.v0) + "," + std::to_string(e.v1) +
                                        ") shared by more than two triangles");
                e.tri[1] = k;
            }
            mesh.tri_edges[k][j] = it->second;
        }
    }

    mesh.boundary_vertex.assign(nv, false);
    std::vector<int> iface;
    for (auto& e : mesh.edges) {
        if (e.tri[1] == -1) {
            e.kind = EdgeKind::BOUNDARY;
            mesh.boundary_vertex[e.v0] = true;
            mesh.boundary_vertex[e.v1] = true;
        } else if (mesh.triangles[e.tri[0]].label != mesh.triangles[e.tri[1]].label) {
            e.kind = EdgeKind::INTERFACE;
            iface.push_back(e.v0);
            iface.push_back(e.v1);
        } else {
            e.kind = EdgeKind::INTERIOR;
        }
    }
    std::sort(iface.begin(), iface.end());
    iface.erase(std::unique(iface.begin(), iface.end()), iface.end());
    mesh.interface_vertices = iface;

    std::unordered_map<int, double> params;
    for (auto [v, s] : interface_params) params[v] = s;
    mesh.interface_vertex_param.resize(iface.size());
    for (size_t i = 0; i < iface.size(); ++i) {
        auto it = params.find(iface[i]);
        mesh.interface_vertex_param[i] =
            it != params.end() ? it->second : std::numeric_limits<double>::quiet_NaN();
    }

    mesh.plus_dof.resize(nv);
    for (int v = 0; v < nv; ++v) mesh.plus_dof[v] = v;
    for (size_t i = 0; i < iface.size(); ++i) mesh.plus_dof[iface[i]] = nv + static_cast<int>(i);
    mesh.broken_dof_count = nv + static_cast<int>(iface.size());
    return mesh;
}

FittedMesh build_line_mesh(int n, double beta_minus, double beta_plus) {
    if (n < 2 || n % 2 != 0)
        throw GeometryError("line mesh requires an even n >= 2, got " + std::to_string(n));
    if (!(beta_minus > 0.0) || !(beta_plus > 0.0))
        throw GeometryError("diffusion coefficients must be positive");

    const double h = 1.0 / n;
    std::vector<Vec2> verts;
    verts.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) verts.push_back({i * h, j * h});
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };

    std::vector<Triangle> tris;
    tris.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        Subdomain label = (j < n / 2) ? Subdomain::MINUS : Subdomain::PLUS;
        double beta = (label == Subdomain::MINUS) ? beta_minus : beta_plus;
        for (int i = 0; i < n; ++i) {
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            tris.push_back({{a, b, c}, label, beta});
            tris.push_back({{a, c, d}, label, beta});
        }
    }

    std::vector<std::pair<int, double>> params;
    for (int i = 0; i <= n; ++i) params.emplace_back(vid(i, n / 2), i * h);
    return make_fitted_mesh(std::move(verts), std::move(tris), params, beta_minus, beta_plus);
}

namespace {

// Smallest grading ratio in [1, qmax] whose geometric spacing starts at
// s_target over total length L with n layers; qmax when unreachable.
double solve_grading_ratio(double L, int n, double s_target, double qmax) {
    if (n <= 1 || !(s_target * n < L)) return 1.0;
    auto first_spacing = [&](double q) {
        double sum = 0.0, p = 1.0;
        for (int k = 0; k < n; ++k) {
            sum += p;
            p *= q;
        }
        return L / sum;
    };
    if (first_spacing(qmax) > s_target) return qmax;
    double lo = 1.0, hi = qmax;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (first_spacing(mid) > s_target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> grading_fractions(int n, double q) {
    std::vector<double> c(n + 1, 0.0);
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
        c[k + 1] = c[k] + p;
        p *= q;
    }
    for (int k = 0; k <= n; ++k) c[k] /= c[n];
    c[n] = 1.0;
    return c;
}

}  // namespace

FittedMesh build_mapped_mesh(const std::function<double(double)>& radius_fn, int n_theta,
                             int n_radial_in, int n_radial_out, double half_width,
                             double beta_minus, double beta_plus) {
    if (n_theta < 3) throw GeometryError("mapped mesh requires n_theta >= 3");
    if (n_radial_in < 1 || n_radial_out < 1)
        throw GeometryError("mapped mesh requires positive radial layer counts");
    if (!(half_width > 0.0)) throw GeometryError("half_width must be positive");
    if (!(beta_minus > 0.0) || !(beta_plus > 0.0))
        throw GeometryError("diffusion coefficients must be positive");

    std::vector<double> theta(n_theta), rad(n_theta);
    std::vector<Vec2> dir(n_theta), gamma(n_theta), square(n_theta);
    std::vector<double> ray_extent(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        theta[i] = kTwoPi * i / n_theta;
        double r = radius_fn(theta[i]);
        if (!(r > 0.0))
            throw GeometryError("radius_fn not positive at theta=" + std::to_string(theta[i]));
        if (!(r < half_width))
            throw GeometryError("radius_fn reaches the inscribed radius at theta=" +
                                std::to_string(theta[i]));
        rad[i] = r;
        dir[i] = {std::cos(theta[i]), std::sin(theta[i])};
        gamma[i] = r * dir[i];
        double den = std::max(std::abs(dir[i].x), std::abs(dir[i].y));
        double r_square = half_width / den;
        square[i] = r_square * dir[i];
        ray_extent[i] = r_square - r;
        if (ray_extent[i] < 1e-9 * half_width)
            throw GeometryError("degenerate blended cell at theta=" + std::to_string(theta[i]));
    }
    if (!polygon_is_simple(gamma))
        throw GeometryError("interface polygon self-intersects; raise n_theta or smooth radius_fn");

    // Angular points per inner ring: coarsen by 2 toward the center whenever
    // the cells get tangentially thin, down to a small central fan.
    std::vector<int> ring_pts(n_radial_in + 1, n_theta);
    const int fan_floor = std::min(8, n_theta);
    for (int j = n_radial_in - 1; j >= 1; --j) {
        int m = ring_pts[j + 1];
        if (m % 2 == 0 && m / 2 >= fan_floor && kTwoPi * j / m < 0.6) m /= 2;
        ring_pts[j] = m;
    }

    std::vector<Vec2> verts;
    std::vector<Triangle> tris;
    auto add_vertex = [&verts](Vec2 p) {
        verts.push_back(p);
        return static_cast<int>(verts.size()) - 1;
    };
    auto add_tri = [&tris](int a, int b, int c, Subdomain label, double beta) {
        tris.push_back({{a, b, c}, label, beta});
    };
    // Quad corners in CCW order: A, D on one ring at angles t, t+1 and B, C on
    // the next ring outward. Split along the shorter diagonal.
    auto add_quad = [&](int A, int B, int C, int D, Subdomain label, double beta) {
        double diag_ac = dot(verts[C] - verts[A], verts[C] - verts[A]);
        double diag_bd = dot(verts[D] - verts[B], verts[D] - verts[B]);
        if (diag_ac <= diag_bd) {
            add_tri(A, B, C, label, beta);
            add_tri(A, C, D, label, beta);
        } else {
            add_tri(A, B, D, label, beta);
            add_tri(B, C, D, label, beta);
        }
    };

    const int center = add_vertex({0.0, 0.0});
    std::vector<std::vector<int>> ring(n_radial_in + 1);
    for (int j = 1; j <= n_radial_in; ++j) {
        const int m = ring_pts[j];
        const int step = n_theta / m;
        const double frac = static_cast<double>(j) / n_radial_in;
        ring[j].resize(m);
        for (int t = 0; t < m; ++t) {
            int a = t * step;
            ring[j][t] = add_vertex(j == n_radial_in ? gamma[a] : (frac * rad[a]) * dir[a]);
        }
    }

    // Outer blend: per-ray geometric grading so the first layer matches the
    // local interface spacing and cells stay shape-regular near the square.
    std::vector<std::vector<int>> oring(n_radial_out + 1);
    oring[0] = ring[n_radial_in];
    std::vector<std::vector<double>> frac_along(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        int ip = (i + 1) % n_theta, im = (i + n_theta - 1) % n_theta;
        double arc = 0.5 * (norm(gamma[ip] - gamma[i]) + norm(gamma[i] - gamma[im]));
        double s_target = std::min(ray_extent[i] / n_radial_out, 1.2 * arc);
        double q = solve_grading_ratio(ray_extent[i], n_radial_out, s_target, 1.15);
        frac_along[i] = grading_fractions(n_radial_out, q);
    }
    for (int k = 1; k <= n_radial_out; ++k) {
        oring[k].resize(n_theta);
        for (int i = 0; i < n_theta; ++i) {
            double c = frac_along[i][k];
            oring[k][i] = add_vertex(gamma[i] + c * (square[i] - gamma[i]));
        }
    }

    // Central fan.
    {
        const int m = ring_pts[1];
        for (int t = 0; t < m; ++t)
            add_tri(center, ring[1][t], ring[1][(t + 1) % m], Subdomain::MINUS, beta_minus);
    }
    // Inner layers, with 2:1 transitions where the angular count doubles.
    for (int j = 1; j < n_radial_in; ++j) {
        const int mi = ring_pts[j], mo = ring_pts[j + 1];
        if (mi == mo) {
            for (int t = 0; t < mi; ++t)
                add_quad(ring[j][t], ring[j + 1][t], ring[j + 1][(t + 1) % mi],
                         ring[j][(t + 1) % mi], Subdomain::MINUS, beta_minus);
        } else {
            for (int t = 0; t < mi; ++t) {
                int i0 = ring[j][t], i1 = ring[j][(t + 1) % mi];
                int o0 = ring[j + 1][2 * t], o1 = ring[j + 1][2 * t + 1];
                int o2 = ring[j + 1][(2 * t + 2) % mo];
                add_tri(i0, o0, o1, Subdomain::MINUS, beta_minus);
                add_tri(i0, o1, i1, Subdomain::MINUS, beta_minus);
                add_tri(i1, o1, o2, Subdomain::MINUS, beta_minus);
            }
        }
    }
    // Outer layers.
    for (int k = 0; k < n_radial_out; ++k)
        for (int i = 0; i < n_theta; ++i)
            add_quad(oring[k][i], oring[k + 1][i], oring[k + 1][(i + 1) % n_theta],
                     oring[k][(i + 1) % n_theta], Subdomain::PLUS, beta_plus);

    std::vector<std::pair<int, double>> params;
    for (int i = 0; i < n_theta; ++i) params.emplace_back(ring[n_radial_in][i], theta[i]);
    return make_fitted_mesh(std::move(verts), std::move(tris), params, beta_minus, beta_plus);
}

MeshDiagnostics validate_mesh(const FittedMesh& mesh) {
    MeshDiagnostics d;
    d.min_area = std::numeric_limits<double>::infinity();
    d.min_angle_deg = std::numeric_limits<double>::infinity();
    if (mesh.triangle_count() == 0) {
        d.violations.push_back("mesh has no triangles");
        d.min_area = d.min_angle_deg = 0.0;
        return d;
    }

    for (int k = 0; k < mesh.triangle_count(); ++k) {
        double a = mesh.area(k);
        d.min_area = std::min(d.min_area, a);
        if (!(a > 0.0))
            d.violations.push_back("triangle " + std::to_string(k) + " has nonpositive area");
        d.min_angle_deg = std::min(d.min_angle_deg, mesh.min_angle_deg(k));
    }
    if (d.min_angle_deg < mesh.min_angle_threshold_deg)
        d.violations.push_back("minimum angle " + std::to_string(d.min_angle_deg) +
                               " deg below threshold " +
                               std::to_string(mesh.min_angle_threshold_deg));

    // Conformity: recount edge adjacency directly from the triangles.
    std::unordered_map<long long, int> count;
    for (const auto& t : mesh.triangles)
        for (int j = 0; j < 3; ++j) count[edge_key(t.v[j], t.v[(j + 1) % 3])]++;
    for (const auto& e : mesh.edges) {
        auto it = count.find(edge_key(e.v0, e.v1));
        int n_adj = it == count.end() ? 0 : it->second;
        int expected = e.kind == EdgeKind::BOUNDARY ? 1 : 2;
        if (n_adj != expected)
            d.violations.push_back("edge (" + std::to_string(e.v0) + "," + std::to_string(e.v1) +
                                   ") adjacent to " + std::to_string(n_adj) +
                                   " triangles, expected " + std::to_string(expected));
    }
    if (count.size() != mesh.edges.size())
        d.violations.push_back("edge table size mismatch with triangle connectivity");

    for (const auto& e : mesh.edges) {
        if (e.tri[1] == -1) continue;
        Subdomain l0 = mesh.triangles[e.tri[0]].label;
        Subdomain l1 = mesh.triangles[e.tri[1]].label;
        if (e.kind == EdgeKind::INTERFACE && l0 == l1)
            d.violations.push_back("INTERFACE edge (" + std::to_string(e.v0) + "," +
                                   std::to_string(e.v1) + ") has same-side labels");
        if (e.kind == EdgeKind::INTERIOR && l0 != l1)
            d.violations.push_back("INTERIOR edge (" + std::to_string(e.v0) + "," +
                                   std::to_string(e.v1) + ") has mixed subdomain labels");
    }

    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const auto& t = mesh.triangles[k];
        double expected = t.label == Subdomain::MINUS ? mesh.beta_minus : mesh.beta_plus;
        if (t.beta != expected)
            d.violations.push_back("triangle " + std::to_string(k) +
                                   " beta inconsistent with its subdomain");
    }
    return d;
}

double InterfaceTrace::param_of_vertex(int v) const {
    auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), v);
    if (it == vertex_ids.end() || *it != v)
        throw GeometryError("vertex " + std::to_string(v) + " is not on the interface trace");
    return vertex_param[it - vertex_ids.begin()];
}

InterfaceTrace extract_interface(const FittedMesh& mesh, ParamKind param_kind, int quad_order) {
    if (quad_order < 1) throw ConfigError("extract_interface: quadrature order must be >= 1");
    InterfaceTrace trace;
    trace.param = param_kind;
    trace.closed = param_kind == ParamKind::ANGLE;
    trace.period = trace.closed ? kTwoPi : 0.0;
    trace.quad_points = quad_order;
    trace.vertex_ids = mesh.interface_vertices;
    trace.vertex_param = mesh.interface_vertex_param;
    for (double s : trace.vertex_param)
        if (std::isnan(s))
            throw GeometryError("mesh carries no interface parametrization");

    const GaussRule& rule = gauss_legendre(quad_order);
    for (int ei = 0; ei < static_cast<int>(mesh.edges.size()); ++ei) {
        const MeshEdge& e = mesh.edges[ei];
        if (e.kind != EdgeKind::INTERFACE) continue;
        if (e.tri[1] == -1)
            throw GeometryError("interface edge with a single adjacent triangle");
        int t0 = e.tri[0], t1 = e.tri[1];
        bool t0_minus = mesh.triangles[t0].label == Subdomain::MINUS;
        bool t1_minus = mesh.triangles[t1].label == Subdomain::MINUS;
        if (t0_minus == t1_minus)
            throw GeometryError("interface edge does not separate the subdomains");
        int tri_minus = t0_minus ? t0 : t1;
        int tri_plus = t0_minus ? t1 : t0;

        TraceEdge te;
        te.edge_id = ei;
        double sa = mesh.interface_param(e.v0);
        double sb = mesh.interface_param(e.v1);
        int va = e.v0, vb = e.v1;
        if (trace.closed && std::abs(sb - sa) > 0.5 * trace.period) {
            if (sa < sb)
                sa += trace.period;
            else
                sb += trace.period;
        }
        if (sa <= sb) {
            te.v0 = va;
            te.v1 = vb;
            te.s0 = sa;
            te.s1 = sb;
        } else {
            te.v0 = vb;
            te.v1 = va;
            te.s0 = sb;
            te.s1 = sa;
        }
        Vec2 p0 = mesh.vertices[te.v0], p1 = mesh.vertices[te.v1];
        te.s_mid = 0.5 * (te.s0 + te.s1);
        te.mid = 0.5 * (p0 + p1);
        te.length = norm(p1 - p0);
        Vec2 nhat = normalized(perp(p1 - p0));
        double side = dot(nhat, mesh.centroid(tri_plus) - mesh.centroid(tri_minus));
        if (side == 0.0)
            throw GeometryError("mixed normal orientation on interface edge " + std::to_string(ei));
        te.normal = side > 0.0 ? nhat : -1.0 * nhat;

        te.q_param.resize(quad_order);
        te.q_point.resize(quad_order);
        te.q_weight.resize(quad_order);
        for (int q = 0; q < quad_order; ++q) {
            double u = 0.5 * (rule.nodes[q] + 1.0);
            te.q_param[q] = te.s0 + u * (te.s1 - te.s0);
            te.q_point[q] = p0 + u * (p1 - p0);
            te.q_weight[q] = rule.weights[q] * 0.5 * te.length;
        }
        trace.edges.push_back(std::move(te));
    }
    if (trace.edges.empty()) throw GeometryError("mesh has no interface edges");

    std::sort(trace.edges.begin(), trace.edges.end(),
              [](const TraceEdge& a, const TraceEdge& b) { return a.s_mid < b.s_mid; });

    auto share_vertex = [](const TraceEdge& a, const TraceEdge& b) {
        return a.v0 == b.v0 || a.v0 == b.v1 || a.v1 == b.v0 || a.v1 == b.v1;
    };
    for (size_t i = 1; i < trace.edges.size(); ++i)
        if (!share_vertex(trace.edges[i - 1], trace.edges[i]))
            throw GeometryError("interface edges do not form a chain under the parameter order");
    if (trace.closed && trace.edges.size() >= 2 &&
        !share_vertex(trace.edges.back(), trace.edges.front()))
        throw GeometryError("closed interface trace does not close up");

    trace.total_length = 0.0;
    for (const auto& te : trace.edges) trace.total_length += te.length;
    return trace;
}

void write_mesh(const FittedMesh& mesh, std::ostream& out) {
    out << "vertices " << mesh.vertex_count() << " triangles " << mesh.triangle_count()
        << " interface_edges " << mesh.interface_edge_count() << "\n";
    out << std::setprecision(17);
    for (const auto& v : mesh.vertices) out << v.x << " " << v.y << "\n";
    for (const auto& t : mesh.triangles)
        out << t.v[0] << " " << t.v[1] << " " << t.v[2] << " "
            << (t.label == Subdomain::MINUS ? "minus" : "plus") << " " << t.beta << "\n";
    for (size_t ei = 0; ei < mesh.edges.size(); ++ei) {
        const MeshEdge& e = mesh.edges[ei];
        if (e.kind != EdgeKind::INTERFACE) continue;
        double s_mid = 0.5 * (mesh.interface_param(e.v0) + mesh.interface_param(e.v1));
        out << e.v0 << " " << e.v1 << " " << s_mid << "\n";
    }
}

FittedMesh read_mesh(std::istream& in) {
    std::string kw1, kw2, kw3;
    int nv = 0, nt = 0, ne = 0;
    in >> kw1 >> nv >> kw2 >> nt >> kw3 >> ne;
    if (!in || kw1 != "vertices" || kw2 != "triangles" || kw3 != "interface_edges")
        throw GeometryError("mesh import: malformed header");

    std::vector<Vec2> verts(nv);
    for (int i = 0; i < nv; ++i) in >> verts[i].x >> verts[i].y;
    std::vector<Triangle> tris(nt);
    double beta_minus = 1.0, beta_plus = 1.0;
    bool seen_minus = false, seen_plus = false;
    for (int k = 0; k < nt; ++k) {
        std::string label;
        in >> tris[k].v[0] >> tris[k].v[1] >> tris[k].v[2] >> label >> tris[k].beta;
        if (label == "minus") {
            tris[k].label = Subdomain::MINUS;
            beta_minus = tris[k].beta;
            seen_minus = true;
        } else if (label == "plus") {
            tris[k].label = Subdomain::PLUS;
            beta_plus = tris[k].beta;
            seen_plus = true;
        } else {
            throw GeometryError("mesh import: unknown subdomain label '" + label + "'");
        }
    }
    std::vector<std::array<int, 2>> listed(ne);
    for (int i = 0; i < ne; ++i) {
        double s_mid;
        in >> listed[i][0] >> listed[i][1] >> s_mid;
    }
    if (!in) throw GeometryError("mesh import: truncated file");
    (void)seen_minus;
    (void)seen_plus;

    FittedMesh mesh = make_fitted_mesh(std::move(verts), std::move(tris), {}, beta_minus, beta_plus);
    if (mesh.interface_edge_count() != ne)
        throw GeometryError("mesh import: interface edge list inconsistent with labels");
    return mesh;
}

}  // namespace fluxred
