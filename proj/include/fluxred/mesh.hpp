#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fluxred/common.hpp"

namespace fluxred {

enum class Subdomain { MINUS, PLUS };
enum class EdgeKind { INTERIOR, BOUNDARY, INTERFACE };
enum class ParamKind { LINE_X, ANGLE };

struct Triangle {
    std::array<int, 3> v;  // counterclockwise
    Subdomain label;
    double beta;
};

struct MeshEdge {
    int v0, v1;  // v0 < v1
    int tri[2];  // adjacent triangles; tri[1] == -1 on the boundary
    EdgeKind kind;
};

/// Conforming triangulation whose edges align with the interface. Every
/// triangle lies entirely in one subdomain and carries its diffusion
/// coefficient. Interface vertices own two broken degrees of freedom;
/// the minus copy shares the vertex index, the plus copy is appended.
/// Immutable after construction.
struct FittedMesh {
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<MeshEdge> edges;
    std::vector<std::array<int, 3>> tri_edges;  // edge j of triangle = (v[j], v[(j+1)%3])
    std::vector<bool> boundary_vertex;

    std::vector<int> interface_vertices;        // sorted vertex ids on the interface
    std::vector<double> interface_vertex_param; // parameter of each, parallel array
    std::vector<int> plus_dof;                  // per vertex; == vertex id off the interface
    int broken_dof_count = 0;

    double beta_minus = 1.0;
    double beta_plus = 1.0;
    double min_angle_threshold_deg = 15.0;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int interface_edge_count() const;

    bool is_interface_vertex(int v) const { return plus_dof[v] != v; }
    int minus_dof(int v) const { return v; }

    double area(int k) const;
    Vec2 centroid(int k) const;
    double min_angle_deg(int k) const;

    /// Parameter of an interface vertex (binary search over the sorted list).
    double interface_param(int v) const;
};

/// Shared finalization: edge table, classification by triangle labels,
/// broken-dof numbering. `interface_params` maps interface vertex id to its
/// curve parameter. Throws GeometryError on non-conforming input or
/// nonpositive triangle areas.
FittedMesh make_fitted_mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles,
                            const std::vector<std::pair<int, double>>& interface_params,
                            double beta_minus, double beta_plus);

/// Uniform n x n grid of the unit square, cells split along the fixed
/// lower-left to upper-right diagonal; interface on y = 1/2. n must be even.
FittedMesh build_line_mesh(int n, double beta_minus, double beta_plus);

/// Structured mapped mesh for a closed polar interface r(theta) inside the
/// square [-half_width, half_width]^2. The interface polygon passes through
/// r(theta_i)(cos theta_i, sin theta_i) at theta_i = 2 pi i / n_theta; MINUS
/// is the inside. The inner region coarsens its angular resolution toward the
/// central fan and the outer blend grades radially so the triangles stay
/// shape-regular at high n_theta.
FittedMesh build_mapped_mesh(const std::function<double(double)>& radius_fn, int n_theta,
                             int n_radial_in, int n_radial_out, double half_width,
                             double beta_minus, double beta_plus);

struct MeshDiagnostics {
    std::vector<std::string> violations;
    double min_angle_deg = 0.0;
    double min_area = 0.0;
    bool ok() const { return violations.empty(); }
};

/// Diagnostic re-check of all FittedMesh invariants: conformity, label
/// consistency against the stored edge classification, positive areas,
/// the minimum-angle threshold, and per-label beta values.
MeshDiagnostics validate_mesh(const FittedMesh& mesh);

/// One interface edge of the trace, ordered by parameter. The normal points
/// from the MINUS triangle into the PLUS triangle. Quadrature nodes carry
/// arc-length weights on the polygonal interface.
struct TraceEdge {
    int edge_id;
    int v0, v1;        // v0 at parameter s0, v1 at s1, s0 < s1
    double s0, s1, s_mid;
    double length;
    Vec2 mid;
    Vec2 normal;
    std::vector<double> q_param;
    std::vector<Vec2> q_point;
    std::vector<double> q_weight;
};

struct InterfaceTrace {
    ParamKind param;
    bool closed = false;
    double period = 0.0;  // 2 pi for ANGLE
    double total_length = 0.0;
    int quad_points = 0;
    std::vector<TraceEdge> edges;
    std::vector<int> vertex_ids;      // sorted
    std::vector<double> vertex_param; // parallel

    double param_of_vertex(int v) const;
};

InterfaceTrace extract_interface(const FittedMesh& mesh, ParamKind param_kind, int quad_order);

/// Plain-text export: header `vertices <V> triangles <T> interface_edges <E>`,
/// then `x y` per vertex, `i j k label beta` per triangle, `i j s_mid` per
/// interface edge. Full round-trip decimal precision.
void write_mesh(const FittedMesh& mesh, std::ostream& out);

/// Re-reads the export format (used for round-trip validation).
FittedMesh read_mesh(std::istream& in);

/// True if the closed polygon has no self-intersections.
bool polygon_is_simple(const std::vector<Vec2>& poly);

}  // namespace fluxred
