#pragma once

#include <array>
#include <vector>

#include "fluxred/common.hpp"

namespace fluxred {

/// Gauss-Legendre rule on [-1, 1] with n points (exact through degree 2n-1).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Quadrature point on a triangle in barycentric coordinates; weights sum to 1
/// and are multiplied by the triangle area on use.
struct TrianglePoint {
    std::array<double, 3> bary;
    double weight;
};

/// 7-point rule, exact for polynomials of total degree 5.
const std::array<TrianglePoint, 7>& triangle_rule_deg5();

}  // namespace fluxred
