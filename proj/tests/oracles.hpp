// Test-only oracles, independent of the library's quadrature and projection
// paths: composite Gauss integration with a hardcoded 12-point rule and a
// dense normal-equations projection solved by Gaussian elimination.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

inline double integrate(const Fn& f, double lo, double hi, int panels = 200) {
    static const double xs[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                                 0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
    static const double ws[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
    double total = 0.0;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * h;
        double c = a + 0.5 * h;
        double sum = 0.0;
        for (int i = 0; i < 6; ++i)
            sum += ws[i] * (f(c + 0.5 * h * xs[i]) + f(c - 0.5 * h * xs[i]));
        total += 0.5 * h * sum;
    }
    return total;
}

inline std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        if (A[k][k] == 0.0) throw std::runtime_error("oracle: singular Gram matrix");
        for (int i = k + 1; i < n; ++i) {
            double f = A[i][k] / A[k][k];
            for (int j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

/// Relative L2 error of the best approximation of g in span{basis} on [lo, hi].
inline double projection_rel_error(const Fn& g, const std::vector<Fn>& basis, double lo,
                                   double hi) {
    const int m = static_cast<int>(basis.size());
    std::vector<std::vector<double>> G(m, std::vector<double>(m));
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            G[i][j] = G[j][i] =
                integrate([&](double s) { return basis[i](s) * basis[j](s); }, lo, hi);
        }
        rhs[i] = integrate([&](double s) { return g(s) * basis[i](s); }, lo, hi);
    }
    double g2 = integrate([&](double s) { return g(s) * g(s); }, lo, hi);
    std::vector<double> c = solve_dense(G, rhs);
    double captured = 0.0;
    for (int i = 0; i < m; ++i) captured += c[i] * rhs[i];
    double err2 = std::max(0.0, g2 - captured);
    return g2 > 0.0 ? std::sqrt(err2 / g2) : 0.0;
}

}  // namespace oracle
