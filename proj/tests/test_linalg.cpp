#include <doctest.h>

#include <cmath>
#include <random>

#include "fluxred/linalg.hpp"

using namespace fluxred;

TEST_CASE("from_triplets assembles and sums duplicates") {
    SparseSymMatrix A = SparseSymMatrix::from_triplets(
        2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
    CHECK(A.dim() == 2);
    CHECK(A.coeff(0, 0) == 2.0);
    CHECK(A.coeff(0, 1) == 1.0);
    CHECK(A.coeff(1, 0) == 1.0);
    CHECK(A.coeff(1, 1) == 2.0);

    SparseSymMatrix B = SparseSymMatrix::from_triplets(1, {{0, 0, 1.0}, {0, 0, 1.0}});
    CHECK(B.coeff(0, 0) == 2.0);
}

TEST_CASE("from_triplets rejects bad input") {
    CHECK_THROWS_AS(SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}}), AssemblyError);
    CHECK_THROWS_AS(SparseSymMatrix::from_triplets(2, {{0, 2, 1.0}}), AssemblyError);
    CHECK_THROWS_AS(SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.5}}), AssemblyError);
}

TEST_CASE("solve_spd basic cases") {
    SparseSymMatrix I = SparseSymMatrix::from_triplets(3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
    std::vector<double> b{3.0, -1.0, 0.5};
    auto x = solve_spd(I, b);
    for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-15));

    SparseSymMatrix A = SparseSymMatrix::from_triplets(
        2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
    auto y = solve_spd(A, {3.0, 3.0});
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("solve_spd rejects indefinite matrices") {
    SparseSymMatrix A = SparseSymMatrix::from_triplets(
        2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 1.0}});
    CHECK_THROWS_AS(solve_spd(A, {1.0, 1.0}), DefinitenessError);
}

namespace {

SparseSymMatrix random_spd(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<std::vector<double>> M(n, std::vector<double>(n));
    for (auto& row : M)
        for (auto& v : row) v = unit(rng);
    std::vector<Triplet> ts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = i == j ? 1.0 : 0.0;
            for (int k = 0; k < n; ++k) v += M[k][i] * M[k][j];
            ts.push_back({i, j, v});
        }
    return SparseSymMatrix::from_triplets(n, ts);
}

// Grid Laplacian with seeded positive diagonal shifts: sparse SPD of dim nx*nx.
SparseSymMatrix grid_spd(int nx, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> shift(0.1, 1.1);
    std::vector<Triplet> ts;
    auto id = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
            ts.push_back({id(i, j), id(i, j), 4.0 + shift(rng)});
            if (i + 1 < nx) {
                ts.push_back({id(i, j), id(i + 1, j), -1.0});
                ts.push_back({id(i + 1, j), id(i, j), -1.0});
            }
            if (j + 1 < nx) {
                ts.push_back({id(i, j), id(i, j + 1), -1.0});
                ts.push_back({id(i, j + 1), id(i, j), -1.0});
            }
        }
    return SparseSymMatrix::from_triplets(nx * nx, ts);
}

double rel_residual(const SparseSymMatrix& A, const std::vector<double>& x,
                    const std::vector<double>& b) {
    auto Ax = A.multiply(x);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < b.size(); ++i) {
        num += (Ax[i] - b[i]) * (Ax[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("random SPD dim 50: residual contract verified post hoc") {
    SparseSymMatrix A = random_spd(50, 914);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> b(50);
    for (auto& v : b) v = unit(rng);
    auto x = solve_spd(A, b);
    CHECK(rel_residual(A, x, b) <= 1e-13);
}

TEST_CASE("solve recovers x from A*x up to dim 10^4") {
    for (int nx : {10, 40, 100}) {
        SparseSymMatrix A = grid_spd(nx, 1000 + nx);
        std::mt19937 rng(55);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<double> x_ref(nx * nx);
        for (auto& v : x_ref) v = unit(rng);
        auto b = A.multiply(x_ref);
        auto x = solve_spd(A, b);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            num += (x[i] - x_ref[i]) * (x[i] - x_ref[i]);
            den += x_ref[i] * x_ref[i];
        }
        CHECK(std::sqrt(num / den) <= 1e-12);
    }
}

TEST_CASE("factor once, solve many: bitwise identical") {
    SparseSymMatrix A = grid_spd(30, 3);
    SpdFactorization factor(A);
    std::vector<double> b(900);
    for (size_t i = 0; i < b.size(); ++i) b[i] = std::sin(0.1 * i);
    auto x1 = factor.solve(b);
    auto x2 = factor.solve(b);
    for (size_t i = 0; i < x1.size(); ++i) CHECK(x1[i] == x2[i]);
}

TEST_CASE("zero right-hand side gives the zero solution") {
    SparseSymMatrix A = grid_spd(5, 11);
    auto x = solve_spd(A, std::vector<double>(25, 0.0));
    for (double v : x) CHECK(v == 0.0);
}
