#pragma once

#include <memory>
#include <vector>

#include "fluxred/common.hpp"

namespace fluxred {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Sparse symmetric matrix in compressed row form. Built from (row, col, value)
/// triplets with duplicate summation; symmetry is verified entrywise at
/// construction (1e-14 relative on every stored pair).
class SparseSymMatrix {
public:
    static SparseSymMatrix from_triplets(int dim, const std::vector<Triplet>& triplets);

    int dim() const { return dim_; }
    int nnz() const { return static_cast<int>(values_.size()); }

    /// Stored value at (i, j), 0 if the entry is absent.
    double coeff(int i, int j) const;

    std::vector<double> multiply(const std::vector<double>& x) const;

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& cols() const { return cols_; }
    const std::vector<double>& values() const { return values_; }

private:
    int dim_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> cols_;
    std::vector<double> values_;
};

/// Sparse Cholesky-type factorization of an SPD matrix. Immutable after
/// construction; concurrent solves against one factorization are permitted.
/// Every solve verifies the residual contract ||Ax-b||/||b|| <= 1e-13.
class SpdFactorization {
public:
    explicit SpdFactorization(const SparseSymMatrix& A);
    ~SpdFactorization();
    SpdFactorization(SpdFactorization&&) noexcept;
    SpdFactorization& operator=(SpdFactorization&&) noexcept;
    SpdFactorization(const SpdFactorization&) = delete;
    SpdFactorization& operator=(const SpdFactorization&) = delete;

    std::vector<double> solve(const std::vector<double>& b) const;
    int dim() const;

    static constexpr double kResidualBound = 1e-13;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot factorize-and-solve.
std::vector<double> solve_spd(const SparseSymMatrix& A, const std::vector<double>& b);

double norm2(const std::vector<double>& v);

}  // namespace fluxred
