#include "fluxred/linalg.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

namespace fluxred {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

SparseSymMatrix SparseSymMatrix::from_triplets(int dim, const std::vector<Triplet>& triplets) {
    if (dim < 0) throw AssemblyError("from_triplets: negative dimension");
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim)
            throw AssemblyError("from_triplets: index (" + std::to_string(t.row) + "," +
                                std::to_string(t.col) + ") out of range for dim " +
                                std::to_string(dim));
    }

    // Sort by (row, col) and sum duplicates.
    std::vector<Triplet> sorted = triplets;
    std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseSymMatrix m;
    m.dim_ = dim;
    m.row_ptr_.assign(dim + 1, 0);
    for (size_t i = 0; i < sorted.size();) {
        size_t j = i;
        double sum = 0.0;
        while (j < sorted.size() && sorted[j].row == sorted[i].row && sorted[j].col == sorted[i].col) {
            sum += sorted[j].value;
            ++j;
        }
        m.cols_.push_back(sorted[i].col);
        m.values_.push_back(sum);
        m.row_ptr_[sorted[i].row + 1]++;
        i = j;
    }
    for (int r = 0; r < dim; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];

    // Symmetry: every stored off-diagonal entry needs a matching transpose entry.
    for (int r = 0; r < dim; ++r) {
        for (int k = m.row_ptr_[r]; k < m.row_ptr_[r + 1]; ++k) {
            int c = m.cols_[k];
            if (c == r) continue;
            double v = m.values_[k];
            double vt = m.coeff(c, r);
            bool present = false;
            for (int kk = m.row_ptr_[c]; kk < m.row_ptr_[c + 1]; ++kk)
                if (m.cols_[kk] == r) present = true;
            if (!present)
                throw AssemblyError("from_triplets: entry (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") has no transpose partner");
            double scale = std::max(std::abs(v), std::abs(vt));
            if (std::abs(v - vt) > 1e-14 * scale)
                throw AssemblyError("from_triplets: asymmetry at (" + std::to_string(r) + "," +
                                    std::to_string(c) + ")");
        }
    }
    return m;
}

double SparseSymMatrix::coeff(int i, int j) const {
    auto lo = cols_.begin() + row_ptr_[i];
    auto hi = cols_.begin() + row_ptr_[i + 1];
    auto it = std::lower_bound(lo, hi, j);
    if (it == hi || *it != j) return 0.0;
    return values_[it - cols_.begin()];
}

std::vector<double> SparseSymMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(dim_, 0.0);
    for (int r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[cols_[k]];
        y[r] = s;
    }
    return y;
}

struct SpdFactorization::Impl {
    Eigen::SparseMatrix<double> A;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

SpdFactorization::SpdFactorization(const SparseSymMatrix& A) : impl_(std::make_unique<Impl>()) {
    const int n = A.dim();
    std::vector<Eigen::Triplet<double>> ts;
    ts.reserve(A.nnz());
    for (int r = 0; r < n; ++r)
        for (int k = A.row_ptr()[r]; k < A.row_ptr()[r + 1]; ++k)
            ts.emplace_back(r, A.cols()[k], A.values()[k]);
    impl_->A.resize(n, n);
    impl_->A.setFromTriplets(ts.begin(), ts.end());
    impl_->ldlt.compute(impl_->A);
    if (impl_->ldlt.info() != Eigen::Success)
        throw DefinitenessError("factorization failed (matrix not SPD?)");
    const auto& D = impl_->ldlt.vectorD();
    for (int i = 0; i < D.size(); ++i)
        if (!(D[i] > 0.0)) throw DefinitenessError("non-positive pivot at index " + std::to_string(i));
}

SpdFactorization::~SpdFactorization() = default;
SpdFactorization::SpdFactorization(SpdFactorization&&) noexcept = default;
SpdFactorization& SpdFactorization::operator=(SpdFactorization&&) noexcept = default;

int SpdFactorization::dim() const { return static_cast<int>(impl_->A.rows()); }

std::vector<double> SpdFactorization::solve(const std::vector<double>& b) const {
    const int n = dim();
    if (static_cast<int>(b.size()) != n) throw SolverFailure("solve: dimension mismatch");
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), n);
    const double bnorm = bv.norm();
    if (bnorm == 0.0) return std::vector<double>(n, 0.0);

    Eigen::VectorXd x = impl_->ldlt.solve(bv);
    double resid = (impl_->A * x - bv).norm() / bnorm;
    if (resid > 1e-14) {
        // One step of iterative refinement before giving up on the contract.
        Eigen::VectorXd r = bv - impl_->A * x;
        x += impl_->ldlt.solve(r);
        resid = (impl_->A * x - bv).norm() / bnorm;
    }
    if (!(resid <= kResidualBound))
        throw SolverFailure("residual contract violated: rel residual " + std::to_string(resid));
    return std::vector<double>(x.data(), x.data() + n);
}

std::vector<double> solve_spd(const SparseSymMatrix& A, const std::vector<double>& b) {
    return SpdFactorization(A).solve(b);
}

}  // namespace fluxred
