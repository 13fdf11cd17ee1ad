#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dropmg {

using Index = std::int64_t;
using DenseVector = std::vector<double>;

struct Triplet {
    Index row = 0;
    Index col = 0;
    double value = 0.0;
};

/// Compressed sparse row matrix with sorted, unique column indices per row.
/// Instances are immutable after construction and safe for concurrent reads.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Takes ownership of fully formed CSR arrays and validates them.
    SparseMatrix(Index nRows, Index nCols, std::vector<Index> rowOffsets,
                 std::vector<Index> colIndices, std::vector<double> values);

    /// Builds from an unordered triplet list. Duplicate (row, col) entries are
    /// summed in insertion order.
    static SparseMatrix fromTriplets(Index nRows, Index nCols, std::vector<Triplet> triplets);

    static SparseMatrix identity(Index n);
    static SparseMatrix diagonal(const DenseVector& d);

    Index nRows() const { return nRows_; }
    Index nCols() const { return nCols_; }
    Index nnz() const { return static_cast<Index>(values_.size()); }

    const std::vector<Index>& rowOffsets() const { return rowOffsets_; }
    const std::vector<Index>& colIndices() const { return colIndices_; }
    const std::vector<double>& values() const { return values_; }

    std::span<const Index> rowCols(Index i) const {
        return {colIndices_.data() + rowOffsets_[i],
                static_cast<std::size_t>(rowOffsets_[i + 1] - rowOffsets_[i])};
    }
    std::span<const double> rowVals(Index i) const {
        return {values_.data() + rowOffsets_[i],
                static_cast<std::size_t>(rowOffsets_[i + 1] - rowOffsets_[i])};
    }

    /// Stored value at (i, j), or 0 when the entry is not present.
    double at(Index i, Index j) const;

    /// Throws std::logic_error when a CSR invariant is violated.
    void checkInvariants() const;

private:
    Index nRows_ = 0;
    Index nCols_ = 0;
    std::vector<Index> rowOffsets_{0};
    std::vector<Index> colIndices_;
    std::vector<double> values_;
};

DenseVector spmv(const SparseMatrix& A, const DenseVector& x);
void spmv(const SparseMatrix& A, const DenseVector& x, DenseVector& y);

/// y = b - A x
void residual(const SparseMatrix& A, const DenseVector& b, const DenseVector& x, DenseVector& y);

SparseMatrix transpose(const SparseMatrix& A);

SparseMatrix multiply(const SparseMatrix& A, const SparseMatrix& B);

/// A + beta * B; both operands must share dimensions.
SparseMatrix add(const SparseMatrix& A, const SparseMatrix& B, double beta = 1.0);

/// Scales row i of A by s[i].
SparseMatrix rowScale(const SparseMatrix& A, const DenseVector& s);

/// Galerkin projection P^T A P.
SparseMatrix galerkinTripleProduct(const SparseMatrix& P, const SparseMatrix& A);

/// Extracts A(rows, cols) where colMap[j] >= 0 gives the new column index of j
/// and -1 marks a dropped column.
SparseMatrix submatrix(const SparseMatrix& A, std::span<const Index> rows,
                       std::span<const Index> colMap, Index nColsNew);

/// Missing structural diagonal entries are reported as 0.
DenseVector diagOf(const SparseMatrix& A);
DenseVector rowSums(const SparseMatrix& A);

/// Signed Rayleigh-quotient estimate of the dominant eigenvalue of
/// diag(d)^{-1} A after a fixed number of power sweeps with a seeded start
/// vector. Negative estimates are returned as-is.
double signedDominantEig(const DenseVector& d, const SparseMatrix& A, int sweeps = 15,
                         std::uint64_t seed = 42);

/// Dense LU factorization with partial pivoting, for coarsest-level solves.
class DenseLu {
public:
    DenseLu() = default;
    explicit DenseLu(const SparseMatrix& A, Index cap = 5000);

    DenseVector solve(const DenseVector& b) const;
    Index size() const { return n_; }
    bool empty() const { return n_ == 0; }

private:
    Index n_ = 0;
    std::vector<double> lu_;  // row-major
    std::vector<Index> perm_;
};

DenseVector denseLuSolve(const SparseMatrix& A, const DenseVector& b, Index cap = 5000);

// Small dense-vector helpers shared by the solvers.
double dot(const DenseVector& a, const DenseVector& b);
double norm2(const DenseVector& a);
void axpy(double alpha, const DenseVector& x, DenseVector& y);  // y += alpha x
void scale(DenseVector& x, double alpha);

/// Deterministic linear congruential generator used wherever a seeded start
/// vector or right-hand side is required.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform in [-1, 1).
    double uniform() {
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }

private:
    std::uint64_t state_;
};

DenseVector randomVector(Index n, std::uint64_t seed);

}  // namespace dropmg
