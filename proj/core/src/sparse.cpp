#include "dropmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dropmg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

SparseMatrix::SparseMatrix(Index nRows, Index nCols, std::vector<Index> rowOffsets,
                           std::vector<Index> colIndices, std::vector<double> values)
    : nRows_(nRows),
      nCols_(nCols),
      rowOffsets_(std::move(rowOffsets)),
      colIndices_(std::move(colIndices)),
      values_(std::move(values)) {
    checkInvariants();
}

SparseMatrix SparseMatrix::fromTriplets(Index nRows, Index nCols, std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= nRows || t.col < 0 || t.col >= nCols)
            fail("fromTriplets: entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                 ") outside " + std::to_string(nRows) + "x" + std::to_string(nCols));
    }
    // Stable sort keeps insertion order within duplicates so the merge sum is
    // deterministic.
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    std::vector<Index> offsets(static_cast<std::size_t>(nRows) + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    cols.reserve(triplets.size());
    vals.reserve(triplets.size());

    std::size_t k = 0;
    for (Index i = 0; i < nRows; ++i) {
        while (k < triplets.size() && triplets[k].row == i) {
            Index col = triplets[k].col;
            double sum = triplets[k].value;
            ++k;
            while (k < triplets.size() && triplets[k].row == i && triplets[k].col == col) {
                sum += triplets[k].value;
                ++k;
            }
            cols.push_back(col);
            vals.push_back(sum);
        }
        offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(cols.size());
    }
    return SparseMatrix(nRows, nCols, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::identity(Index n) {
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
    std::vector<Index> cols(static_cast<std::size_t>(n));
    std::vector<double> vals(static_cast<std::size_t>(n), 1.0);
    for (Index i = 0; i <= n; ++i) offsets[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = i;
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::diagonal(const DenseVector& d) {
    Index n = static_cast<Index>(d.size());
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1);
    std::vector<Index> cols(static_cast<std::size_t>(n));
    for (Index i = 0; i <= n; ++i) offsets[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = i;
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), d);
}

double SparseMatrix::at(Index i, Index j) const {
    auto cols = rowCols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(rowOffsets_[i] + (it - cols.begin()))];
}

void SparseMatrix::checkInvariants() const {
    if (nRows_ < 0 || nCols_ < 0) throw std::logic_error("SparseMatrix: negative dimension");
    if (rowOffsets_.size() != static_cast<std::size_t>(nRows_) + 1)
        throw std::logic_error("SparseMatrix: rowOffsets length != nRows + 1");
    if (rowOffsets_.front() != 0 ||
        rowOffsets_.back() != static_cast<Index>(values_.size()) ||
        colIndices_.size() != values_.size())
        throw std::logic_error("SparseMatrix: offset/array size mismatch");
    for (Index i = 0; i < nRows_; ++i) {
        if (rowOffsets_[i] > rowOffsets_[i + 1])
            throw std::logic_error("SparseMatrix: rowOffsets decrease at row " + std::to_string(i));
        for (Index p = rowOffsets_[i]; p < rowOffsets_[i + 1]; ++p) {
            Index c = colIndices_[static_cast<std::size_t>(p)];
            if (c < 0 || c >= nCols_)
                throw std::logic_error("SparseMatrix: column out of range in row " + std::to_string(i));
            if (p > rowOffsets_[i] && colIndices_[static_cast<std::size_t>(p - 1)] >= c)
                throw std::logic_error("SparseMatrix: columns not strictly increasing in row " +
                                       std::to_string(i));
            if (std::isnan(values_[static_cast<std::size_t>(p)]))
                throw std::logic_error("SparseMatrix: NaN stored in row " + std::to_string(i));
        }
    }
}

DenseVector spmv(const SparseMatrix& A, const DenseVector& x) {
    DenseVector y(static_cast<std::size_t>(A.nRows()));
    spmv(A, x, y);
    return y;
}

void spmv(const SparseMatrix& A, const DenseVector& x, DenseVector& y) {
    if (static_cast<Index>(x.size()) != A.nCols())
        fail("spmv: vector length " + std::to_string(x.size()) + " != nCols " +
             std::to_string(A.nCols()));
    y.resize(static_cast<std::size_t>(A.nRows()));
    const auto& off = A.rowOffsets();
    const auto& col = A.colIndices();
    const auto& val = A.values();
    for (Index i = 0; i < A.nRows(); ++i) {
        double s = 0.0;
        for (Index p = off[i]; p < off[i + 1]; ++p)
            s += val[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(col[static_cast<std::size_t>(p)])];
        y[static_cast<std::size_t>(i)] = s;
    }
}

void residual(const SparseMatrix& A, const DenseVector& b, const DenseVector& x, DenseVector& y) {
    spmv(A, x, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = b[i] - y[i];
}

SparseMatrix transpose(const SparseMatrix& A) {
    const Index m = A.nRows(), n = A.nCols();
    std::vector<Index> offsets(static_cast<std::size_t>(n) + 1, 0);
    for (Index c : A.colIndices()) ++offsets[static_cast<std::size_t>(c) + 1];
    for (Index j = 0; j < n; ++j) offsets[static_cast<std::size_t>(j) + 1] += offsets[static_cast<std::size_t>(j)];

    std::vector<Index> cols(static_cast<std::size_t>(A.nnz()));
    std::vector<double> vals(static_cast<std::size_t>(A.nnz()));
    std::vector<Index> cursor(offsets.begin(), offsets.end() - 1);
    const auto& off = A.rowOffsets();
    for (Index i = 0; i < m; ++i) {
        for (Index p = off[i]; p < off[i + 1]; ++p) {
            Index j = A.colIndices()[static_cast<std::size_t>(p)];
            Index dst = cursor[static_cast<std::size_t>(j)]++;
            cols[static_cast<std::size_t>(dst)] = i;  // rows arrive in increasing order
            vals[static_cast<std::size_t>(dst)] = A.values()[static_cast<std::size_t>(p)];
        }
    }
    return SparseMatrix(n, m, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix multiply(const SparseMatrix& A, const SparseMatrix& B) {
    if (A.nCols() != B.nRows())
        fail("multiply: inner dimensions " + std::to_string(A.nCols()) + " and " +
             std::to_string(B.nRows()) + " differ");
    const Index m = A.nRows(), n = B.nCols();

    std::vector<Index> marker(static_cast<std::size_t>(n), -1);
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    std::vector<Index> offsets(static_cast<std::size_t>(m) + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    std::vector<Index> rowList;

    for (Index i = 0; i < m; ++i) {
        rowList.clear();
        for (Index p = A.rowOffsets()[i]; p < A.rowOffsets()[i + 1]; ++p) {
            Index k = A.colIndices()[static_cast<std::size_t>(p)];
            double av = A.values()[static_cast<std::size_t>(p)];
            for (Index q = B.rowOffsets()[k]; q < B.rowOffsets()[k + 1]; ++q) {
                Index j = B.colIndices()[static_cast<std::size_t>(q)];
                double bv = B.values()[static_cast<std::size_t>(q)];
                if (marker[static_cast<std::size_t>(j)] != i) {
                    marker[static_cast<std::size_t>(j)] = i;
                    acc[static_cast<std::size_t>(j)] = av * bv;
                    rowList.push_back(j);
                } else {
                    acc[static_cast<std::size_t>(j)] += av * bv;
                }
            }
        }
        std::sort(rowList.begin(), rowList.end());
        for (Index j : rowList) {
            cols.push_back(j);
            vals.push_back(acc[static_cast<std::size_t>(j)]);
        }
        offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(cols.size());
    }
    return SparseMatrix(m, n, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix add(const SparseMatrix& A, const SparseMatrix& B, double beta) {
    if (A.nRows() != B.nRows() || A.nCols() != B.nCols()) fail("add: dimension mismatch");
    const Index m = A.nRows();
    std::vector<Index> offsets(static_cast<std::size_t>(m) + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    cols.reserve(static_cast<std::size_t>(A.nnz() + B.nnz()));
    vals.reserve(static_cast<std::size_t>(A.nnz() + B.nnz()));

    for (Index i = 0; i < m; ++i) {
        auto ac = A.rowCols(i);
        auto av = A.rowVals(i);
        auto bc = B.rowCols(i);
        auto bv = B.rowVals(i);
        std::size_t pa = 0, pb = 0;
        while (pa < ac.size() || pb < bc.size()) {
            if (pb == bc.size() || (pa < ac.size() && ac[pa] < bc[pb])) {
                cols.push_back(ac[pa]);
                vals.push_back(av[pa]);
                ++pa;
            } else if (pa == ac.size() || bc[pb] < ac[pa]) {
                cols.push_back(bc[pb]);
                vals.push_back(beta * bv[pb]);
                ++pb;
            } else {
                cols.push_back(ac[pa]);
                vals.push_back(av[pa] + beta * bv[pb]);
                ++pa;
                ++pb;
            }
        }
        offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(cols.size());
    }
    return SparseMatrix(m, A.nCols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix rowScale(const SparseMatrix& A, const DenseVector& s) {
    if (static_cast<Index>(s.size()) != A.nRows()) fail("rowScale: scale length mismatch");
    std::vector<double> vals = A.values();
    for (Index i = 0; i < A.nRows(); ++i)
        for (Index p = A.rowOffsets()[i]; p < A.rowOffsets()[i + 1]; ++p)
            vals[static_cast<std::size_t>(p)] *= s[static_cast<std::size_t>(i)];
    std::vector<Index> offsets = A.rowOffsets();
    std::vector<Index> cols = A.colIndices();
    return SparseMatrix(A.nRows(), A.nCols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix galerkinTripleProduct(const SparseMatrix& P, const SparseMatrix& A) {
    if (P.nRows() != A.nRows() || A.nRows() != A.nCols())
        fail("galerkinTripleProduct: require nRows(P) == nRows(A) == nCols(A)");
    SparseMatrix R = transpose(P);
    SparseMatrix AP = multiply(A, P);
    return multiply(R, AP);
}

SparseMatrix submatrix(const SparseMatrix& A, std::span<const Index> rows,
                       std::span<const Index> colMap, Index nColsNew) {
    if (static_cast<Index>(colMap.size()) != A.nCols()) fail("submatrix: colMap length mismatch");
    std::vector<Index> offsets(rows.size() + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Index i = rows[r];
        auto rc = A.rowCols(i);
        auto rv = A.rowVals(i);
        for (std::size_t p = 0; p < rc.size(); ++p) {
            Index jNew = colMap[static_cast<std::size_t>(rc[p])];
            if (jNew >= 0) {
                cols.push_back(jNew);
                vals.push_back(rv[p]);
            }
        }
        offsets[r + 1] = static_cast<Index>(cols.size());
    }
    return SparseMatrix(static_cast<Index>(rows.size()), nColsNew, std::move(offsets),
                        std::move(cols), std::move(vals));
}

DenseVector diagOf(const SparseMatrix& A) {
    if (A.nRows() != A.nCols()) fail("diagOf: matrix not square");
    DenseVector d(static_cast<std::size_t>(A.nRows()), 0.0);
    for (Index i = 0; i < A.nRows(); ++i) d[static_cast<std::size_t>(i)] = A.at(i, i);
    return d;
}

DenseVector rowSums(const SparseMatrix& A) {
    DenseVector s(static_cast<std::size_t>(A.nRows()), 0.0);
    for (Index i = 0; i < A.nRows(); ++i) {
        double acc = 0.0;
        for (double v : A.rowVals(i)) acc += v;
        s[static_cast<std::size_t>(i)] = acc;
    }
    return s;
}

double signedDominantEig(const DenseVector& d, const SparseMatrix& A, int sweeps,
                         std::uint64_t seed) {
    if (static_cast<Index>(d.size()) != A.nRows() || A.nRows() != A.nCols())
        fail("signedDominantEig: dimension mismatch");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == 0.0)
            throw std::runtime_error("signedDominantEig: zero diagonal entry in row " +
                                     std::to_string(i));

    DenseVector v = randomVector(A.nRows(), seed);
    double nv = norm2(v);
    if (nv == 0.0) return 0.0;
    scale(v, 1.0 / nv);

    DenseVector w(v.size());
    double estimate = 0.0;
    for (int it = 0; it < sweeps; ++it) {
        spmv(A, v, w);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] /= d[i];
        double vw = dot(v, w);
        double vv = dot(v, v);
        estimate = vw / vv;
        double nw = norm2(w);
        if (nw == 0.0) return 0.0;  // operator annihilated the iterate
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
    }
    return estimate;
}

DenseLu::DenseLu(const SparseMatrix& A, Index cap) {
    if (A.nRows() != A.nCols()) fail("DenseLu: matrix not square");
    if (A.nRows() > cap)
        fail("DenseLu: " + std::to_string(A.nRows()) + " rows exceeds cap " + std::to_string(cap));
    n_ = A.nRows();
    lu_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
    perm_.resize(static_cast<std::size_t>(n_));
    for (Index i = 0; i < n_; ++i) {
        auto rc = A.rowCols(i);
        auto rv = A.rowVals(i);
        for (std::size_t p = 0; p < rc.size(); ++p)
            lu_[static_cast<std::size_t>(i * n_ + rc[p])] = rv[p];
    }

    double maxAbs = 0.0;
    for (double v : A.values()) maxAbs = std::max(maxAbs, std::abs(v));
    const double tiny = 1e-14 * maxAbs;

    for (Index k = 0; k < n_; ++k) {
        Index piv = k;
        double best = std::abs(lu_[static_cast<std::size_t>(k * n_ + k)]);
        for (Index i = k + 1; i < n_; ++i) {
            double a = std::abs(lu_[static_cast<std::size_t>(i * n_ + k)]);
            if (a > best) {
                best = a;
                piv = i;
            }
        }
        if (best <= tiny)
            throw std::runtime_error("DenseLu: singular pivot at column " + std::to_string(k));
        perm_[static_cast<std::size_t>(k)] = piv;
        if (piv != k)
            for (Index j = 0; j < n_; ++j)
                std::swap(lu_[static_cast<std::size_t>(k * n_ + j)],
                          lu_[static_cast<std::size_t>(piv * n_ + j)]);
        const double dkk = lu_[static_cast<std::size_t>(k * n_ + k)];
        for (Index i = k + 1; i < n_; ++i) {
            double f = lu_[static_cast<std::size_t>(i * n_ + k)] / dkk;
            lu_[static_cast<std::size_t>(i * n_ + k)] = f;
            if (f != 0.0)
                for (Index j = k + 1; j < n_; ++j)
                    lu_[static_cast<std::size_t>(i * n_ + j)] -=
                        f * lu_[static_cast<std::size_t>(k * n_ + j)];
        }
    }
}

DenseVector DenseLu::solve(const DenseVector& b) const {
    if (static_cast<Index>(b.size()) != n_) fail("DenseLu::solve: length mismatch");
    DenseVector x = b;
    for (Index k = 0; k < n_; ++k) {
        Index piv = perm_[static_cast<std::size_t>(k)];
        if (piv != k) std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(piv)]);
        // forward substitution applied incrementally
        for (Index i = k + 1; i < n_; ++i)
            x[static_cast<std::size_t>(i)] -=
                lu_[static_cast<std::size_t>(i * n_ + k)] * x[static_cast<std::size_t>(k)];
    }
    for (Index i = n_ - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < n_; ++j)
            s -= lu_[static_cast<std::size_t>(i * n_ + j)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / lu_[static_cast<std::size_t>(i * n_ + i)];
    }
    return x;
}

DenseVector denseLuSolve(const SparseMatrix& A, const DenseVector& b, Index cap) {
    return DenseLu(A, cap).solve(b);
}

double dot(const DenseVector& a, const DenseVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const DenseVector& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const DenseVector& x, DenseVector& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(DenseVector& x, double alpha) {
    for (double& v : x) v *= alpha;
}

DenseVector randomVector(Index n, std::uint64_t seed) {
    Lcg64 rng(seed);
    DenseVector v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.uniform();
    return v;
}

}  // namespace dropmg
