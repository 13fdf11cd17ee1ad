#include "dropmg/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace dropmg {

Index Hierarchy::totalFlaggedRows() const {
    Index n = 0;
    for (const Level& l : levels) n += l.flaggedRows;
    return n;
}

void Hierarchy::writeSummary(std::ostream& os, bool csv) const {
    if (csv) {
        os << "level,rows,nnz,aggregates,omega,rhoHat,flaggedRows\n";
        for (std::size_t l = 0; l < levels.size(); ++l)
            os << l << "," << levels[l].A.nRows() << "," << levels[l].A.nnz() << ","
               << levels[l].nAggregates << "," << levels[l].omega << "," << levels[l].rhoHat << ","
               << levels[l].flaggedRows << "\n";
        return;
    }
    os << "levels: " << levels.size() << "  operator complexity: " << operatorComplexity << "\n";
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const Level& lev = levels[l];
        os << "  level " << l << ": rows " << lev.A.nRows() << ", nnz " << lev.A.nnz();
        if (lev.nAggregates > 0)
            os << ", aggregates " << lev.nAggregates << ", omega " << lev.omega << ", rhoHat "
               << lev.rhoHat << ", flagged " << lev.flaggedRows;
        os << "\n";
    }
    if (!stopReason.empty()) os << "  stop: " << stopReason << "\n";
}

std::pair<SparseMatrix, double> smoothProlongator(const FilteredMatrix& filtered,
                                                  const SparseMatrix& Pt, double* rhoHatOut) {
    const SparseMatrix& At = filtered.tildeA;
    DenseVector d = diagOf(At);
    std::string zeroRows;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0) {
            if (!zeroRows.empty()) zeroRows += ", ";
            zeroRows += std::to_string(i);
            if (zeroRows.size() > 200) break;
        }
    }
    if (!zeroRows.empty())
        throw std::runtime_error("smoothProlongator: zero filtered diagonal in rows " + zeroRows);

    const double rhoHat = signedDominantEig(d, At);
    if (rhoHatOut) *rhoHatOut = rhoHat;
    if (rhoHat <= 0.0)
        std::cerr << "smoothProlongator: negative eigenvalue estimate " << rhoHat
                  << ", using it unclamped\n";
    const double omega = 4.0 / (3.0 * rhoHat);

    DenseVector rowFactor(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) rowFactor[i] = omega / d[i];
    SparseMatrix smoothed = add(Pt, multiply(rowScale(At, rowFactor), Pt), -1.0);
    return {std::move(smoothed), omega};
}

std::vector<std::array<double, 3>> coarseCoordinates(
    const Aggregation& agg, const std::vector<std::array<double, 3>>& coords) {
    if (static_cast<Index>(coords.size()) != agg.nFine)
        throw std::invalid_argument("coarseCoordinates: coordinate count mismatch");
    std::vector<std::array<double, 3>> out(static_cast<std::size_t>(agg.nAggregates),
                                           {0.0, 0.0, 0.0});
    std::vector<Index> count(static_cast<std::size_t>(agg.nAggregates), 0);
    for (Index v = 0; v < agg.nFine; ++v) {
        Index id = agg.assignment[static_cast<std::size_t>(v)];
        if (id < 0) throw std::invalid_argument("coarseCoordinates: incomplete aggregation");
        for (int c = 0; c < 3; ++c) out[static_cast<std::size_t>(id)][static_cast<std::size_t>(c)] +=
            coords[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
        ++count[static_cast<std::size_t>(id)];
    }
    for (std::size_t k = 0; k < out.size(); ++k)
        for (int c = 0; c < 3; ++c) out[k][static_cast<std::size_t>(c)] /= static_cast<double>(count[k]);
    return out;
}

DenseVector invDiagOf(const SparseMatrix& A) {
    DenseVector d = diagOf(A);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0)
            throw std::runtime_error("invDiagOf: zero diagonal in row " + std::to_string(i));
        d[i] = 1.0 / d[i];
    }
    return d;
}

std::vector<Index> diagPositions(const SparseMatrix& A) {
    std::vector<Index> pos(static_cast<std::size_t>(A.nRows()), -1);
    for (Index i = 0; i < A.nRows(); ++i) {
        auto cols = A.rowCols(i);
        auto it = std::lower_bound(cols.begin(), cols.end(), i);
        if (it == cols.end() || *it != i || A.rowVals(i)[static_cast<std::size_t>(it - cols.begin())] == 0.0)
            throw std::runtime_error("diagPositions: missing or zero diagonal in row " +
                                     std::to_string(i));
        pos[static_cast<std::size_t>(i)] = A.rowOffsets()[i] + (it - cols.begin());
    }
    return pos;
}

void jacobiSweep(const SparseMatrix& A, const DenseVector& invDiag, double omega,
                 const DenseVector& b, DenseVector& x, DenseVector& work) {
    residual(A, b, x, work);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += omega * invDiag[i] * work[i];
}

void symmetricGaussSeidelSweep(const SparseMatrix& A, const std::vector<Index>& diagPos,
                               const DenseVector& b, DenseVector& x) {
    const auto& off = A.rowOffsets();
    const auto& col = A.colIndices();
    const auto& val = A.values();
    const Index n = A.nRows();
    for (Index i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        double dii = val[static_cast<std::size_t>(diagPos[static_cast<std::size_t>(i)])];
        for (Index p = off[i]; p < off[i + 1]; ++p) {
            Index j = col[static_cast<std::size_t>(p)];
            if (j != i) s -= val[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(j)];
        }
        x[static_cast<std::size_t>(i)] = s / dii;
    }
    for (Index i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        double dii = val[static_cast<std::size_t>(diagPos[static_cast<std::size_t>(i)])];
        for (Index p = off[i]; p < off[i + 1]; ++p) {
            Index j = col[static_cast<std::size_t>(p)];
            if (j != i) s -= val[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(j)];
        }
        x[static_cast<std::size_t>(i)] = s / dii;
    }
}

Hierarchy buildHierarchy(const SparseMatrix& A, const std::vector<std::array<double, 3>>& coords,
                         const DropConfig& cfg, SmootherSpec smoother, HierarchyLimits limits) {
    cfg.validate();
    if (A.nRows() != A.nCols()) throw std::invalid_argument("buildHierarchy: matrix not square");

    Hierarchy h;
    h.smoother = smoother;
    h.levels.push_back({});
    h.levels.back().A = A;
    h.levels.back().coords = coords;

    while (true) {
        Level& lev = h.levels.back();
        const Index n = lev.A.nRows();
        if (n < limits.coarseSize) break;
        if (static_cast<int>(h.levels.size()) >= limits.maxLevels) {
            h.stopReason = "level cap reached";
            break;
        }

        StrengthGraph graph = buildStrength(lev.A, lev.coords, cfg);
        FilteredMatrix filtered = cfg.lumping == LumpingKind::Diagonal
                                      ? filterDiagonalLump(lev.A, graph)
                                      : filterDistributedLump(lev.A, graph);
        lev.flaggedRows = static_cast<Index>(filtered.flaggedRows.size());

        Aggregation agg = aggregate(graph);
        lev.nAggregates = agg.nAggregates;
        if (static_cast<double>(agg.nAggregates) > limits.stallRatio * static_cast<double>(n)) {
            h.stopReason = "coarsening stalled at level " + std::to_string(h.levels.size() - 1) +
                           " (" + std::to_string(agg.nAggregates) + " aggregates over " +
                           std::to_string(n) + " rows)";
            break;
        }

        SparseMatrix Pt = tentativeProlongator(agg);
        auto [P, omega] = smoothProlongator(filtered, Pt, &lev.rhoHat);
        lev.omega = omega;
        lev.P = std::move(P);
        lev.R = transpose(lev.P);

        Level next;
        next.A = multiply(lev.R, multiply(lev.A, lev.P));
        next.coords = coarseCoordinates(agg, lev.coords);
        h.levels.push_back(std::move(next));
    }

    // Smoother data everywhere, direct solver on the coarsest level.
    for (std::size_t l = 0; l + 1 < h.levels.size(); ++l) {
        if (h.smoother.kind == SmootherKind::Jacobi)
            h.levels[l].invDiag = invDiagOf(h.levels[l].A);
        else
            h.levels[l].diagPos = diagPositions(h.levels[l].A);
    }
    const SparseMatrix& coarsest = h.levels.back().A;
    if (coarsest.nRows() > limits.directCap)
        throw std::runtime_error("buildHierarchy: coarsest level has " +
                                 std::to_string(coarsest.nRows()) + " rows (direct cap " +
                                 std::to_string(limits.directCap) + "); " + h.stopReason);
    h.coarseSolver = DenseLu(coarsest, limits.directCap);

    double nnz0 = static_cast<double>(h.levels.front().A.nnz());
    double total = 0.0;
    for (const Level& l : h.levels) total += static_cast<double>(l.A.nnz());
    h.operatorComplexity = total / nnz0;
    return h;
}

namespace {

void vcycleLevel(const Hierarchy& h, std::size_t l, const DenseVector& b, DenseVector& x,
                 std::vector<DenseVector>& rhs, std::vector<DenseVector>& sol,
                 DenseVector& work) {
    if (l + 1 == h.levels.size()) {
        x = h.coarseSolver.solve(b);
        return;
    }
    const Level& lev = h.levels[l];
    x.assign(static_cast<std::size_t>(lev.A.nRows()), 0.0);

    if (h.smoother.kind == SmootherKind::Jacobi)
        jacobiSweep(lev.A, lev.invDiag, h.smoother.omega, b, x, work);
    else
        symmetricGaussSeidelSweep(lev.A, lev.diagPos, b, x);

    residual(lev.A, b, x, work);
    spmv(lev.R, work, rhs[l + 1]);
    vcycleLevel(h, l + 1, rhs[l + 1], sol[l + 1], rhs, sol, work);
    work.resize(static_cast<std::size_t>(lev.A.nRows()));
    spmv(lev.P, sol[l + 1], work);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += work[i];

    if (h.smoother.kind == SmootherKind::Jacobi)
        jacobiSweep(lev.A, lev.invDiag, h.smoother.omega, b, x, work);
    else
        symmetricGaussSeidelSweep(lev.A, lev.diagPos, b, x);
}

}  // namespace

void vcycle(const Hierarchy& h, const DenseVector& b, DenseVector& x) {
    if (h.levels.empty()) throw std::invalid_argument("vcycle: empty hierarchy");
    std::vector<DenseVector> rhs(h.levels.size());
    std::vector<DenseVector> sol(h.levels.size());
    DenseVector work;
    vcycleLevel(h, 0, b, x, rhs, sol, work);
}

}  // namespace dropmg
