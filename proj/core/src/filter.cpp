#include "dropmg/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dropmg {

namespace {

struct RowSplit {
    std::vector<Index> cols;      // retained pattern incl. diagonal, sorted
    std::vector<double> vals;     // values from A (0 for a materialized diagonal)
    std::vector<bool> kept;       // parallel to cols; false marks structural zeros kept for debug
    double dropped = 0.0;
    Index diagPos = -1;
};

// Splits row i of A into retained and dropped parts following the strength
// graph; the diagonal is always retained and materialized when absent.
RowSplit splitRow(const SparseMatrix& A, const StrengthGraph& g, Index i, bool keepDroppedPattern) {
    RowSplit out;
    auto cols = A.rowCols(i);
    auto vals = A.rowVals(i);
    bool haveDiag = false;
    for (std::size_t p = 0; p < cols.size(); ++p) {
        Index j = cols[p];
        bool keep = j == i || g.retained(i, j);
        if (j == i) haveDiag = true;
        if (keep || keepDroppedPattern) {
            if (j > i && !haveDiag) {
                out.cols.push_back(i);
                out.vals.push_back(0.0);
                out.kept.push_back(true);
                haveDiag = true;
            }
            if (j == i) out.diagPos = static_cast<Index>(out.cols.size());
            out.cols.push_back(j);
            out.vals.push_back(keep ? vals[p] : 0.0);
            out.kept.push_back(keep);
        }
        if (!keep) out.dropped += vals[p];
    }
    if (!haveDiag) {
        auto it = std::lower_bound(out.cols.begin(), out.cols.end(), i);
        std::size_t pos = static_cast<std::size_t>(it - out.cols.begin());
        out.cols.insert(it, i);
        out.vals.insert(out.vals.begin() + static_cast<std::ptrdiff_t>(pos), 0.0);
        out.kept.insert(out.kept.begin() + static_cast<std::ptrdiff_t>(pos), true);
        out.diagPos = static_cast<Index>(pos);
    } else if (out.diagPos < 0) {
        auto it = std::lower_bound(out.cols.begin(), out.cols.end(), i);
        out.diagPos = static_cast<Index>(it - out.cols.begin());
    }
    return out;
}

FilteredMatrix assembleFiltered(const SparseMatrix& A, const StrengthGraph& g,
                                bool keepDroppedPattern, bool distributed) {
    if (A.nRows() != A.nCols()) throw std::invalid_argument("filter: matrix not square");
    if (g.nRows != A.nRows()) throw std::invalid_argument("filter: graph/matrix size mismatch");

    FilteredMatrix out;
    out.droppedSum.assign(static_cast<std::size_t>(A.nRows()), 0.0);
    std::vector<Index> offsets(static_cast<std::size_t>(A.nRows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;

    for (Index i = 0; i < A.nRows(); ++i) {
        RowSplit row = splitRow(A, g, i, keepDroppedPattern);
        const double e = row.dropped;
        out.droppedSum[static_cast<std::size_t>(i)] = e;
        bool flagged = false;

        Index keptOffDiag = 0;
        for (std::size_t p = 0; p < row.cols.size(); ++p)
            if (row.kept[p] && row.cols[p] != i) ++keptOffDiag;

        if (distributed && e < 0.0 && keptOffDiag > 0) {
            double absSum = 0.0;
            for (std::size_t p = 0; p < row.cols.size(); ++p)
                if (row.kept[p]) absSum += std::abs(row.vals[p]);
            if (absSum == 0.0)
                throw std::runtime_error(
                    "filterDistributedLump: row " + std::to_string(i) +
                    " has zero retained magnitude but a negative dropped sum");
            for (std::size_t p = 0; p < row.cols.size(); ++p)
                if (row.kept[p]) row.vals[p] += e * std::abs(row.vals[p]) / absSum;
        } else {
            row.vals[static_cast<std::size_t>(row.diagPos)] += e;
            if (distributed && e < 0.0) flagged = true;  // no-off-diagonal fallback
        }
        if (row.vals[static_cast<std::size_t>(row.diagPos)] <= 0.0 && e != 0.0) flagged = true;

        if (flagged) out.flaggedRows.push_back(i);
        cols.insert(cols.end(), row.cols.begin(), row.cols.end());
        vals.insert(vals.end(), row.vals.begin(), row.vals.end());
        offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(cols.size());
    }
    out.tildeA = SparseMatrix(A.nRows(), A.nCols(), std::move(offsets), std::move(cols),
                              std::move(vals));
    return out;
}

}  // namespace

FilteredMatrix filterDiagonalLump(const SparseMatrix& A, const StrengthGraph& g,
                                  bool keepDroppedPattern) {
    return assembleFiltered(A, g, keepDroppedPattern, /*distributed=*/false);
}

FilteredMatrix filterDistributedLump(const SparseMatrix& A, const StrengthGraph& g,
                                     bool keepDroppedPattern) {
    return assembleFiltered(A, g, keepDroppedPattern, /*distributed=*/true);
}

CorollaryReport verifyCorollary(const SparseMatrix& A, const FilteredMatrix& F,
                                const StrengthGraph& g, double tol) {
    CorollaryReport report;
    report.minFactor = std::numeric_limits<double>::infinity();
    const SparseMatrix& T = F.tildeA;
    for (Index i = 0; i < A.nRows(); ++i) {
        const double e = F.droppedSum[static_cast<std::size_t>(i)];
        if (!(e < 0.0)) continue;
        ++report.rowsChecked;

        double absSum = 0.0;
        double dA = 0.0;
        for (std::size_t p = 0; p < A.rowCols(i).size(); ++p) {
            Index j = A.rowCols(i)[p];
            double v = A.rowVals(i)[p];
            if (j == i) dA = v;
            if (j == i || g.retained(i, j)) absSum += std::abs(v);
        }
        const double ratio = e / absSum;
        const double factor = (1.0 - ratio) / (1.0 + ratio);
        report.minFactor = std::min(report.minFactor, factor);
        const double dT = T.at(i, i);

        bool rowOk = factor > 1.0 && dA != 0.0 && dT != 0.0;
        for (std::size_t p = 0; rowOk && p < A.rowCols(i).size(); ++p) {
            Index j = A.rowCols(i)[p];
            if (j != i && !g.retained(i, j)) continue;
            double scaledA = A.rowVals(i)[p] / dA;
            double scaledT = T.at(i, j) / dT;
            if (A.rowVals(i)[p] > 0.0) {
                double dev = std::abs(scaledT - scaledA) / std::max(std::abs(scaledA), 1e-300);
                report.maxPositiveDeviation = std::max(report.maxPositiveDeviation, dev);
                if (dev > tol) rowOk = false;
            } else if (A.rowVals(i)[p] < 0.0) {
                double predicted = factor * scaledA;
                double dev = std::abs(scaledT - predicted) / std::max(std::abs(predicted), 1e-300);
                report.maxNegativeDeviation = std::max(report.maxNegativeDeviation, dev);
                if (dev > tol) rowOk = false;
            }
        }
        if (!rowOk) {
            report.holds = false;
            report.violatingRows.push_back(i);
        }
    }
    if (report.rowsChecked == 0) report.minFactor = 0.0;
    return report;
}

}  // namespace dropmg
