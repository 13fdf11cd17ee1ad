#pragma once

#include <vector>

#include "dropmg/sparse.hpp"
#include "dropmg/strength.hpp"

namespace dropmg {

/// Filtered matrix on the retained pattern plus diagonal. Row sums match the
/// input matrix in both lumping modes. Rows whose diagonal sign flipped (or
/// that needed the no-off-diagonal fallback) are flagged, not repaired.
struct FilteredMatrix {
    SparseMatrix tildeA;
    DenseVector droppedSum;           // e_i per row
    std::vector<Index> flaggedRows;   // diagonal <= 0 after lumping, or fallback rows
};

/// Dropped sum added to the diagonal (standard lumping). With
/// keepDroppedPattern the dropped slots remain as structural zeros.
FilteredMatrix filterDiagonalLump(const SparseMatrix& A, const StrengthGraph& g,
                                  bool keepDroppedPattern = false);

/// Rows with e_i >= 0 lump to the diagonal; rows with e_i < 0 spread the
/// correction over every retained entry, diagonal included, in proportion to
/// magnitude. Rows retaining no off-diagonal fall back to diagonal lumping
/// and are flagged.
FilteredMatrix filterDistributedLump(const SparseMatrix& A, const StrengthGraph& g,
                                     bool keepDroppedPattern = false);

/// Checks the scaled-entry relation between D^{-1}A and D~^{-1}A~ on rows
/// with e_i < 0: positive entries agree, negative entries are scaled by a
/// common per-row factor greater than one.
struct CorollaryReport {
    bool holds = true;
    Index rowsChecked = 0;
    double maxPositiveDeviation = 0.0;   // relative, over positive entries
    double maxNegativeDeviation = 0.0;   // relative, against the predicted factor
    double minFactor = 0.0;              // smallest per-row negative-entry factor seen
    std::vector<Index> violatingRows;
};

CorollaryReport verifyCorollary(const SparseMatrix& A, const FilteredMatrix& F,
                                const StrengthGraph& g, double tol = 1e-12);

}  // namespace dropmg
