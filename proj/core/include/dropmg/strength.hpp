#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "dropmg/sparse.hpp"

namespace dropmg {

enum class SocKind { SystemMatrix, DistanceLaplacian };
enum class ScalingKind { SymmetricSA, SignedClassical };
enum class ClassifierKind { Threshold, CutDrop };
enum class LumpingKind { Diagonal, Distributed };

/// The four dropping sub-step choices plus their tolerances. theta drives the
/// threshold classifier, thetaG the cut-drop gap classifier.
struct DropConfig {
    SocKind soc = SocKind::DistanceLaplacian;
    ScalingKind scaling = ScalingKind::SignedClassical;
    ClassifierKind classifier = ClassifierKind::Threshold;
    LumpingKind lumping = LumpingKind::Distributed;
    double theta = 0.16;
    double thetaG = 0.5;

    /// Throws on inconsistent combinations (cut-drop requires SA scaling) and
    /// out-of-range tolerances.
    void validate() const;

    /// Short label of the form SOC/scaling/classifier, e.g. "DLap/Sgn/Val".
    std::string label() const;

    double activeTolerance() const {
        return classifier == ClassifierKind::CutDrop ? thetaG : theta;
    }
};

std::string toString(SocKind k);
std::string toString(ScalingKind k);
std::string toString(ClassifierKind k);
std::string toString(LumpingKind k);
SocKind socKindFromString(const std::string& s);
ScalingKind scalingKindFromString(const std::string& s);
ClassifierKind classifierKindFromString(const std::string& s);
LumpingKind lumpingKindFromString(const std::string& s);

/// Scaled off-diagonal SOC values on the matrix pattern, diagonal excluded.
struct ScaledEntries {
    Index nRows = 0;
    std::vector<Index> offsets;
    std::vector<Index> cols;    // sorted within each row
    std::vector<double> vals;
};

/// Per-row sets of retained off-diagonal columns; the diagonal is implicitly
/// retained. The graph may be non-symmetric.
struct StrengthGraph {
    Index nRows = 0;
    std::vector<Index> offsets;
    std::vector<Index> cols;    // sorted within each row

    bool retained(Index i, Index j) const;
    Index rowSize(Index i) const { return offsets[i + 1] - offsets[i]; }
    Index nEdges() const { return static_cast<Index>(cols.size()); }
};

/// SOC matrix choice: the system matrix itself, or the distance Laplacian
/// with off-diagonals -1/dist^2 on A's pattern and zero row sums.
SparseMatrix socMatrix(const SparseMatrix& A, const std::vector<std::array<double, 3>>& coords,
                       SocKind kind);

/// v_ij = |S_ij| / sqrt(S_ii S_jj). Requires positive diagonals.
ScaledEntries scaleSymmetricSA(const SparseMatrix& S);

/// Row-wise m_i = max_{k != i}(-S_ik); v_ij = -S_ij / m_i when m_i > 0,
/// otherwise the whole row is marked weak.
ScaledEntries scaleSignedClassical(const SparseMatrix& S);

/// Retain (i, j) iff v_ij >= theta.
StrengthGraph classifyThreshold(const ScaledEntries& v, double theta);

/// Per row: sort descending, always keep the largest, then keep while the
/// ratio to the previously kept value stays >= thetaG.
StrengthGraph classifyCutDrop(const ScaledEntries& v, double thetaG);

/// Composition of the three sub-steps selected by cfg.
StrengthGraph buildStrength(const SparseMatrix& A,
                            const std::vector<std::array<double, 3>>& coords,
                            const DropConfig& cfg);

/// Debug export, one `i j` line per retained edge, 0-based.
void writeEdgeList(std::ostream& os, const StrengthGraph& g);

}  // namespace dropmg
