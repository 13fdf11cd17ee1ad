#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dropmg/aggregate.hpp"
#include "dropmg/filter.hpp"
#include "dropmg/sparse.hpp"
#include "dropmg/strength.hpp"

namespace dropmg {

enum class SmootherKind { Jacobi, SymmetricGaussSeidel };

struct SmootherSpec {
    SmootherKind kind = SmootherKind::SymmetricGaussSeidel;
    double omega = 0.6;  // Jacobi damping
};

struct Level {
    SparseMatrix A;
    SparseMatrix P;                    // absent on the coarsest level
    SparseMatrix R;                    // P^T
    std::vector<std::array<double, 3>> coords;
    DenseVector invDiag;               // Jacobi smoother data
    std::vector<Index> diagPos;        // Gauss-Seidel diagonal positions
    double omega = 0.0;                // prolongator damping used on this level
    double rhoHat = 0.0;               // eigenvalue estimate behind omega
    Index nAggregates = 0;
    Index flaggedRows = 0;             // lumping sign flags on this level
};

struct HierarchyLimits {
    Index coarseSize = 1000;   // stop once nRows drops below this
    int maxLevels = 20;
    double stallRatio = 0.95;  // nCoarse/nFine above this terminates coarsening
    Index directCap = 5000;    // largest coarsest problem the dense solver accepts
};

struct Hierarchy {
    std::vector<Level> levels;
    DenseLu coarseSolver;
    SmootherSpec smoother;
    double operatorComplexity = 1.0;
    std::string stopReason;

    Index totalFlaggedRows() const;
    void writeSummary(std::ostream& os, bool csv = false) const;
};

/// One damped-Jacobi prolongator smoothing step applied to the tentative
/// prolongator: P = (I - omega * D~^{-1} A~) P_t with
/// omega = 4 / (3 rhoHat). A negative eigenvalue estimate is used as-is,
/// with a warning on stderr.
std::pair<SparseMatrix, double> smoothProlongator(const FilteredMatrix& filtered,
                                                  const SparseMatrix& Pt, double* rhoHatOut = nullptr);

/// Arithmetic centroid of each aggregate's member coordinates.
std::vector<std::array<double, 3>> coarseCoordinates(
    const Aggregation& agg, const std::vector<std::array<double, 3>>& coords);

Hierarchy buildHierarchy(const SparseMatrix& A, const std::vector<std::array<double, 3>>& coords,
                         const DropConfig& cfg, SmootherSpec smoother = {},
                         HierarchyLimits limits = {});

/// One V(1,1) cycle applied to b with zero initial guess; returns the result
/// in x. Reentrant; hierarchies may be shared across threads.
void vcycle(const Hierarchy& h, const DenseVector& b, DenseVector& x);

// In-place smoother sweeps used by both the algebraic and geometric solvers.
void jacobiSweep(const SparseMatrix& A, const DenseVector& invDiag, double omega,
                 const DenseVector& b, DenseVector& x, DenseVector& work);
void symmetricGaussSeidelSweep(const SparseMatrix& A, const std::vector<Index>& diagPos,
                               const DenseVector& b, DenseVector& x);

DenseVector invDiagOf(const SparseMatrix& A);
std::vector<Index> diagPositions(const SparseMatrix& A);

}  // namespace dropmg
