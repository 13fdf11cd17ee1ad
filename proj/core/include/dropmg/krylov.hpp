#pragma once

#include <functional>
#include <vector>

#include "dropmg/sparse.hpp"

namespace dropmg {

/// Applies a fixed linear operator: out = M(in). Preconditioners must be
/// reentrant; identityPreconditioner() passes the input through.
using ApplyFn = std::function<void(const DenseVector&, DenseVector&)>;

ApplyFn identityPreconditioner();

struct SolveReport {
    Index iterations = 0;
    bool converged = false;
    std::vector<double> residualHistory;  // relative true-residual 2-norms
    double operatorComplexity = 1.0;
    double cost = 0.0;                    // iterations x operator complexity

    std::string csvRow() const;
};

/// Preconditioned conjugate gradient. Convergence is declared on the true
/// residual, recomputed every iteration, relative to the initial residual.
SolveReport pcg(const SparseMatrix& A, const DenseVector& b, const ApplyFn& M, double tol = 1e-10,
                Index maxIt = 1000, const DenseVector* x0 = nullptr, DenseVector* xOut = nullptr,
                double operatorComplexity = 1.0);

/// Right-preconditioned restarted GMRES; reported residuals are true
/// residuals of the unpreconditioned system.
SolveReport gmres(const SparseMatrix& A, const DenseVector& b, const ApplyFn& M,
                  Index restart = 300, double tol = 1e-6, Index maxIt = 1000,
                  const DenseVector* x0 = nullptr, DenseVector* xOut = nullptr,
                  double operatorComplexity = 1.0);

}  // namespace dropmg
