#include "dropmg/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dropmg {

ApplyFn identityPreconditioner() {
    return [](const DenseVector& r, DenseVector& z) { z = r; };
}

std::string SolveReport::csvRow() const {
    std::ostringstream os;
    os << iterations << "," << (converged ? "converged" : "unconverged") << ","
       << operatorComplexity << "," << cost;
    return os.str();
}

SolveReport pcg(const SparseMatrix& A, const DenseVector& b, const ApplyFn& M, double tol,
                Index maxIt, const DenseVector* x0, DenseVector* xOut,
                double operatorComplexity) {
    const Index n = A.nRows();
    if (A.nCols() != n || static_cast<Index>(b.size()) != n)
        throw std::invalid_argument("pcg: dimension mismatch");

    SolveReport report;
    report.operatorComplexity = operatorComplexity;

    DenseVector x = x0 ? *x0 : DenseVector(static_cast<std::size_t>(n), 0.0);
    DenseVector r(b.size()), z(b.size()), p(b.size()), Ap(b.size()), tmp(b.size());

    residual(A, b, x, r);
    const double r0 = norm2(r);
    if (r0 == 0.0) {
        report.converged = true;
        report.residualHistory.push_back(0.0);
        report.cost = 0.0;
        if (xOut) *xOut = x;
        return report;
    }
    report.residualHistory.push_back(1.0);

    M(r, z);
    p = z;
    double rz = dot(r, z);

    for (Index it = 1; it <= maxIt; ++it) {
        spmv(A, p, Ap);
        const double pAp = dot(p, Ap);
        if (pAp <= 0.0)
            throw std::runtime_error("pcg: indefinite operator or preconditioner, p^T A p = " +
                                     std::to_string(pAp) + " at iteration " + std::to_string(it));
        const double alpha = rz / pAp;
        axpy(alpha, p, x);
        axpy(-alpha, Ap, r);

        residual(A, b, x, tmp);  // true residual judged every iteration
        const double relRes = norm2(tmp) / r0;
        report.residualHistory.push_back(relRes);
        report.iterations = it;
        if (relRes <= tol) {
            report.converged = true;
            break;
        }

        M(r, z);
        const double rzNew = dot(r, z);
        const double beta = rzNew / rz;
        rz = rzNew;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    report.cost = static_cast<double>(report.iterations) * operatorComplexity;
    if (xOut) *xOut = x;
    return report;
}

SolveReport gmres(const SparseMatrix& A, const DenseVector& b, const ApplyFn& M, Index restart,
                  double tol, Index maxIt, const DenseVector* x0, DenseVector* xOut,
                  double operatorComplexity) {
    const Index n = A.nRows();
    if (A.nCols() != n || static_cast<Index>(b.size()) != n)
        throw std::invalid_argument("gmres: dimension mismatch");
    if (restart < 1) throw std::invalid_argument("gmres: restart must be positive");

    SolveReport report;
    report.operatorComplexity = operatorComplexity;

    DenseVector x = x0 ? *x0 : DenseVector(static_cast<std::size_t>(n), 0.0);
    DenseVector r(b.size());
    residual(A, b, x, r);
    const double r0 = norm2(r);
    if (r0 == 0.0) {
        report.converged = true;
        report.residualHistory.push_back(0.0);
        if (xOut) *xOut = x;
        return report;
    }
    report.residualHistory.push_back(1.0);

    const std::size_t m = static_cast<std::size_t>(restart);
    std::vector<DenseVector> V(m + 1);
    std::vector<DenseVector> Z(m);  // preconditioned basis, x update needs it
    std::vector<double> H((m + 1) * m, 0.0);
    std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
    DenseVector w(b.size());

    Index totalIt = 0;
    while (totalIt < maxIt && !report.converged) {
        residual(A, b, x, r);
        double beta = norm2(r);
        if (beta / r0 <= tol) {
            report.converged = true;
            break;
        }
        V[0] = r;
        scale(V[0], 1.0 / beta);
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        std::size_t j = 0;
        for (; j < m && totalIt < maxIt; ++j) {
            M(V[j], Z[j]);
            spmv(A, Z[j], w);
            for (std::size_t i = 0; i <= j; ++i) {
                double hij = dot(w, V[i]);
                H[i * m + j] = hij;
                axpy(-hij, V[i], w);
            }
            double hnext = norm2(w);
            H[(j + 1) * m + j] = hnext;
            bool breakdown = hnext == 0.0;
            if (!breakdown) {
                V[j + 1] = w;
                scale(V[j + 1], 1.0 / hnext);
            }

            for (std::size_t i = 0; i < j; ++i) {
                double t = cs[i] * H[i * m + j] + sn[i] * H[(i + 1) * m + j];
                H[(i + 1) * m + j] = -sn[i] * H[i * m + j] + cs[i] * H[(i + 1) * m + j];
                H[i * m + j] = t;
            }
            double denom = std::hypot(H[j * m + j], H[(j + 1) * m + j]);
            cs[j] = denom == 0.0 ? 1.0 : H[j * m + j] / denom;
            sn[j] = denom == 0.0 ? 0.0 : H[(j + 1) * m + j] / denom;
            H[j * m + j] = denom;
            H[(j + 1) * m + j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            ++totalIt;
            const double relRes = std::abs(g[j + 1]) / r0;
            report.residualHistory.push_back(relRes);
            report.iterations = totalIt;
            if (relRes <= tol || breakdown) {
                report.converged = true;  // happy breakdown counts as convergence
                ++j;
                break;
            }
        }

        // back substitution and solution update
        std::vector<double> y(j, 0.0);
        for (std::size_t i = j; i-- > 0;) {
            double s = g[i];
            for (std::size_t k = i + 1; k < j; ++k) s -= H[i * m + k] * y[k];
            y[i] = s / H[i * m + i];
        }
        for (std::size_t i = 0; i < j; ++i) axpy(y[i], Z[i], x);

        if (report.converged) {
            residual(A, b, x, r);  // estimate confirmed against the true residual
            report.converged = norm2(r) / r0 <= tol;
        }
    }
    report.cost = static_cast<double>(report.iterations) * operatorComplexity;
    if (xOut) *xOut = x;
    return report;
}

}  // namespace dropmg
