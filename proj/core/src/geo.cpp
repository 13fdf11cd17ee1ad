#include "dropmg/geo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dropmg/assemble.hpp"
#include "dropmg/mesh.hpp"

namespace dropmg {

GridPlan planSemiCoarsening(std::array<Index, 3> points, std::array<double, 3> spacing,
                            double abar, int nLevels) {
    if (nLevels < 1) throw std::invalid_argument("planSemiCoarsening: need at least one level");
    GridPlan plan;
    plan.grids.push_back({points, spacing});
    for (int l = 1; l < nLevels; ++l) {
        const GridLevel& f = plan.grids.back();
        std::array<bool, 3> mask = {true, true, f.spacing[2] <= abar * f.spacing[0]};
        GridLevel c = f;
        for (int a = 0; a < 3; ++a) {
            if (!mask[static_cast<std::size_t>(a)]) continue;
            Index n = f.points[static_cast<std::size_t>(a)];
            if (n < 4 || (n - 1) % 3 != 0)
                throw std::invalid_argument("planSemiCoarsening: axis " + std::to_string(a) +
                                            " with " + std::to_string(n) +
                                            " points cannot coarsen by 3");
            c.points[static_cast<std::size_t>(a)] = (n - 1) / 3 + 1;
            c.spacing[static_cast<std::size_t>(a)] = 3.0 * f.spacing[static_cast<std::size_t>(a)];
        }
        plan.coarsenMask.push_back(mask);
        plan.grids.push_back(c);
    }
    return plan;
}

SparseMatrix multilinearInterpolation(const GridLevel& fine, const GridLevel& coarse,
                                      const std::array<bool, 3>& mask) {
    for (int a = 0; a < 3; ++a) {
        Index expect = mask[static_cast<std::size_t>(a)]
                           ? (fine.points[static_cast<std::size_t>(a)] - 1) / 3 + 1
                           : fine.points[static_cast<std::size_t>(a)];
        if (coarse.points[static_cast<std::size_t>(a)] != expect)
            throw std::invalid_argument("multilinearInterpolation: inconsistent grids on axis " +
                                        std::to_string(a));
    }

    // per-axis weights: up to two coarse stencil points per fine point
    struct AxisEntry {
        Index c[2];
        double w[2];
        int n;
    };
    std::array<std::vector<AxisEntry>, 3> axis;
    for (int a = 0; a < 3; ++a) {
        Index nf = fine.points[static_cast<std::size_t>(a)];
        axis[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(nf));
        for (Index i = 0; i < nf; ++i) {
            AxisEntry e{};
            if (!mask[static_cast<std::size_t>(a)]) {
                e.n = 1;
                e.c[0] = i;
                e.w[0] = 1.0;
            } else if (i % 3 == 0) {
                e.n = 1;
                e.c[0] = i / 3;
                e.w[0] = 1.0;
            } else {
                e.n = 2;
                e.c[0] = i / 3;
                e.c[1] = i / 3 + 1;
                e.w[0] = i % 3 == 1 ? 2.0 / 3.0 : 1.0 / 3.0;
                e.w[1] = i % 3 == 1 ? 1.0 / 3.0 : 2.0 / 3.0;
            }
            axis[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = e;
        }
    }

    const Index nfx = fine.points[0], nfy = fine.points[1], nfz = fine.points[2];
    const Index ncx = coarse.points[0], ncy = coarse.points[1];
    std::vector<Index> offsets(static_cast<std::size_t>(nfx * nfy * nfz) + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    std::vector<std::pair<Index, double>> row;

    Index r = 0;
    for (Index k = 0; k < nfz; ++k)
        for (Index j = 0; j < nfy; ++j)
            for (Index i = 0; i < nfx; ++i, ++r) {
                const AxisEntry& ex = axis[0][static_cast<std::size_t>(i)];
                const AxisEntry& ey = axis[1][static_cast<std::size_t>(j)];
                const AxisEntry& ez = axis[2][static_cast<std::size_t>(k)];
                row.clear();
                for (int c = 0; c < ez.n; ++c)
                    for (int b = 0; b < ey.n; ++b)
                        for (int a = 0; a < ex.n; ++a)
                            row.emplace_back(ex.c[a] + ncx * (ey.c[b] + ncy * ez.c[c]),
                                             ex.w[a] * ey.w[b] * ez.w[c]);
                std::sort(row.begin(), row.end());
                for (auto& [c, w] : row) {
                    cols.push_back(c);
                    vals.push_back(w);
                }
                offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(cols.size());
            }
    const Index nCoarse = coarse.points[0] * coarse.points[1] * coarse.points[2];
    return SparseMatrix(nfx * nfy * nfz, nCoarse, std::move(offsets), std::move(cols),
                        std::move(vals));
}

namespace {

// Free-dof bookkeeping of one plan grid under the model boundary conditions
// (Dirichlet on y and z faces, Neumann on the two x faces).
struct GridDofs {
    std::vector<Index> freeList;
    std::vector<Index> colMap;
};

GridDofs gridDofs(const GridLevel& g) {
    GridDofs d;
    d.colMap.assign(static_cast<std::size_t>(g.points[0] * g.points[1] * g.points[2]), -1);
    Index v = 0;
    for (Index k = 0; k < g.points[2]; ++k)
        for (Index j = 0; j < g.points[1]; ++j)
            for (Index i = 0; i < g.points[0]; ++i, ++v) {
                bool dir = j == 0 || j == g.points[1] - 1 || k == 0 || k == g.points[2] - 1;
                if (!dir) {
                    d.colMap[static_cast<std::size_t>(v)] = static_cast<Index>(d.freeList.size());
                    d.freeList.push_back(v);
                }
            }
    return d;
}

}  // namespace

SolveReport geoSolve(Index n, double alpha, double abar, int nLevels,
                     const GeoSolveOptions& opts) {
    const double h = 1.0 / static_cast<double>(n - 1);
    Mesh mesh = buildMesh(geoGridSpec(n, h, alpha));
    AssembledSystem sys = assemble(mesh);

    GridPlan plan = planSemiCoarsening({n, n, n}, {h, h, alpha * h}, abar, nLevels);

    Hierarchy hier;
    hier.smoother = opts.smoother;
    hier.levels.resize(plan.grids.size());
    hier.levels[0].A = sys.A;
    GridDofs fineDofs = gridDofs(plan.grids[0]);

    for (std::size_t l = 0; l + 1 < plan.grids.size(); ++l) {
        SparseMatrix Pfull =
            multilinearInterpolation(plan.grids[l], plan.grids[l + 1], plan.coarsenMask[l]);
        GridDofs coarseDofs = gridDofs(plan.grids[l + 1]);
        hier.levels[l].P = submatrix(Pfull, fineDofs.freeList, coarseDofs.colMap,
                                     static_cast<Index>(coarseDofs.freeList.size()));
        hier.levels[l].R = transpose(hier.levels[l].P);
        hier.levels[l + 1].A =
            multiply(hier.levels[l].R, multiply(hier.levels[l].A, hier.levels[l].P));
        fineDofs = std::move(coarseDofs);
    }

    for (std::size_t l = 0; l + 1 < hier.levels.size(); ++l) {
        if (opts.smoother.kind == SmootherKind::Jacobi)
            hier.levels[l].invDiag = invDiagOf(hier.levels[l].A);
        else
            hier.levels[l].diagPos = diagPositions(hier.levels[l].A);
    }
    hier.coarseSolver = DenseLu(hier.levels.back().A);

    double nnz0 = static_cast<double>(hier.levels.front().A.nnz());
    double total = 0.0;
    for (const Level& l : hier.levels) total += static_cast<double>(l.A.nnz());
    hier.operatorComplexity = total / nnz0;

    DenseVector b = randomVector(sys.A.nRows(), opts.seed);
    ApplyFn M = [&hier](const DenseVector& r, DenseVector& z) { vcycle(hier, r, z); };
    return pcg(sys.A, b, M, opts.tol, opts.maxIt, nullptr, nullptr, hier.operatorComplexity);
}

}  // namespace dropmg
