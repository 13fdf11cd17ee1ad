#pragma once

#include <array>
#include <vector>

#include "dropmg/hierarchy.hpp"
#include "dropmg/krylov.hpp"
#include "dropmg/sparse.hpp"

namespace dropmg {

struct GridLevel {
    std::array<Index, 3> points;
    std::array<double, 3> spacing;
};

struct GridPlan {
    std::vector<GridLevel> grids;
    std::vector<std::array<bool, 3>> coarsenMask;  // one per transition
};

/// Factor-3 semi-coarsening plan: x and y always coarsen; z coarsens on a
/// transition iff its spacing is at most abar times the current x spacing.
GridPlan planSemiCoarsening(std::array<Index, 3> points, std::array<double, 3> spacing,
                            double abar, int nLevels);

/// Multilinear interpolation between consecutive plan grids: injection on
/// kept points, 1D weights (2/3, 1/3) at the two intermediate points of each
/// coarsened interval, tensorized across coarsened axes. Acts on full grids,
/// boundary included.
SparseMatrix multilinearInterpolation(const GridLevel& fine, const GridLevel& coarse,
                                      const std::array<bool, 3>& mask);

struct GeoSolveOptions {
    double tol = 1e-10;
    Index maxIt = 2000;
    std::uint64_t seed = 20240801;
    SmootherSpec smoother{SmootherKind::Jacobi, 0.6};
};

/// Assembles the stretched FE grid (n points per axis, x/y spacing 1/(n-1),
/// z spacing alpha/(n-1)), builds the semi_abar Galerkin hierarchy with
/// nLevels grids, and runs V(1,1)-preconditioned CG on a seeded random
/// right-hand side.
SolveReport geoSolve(Index n, double alpha, double abar, int nLevels,
                     const GeoSolveOptions& opts = {});

}  // namespace dropmg
