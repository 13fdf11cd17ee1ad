#include <doctest.h>

#include <cmath>
#include <limits>

#include "dropmg/geo.hpp"

using namespace dropmg;

TEST_CASE("semi-coarsening plans") {
    // semi_3 at alpha = 9 reproduces the published grid sequence
    GridPlan plan = planSemiCoarsening({82, 82, 82}, {1.0, 1.0, 9.0}, 3.0, 4);
    REQUIRE(plan.grids.size() == 4);
    CHECK(plan.grids[1].points == std::array<Index, 3>{28, 28, 82});
    CHECK(plan.grids[2].points == std::array<Index, 3>{10, 10, 28});
    CHECK(plan.grids[3].points == std::array<Index, 3>{4, 4, 10});

    // semi_inf coarsens every axis on every transition
    GridPlan full = planSemiCoarsening({82, 82, 82}, {1.0, 1.0, 81.0},
                                       std::numeric_limits<double>::infinity(), 4);
    for (const auto& mask : full.coarsenMask)
        CHECK(mask == std::array<bool, 3>{true, true, true});

    // semi_1 at alpha = 1 equals the semi_inf plan
    GridPlan semi1 = planSemiCoarsening({82, 82, 82}, {1.0, 1.0, 1.0}, 1.0, 4);
    GridPlan semiInf = planSemiCoarsening({82, 82, 82}, {1.0, 1.0, 1.0},
                                          std::numeric_limits<double>::infinity(), 4);
    for (std::size_t l = 0; l < semi1.grids.size(); ++l)
        CHECK(semi1.grids[l].points == semiInf.grids[l].points);

    // the rule holds on every transition
    GridPlan p9 = planSemiCoarsening({82, 82, 82}, {1.0, 1.0, 81.0}, 9.0, 4);
    for (std::size_t t = 0; t < p9.coarsenMask.size(); ++t) {
        const GridLevel& g = p9.grids[t];
        CHECK(p9.coarsenMask[t][2] == (g.spacing[2] <= 9.0 * g.spacing[0]));
    }
    CHECK(p9.grids.back().points == std::array<Index, 3>{4, 4, 28});

    CHECK_THROWS(planSemiCoarsening({5, 82, 82}, {1.0, 1.0, 1.0}, 1.0, 2));
}

TEST_CASE("multilinear interpolation weights") {
    // no coarsened axis: identity
    GridLevel g{{3, 3, 3}, {1.0, 1.0, 1.0}};
    SparseMatrix I = multilinearInterpolation(g, g, {false, false, false});
    CHECK(I.nnz() == 27);
    for (Index i = 0; i < 27; ++i) CHECK(I.at(i, i) == 1.0);

    // 1D factor-3 interval: rows [1,0], [2/3,1/3], [1/3,2/3], [0,1]
    GridLevel fine{{4, 1, 1}, {1.0, 1.0, 1.0}};
    GridLevel coarse{{2, 1, 1}, {3.0, 1.0, 1.0}};
    SparseMatrix P = multilinearInterpolation(fine, coarse, {true, false, false});
    CHECK(P.at(0, 0) == 1.0);
    CHECK(P.at(1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(P.at(1, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(P.at(2, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(P.at(2, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(P.at(3, 1) == 1.0);

    CHECK_THROWS(multilinearInterpolation(fine, fine, {true, false, false}));
}

TEST_CASE("interpolation reproduces linear functions") {
    GridLevel fine{{10, 7, 4}, {1.0, 2.0, 0.5}};
    GridLevel coarse{{4, 7, 2}, {3.0, 2.0, 1.5}};
    SparseMatrix P = multilinearInterpolation(fine, coarse, {true, false, true});

    auto linear = [](double x, double y, double z) { return 2.0 * x - y + 0.25 * z + 3.0; };
    DenseVector xc(static_cast<std::size_t>(coarse.points[0] * coarse.points[1] * coarse.points[2]));
    Index v = 0;
    for (Index k = 0; k < coarse.points[2]; ++k)
        for (Index j = 0; j < coarse.points[1]; ++j)
            for (Index i = 0; i < coarse.points[0]; ++i, ++v)
                xc[static_cast<std::size_t>(v)] = linear(coarse.spacing[0] * static_cast<double>(i),
                                                         coarse.spacing[1] * static_cast<double>(j),
                                                         coarse.spacing[2] * static_cast<double>(k));
    DenseVector xf = spmv(P, xc);
    v = 0;
    for (Index k = 0; k < fine.points[2]; ++k)
        for (Index j = 0; j < fine.points[1]; ++j)
            for (Index i = 0; i < fine.points[0]; ++i, ++v) {
                double want = linear(fine.spacing[0] * static_cast<double>(i),
                                     fine.spacing[1] * static_cast<double>(j),
                                     fine.spacing[2] * static_cast<double>(k));
                CHECK(std::abs(xf[static_cast<std::size_t>(v)] - want) <= 1e-14 * std::abs(want));
            }
}

TEST_CASE("small geometric solve converges") {
    // 10 points per axis: grids 10 -> 4 -> 2
    SolveReport rep = geoSolve(10, 1.0, 1.0, 3);
    CHECK(rep.converged);
    CHECK(rep.iterations < 30);
    CHECK(rep.operatorComplexity > 1.0);

    // stretched grid, isotropic coarsening converges more slowly than
    // semi-coarsening
    SolveReport semi = geoSolve(10, 9.0, 1.0, 2);
    SolveReport iso = geoSolve(10, 9.0, std::numeric_limits<double>::infinity(), 2);
    CHECK(semi.converged);
    CHECK(iso.converged);
    CHECK(semi.iterations <= iso.iterations);
}
