// Acceptance suite: one pass/fail line per criterion.
// Criteria 1-5, 8, 9 run in seconds; 6 reproduces the semi-coarsening
// iteration table on the 82^3 grid (minutes per entry); 7 runs the 2D
// stretch-sweep property checks (tens of minutes).

#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dropmg/assemble.hpp"
#include "dropmg/filter.hpp"
#include "dropmg/geo.hpp"
#include "dropmg/hierarchy.hpp"
#include "dropmg/krylov.hpp"
#include "dropmg/mesh.hpp"
#include "dropmg/strength.hpp"
#include "dropmg/sweep.hpp"

using namespace dropmg;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!pass) ++failures;
}

// ---------------------------------------------------------------------------
// criterion 1: assembled interior stencils match the closed forms

std::map<std::array<int, 3>, double> closedFormStencil3D(double alpha, double h) {
    const double scale = h / (18.0 * alpha);
    const double a2 = alpha * alpha;
    std::map<std::array<int, 3>, double> s;
    for (int dk = -1; dk <= 1; ++dk)
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                int planar = std::abs(di) + std::abs(dj);
                double v = 0.0;
                if (di == 0 && dj == 0 && dk == 0) v = 16.0 + 32.0 * a2;
                else if (dk == 0 && planar == 1) v = 4.0 - 4.0 * a2;
                else if (dk == 0 && planar == 2) v = 1.0 - 4.0 * a2;
                else if (dk != 0 && planar == 0) v = -8.0 + 8.0 * a2;
                else if (dk != 0 && planar == 1) v = -2.0 - a2;
                else v = -0.5 - a2;
                s[{di, dj, dk}] = scale * v;
            }
    return s;
}

std::map<std::array<int, 3>, double> closedFormStencil2D(double alpha, double h) {
    (void)h;  // 2D stencil values are h-independent
    const double scale = 1.0 / (6.0 * alpha);
    const double a2 = alpha * alpha;
    std::map<std::array<int, 3>, double> s;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
            double v = 0.0;
            if (di == 0 && dj == 0) v = 8.0 + 8.0 * a2;
            else if (dj == 0) v = 2.0 - 4.0 * a2;
            else if (di == 0) v = -4.0 + 2.0 * a2;
            else v = -1.0 - a2;
            s[{di, dj, 0}] = scale * v;
        }
    return s;
}

bool criterion1() {
    const std::vector<double> alphas = {1.0, 3.0, 9.0, 27.0, 81.0};
    double worst = 0.0;
    for (double alpha : alphas) {
        {
            Mesh mesh = buildMesh(uniaxialStretchSpec(3, 4, 1.0, alpha));
            auto got = interiorStencil(assembleFull(mesh), mesh, mesh.vertexId(2, 2, 2));
            auto want = closedFormStencil3D(alpha, 1.0);
            if (got.size() != want.size()) return false;
            for (const auto& [offset, value] : want) {
                double rel = std::abs(got.at(offset) - value) /
                             std::max(std::abs(value), 1e-300);
                if (value == 0.0) rel = std::abs(got.at(offset));
                worst = std::max(worst, rel);
            }
        }
        {
            Mesh mesh = buildMesh(uniaxialStretchSpec(2, 4, 1.0, alpha));
            auto got = interiorStencil(assembleFull(mesh), mesh, mesh.vertexId(2, 2, 0));
            auto want = closedFormStencil2D(alpha, 1.0);
            if (got.size() != want.size()) return false;
            for (const auto& [offset, value] : want) {
                double rel = std::abs(got.at(offset) - value) /
                             std::max(std::abs(value), 1e-300);
                if (value == 0.0) rel = std::abs(got.at(offset));
                worst = std::max(worst, rel);
            }
        }
    }
    std::cout << "  stencil max relative deviation " << worst << "\n";
    return worst <= 1e-12;
}

// ---------------------------------------------------------------------------
// criterion 2: SA-scaled criterion constants at alpha = 1

bool criterion2() {
    double max3d = 0.0, max2d = 0.0;
    {
        Mesh mesh = buildMesh(uniaxialStretchSpec(3, 4, 1.0, 1.0));
        SparseMatrix A = assembleFull(mesh);
        ScaledEntries v = scaleSymmetricSA(A);
        Index center = mesh.vertexId(2, 2, 2);
        for (Index p = v.offsets[center]; p < v.offsets[center + 1]; ++p)
            max3d = std::max(max3d, v.vals[static_cast<std::size_t>(p)]);
    }
    {
        Mesh mesh = buildMesh(uniaxialStretchSpec(2, 4, 1.0, 1.0));
        SparseMatrix A = assembleFull(mesh);
        ScaledEntries v = scaleSymmetricSA(A);
        Index center = mesh.vertexId(2, 2, 0);
        for (Index p = v.offsets[center]; p < v.offsets[center + 1]; ++p)
            max2d = std::max(max2d, v.vals[static_cast<std::size_t>(p)]);
    }
    std::cout << "  3D max scaled entry " << max3d << ", 2D " << max2d << "\n";
    return std::abs(max3d - 0.0625) <= 1e-14 && std::abs(max2d - 0.125) <= 1e-14;
}

// ---------------------------------------------------------------------------
// criterion 3: lumping pathology on the axis-only pattern

StrengthGraph axisOnlyGraph(const Mesh& mesh, const SparseMatrix& A) {
    StrengthGraph g;
    g.nRows = A.nRows();
    g.offsets.assign(static_cast<std::size_t>(A.nRows()) + 1, 0);
    const auto& np = mesh.pointsPerAxis;
    for (Index r = 0; r < A.nRows(); ++r) {
        Index i = r % np[0], j = (r / np[0]) % np[1], k = r / (np[0] * np[1]);
        for (Index c : A.rowCols(r)) {
            if (c == r) continue;
            Index ci = c % np[0], cj = (c / np[0]) % np[1], ck = c / (np[0] * np[1]);
            int manhattan = static_cast<int>(std::abs(ci - i) + std::abs(cj - j) + std::abs(ck - k));
            if (manhattan == 1) g.cols.push_back(c);
        }
        g.offsets[static_cast<std::size_t>(r) + 1] = static_cast<Index>(g.cols.size());
    }
    return g;
}

// The closed-form stencil on a 3x3x3 block: the center row carries the
// published values (common positive factor dropped), other rows are identity.
// With dyadic alpha^2 every stored value is exactly representable, so the
// lumped cancellation is exact in floating point as well.
std::pair<SparseMatrix, StrengthGraph> stencilBlock(double alphaSq) {
    const Index n = 27;
    std::vector<Triplet> trips;
    StrengthGraph g;
    g.nRows = n;
    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    const Index center = 13;
    for (Index v = 0; v < n; ++v) {
        if (v != center) {
            trips.push_back({v, v, 1.0});
            g.offsets[static_cast<std::size_t>(v) + 1] = static_cast<Index>(g.cols.size());
            continue;
        }
        for (int dk = -1; dk <= 1; ++dk)
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    Index u = (1 + di) + 3 * ((1 + dj) + 3 * (1 + dk));
                    int planar = std::abs(di) + std::abs(dj);
                    double val;
                    if (di == 0 && dj == 0 && dk == 0) val = 16.0 + 32.0 * alphaSq;
                    else if (dk == 0 && planar == 1) val = 4.0 - 4.0 * alphaSq;
                    else if (dk == 0 && planar == 2) val = 1.0 - 4.0 * alphaSq;
                    else if (dk != 0 && planar == 0) val = -8.0 + 8.0 * alphaSq;
                    else if (dk != 0 && planar == 1) val = -2.0 - alphaSq;
                    else val = -0.5 - alphaSq;
                    trips.push_back({center, u, val});
                    if (u != center && planar + std::abs(dk) == 1) g.cols.push_back(u);
                }
        std::sort(g.cols.begin(), g.cols.end());
        g.offsets[static_cast<std::size_t>(v) + 1] = static_cast<Index>(g.cols.size());
    }
    return {SparseMatrix::fromTriplets(n, n, std::move(trips)), std::move(g)};
}

bool criterion3() {
    bool ok = true;
    const Index center = 13;

    // exact zero on the published stencil values, every dyadic alpha^2
    for (double alphaSq : {1.0, 1.25, 1.5, 2.0, 4.0, 9.0, 81.0, 6561.0}) {
        auto [A, g] = stencilBlock(alphaSq);
        FilteredMatrix diag = filterDiagonalLump(A, g);
        if (diag.tildeA.at(center, center) != 0.0) {
            std::cout << "  diagonal lumping at alpha^2 " << alphaSq << " gave diagonal "
                      << diag.tildeA.at(center, center) << ", expected exact 0\n";
            ok = false;
        }
    }
    // strictly positive distributed diagonal for alpha in (1, sqrt(2))
    for (double alphaSq : {1.0625, 1.25, 1.5, 1.9375}) {
        auto [A, g] = stencilBlock(alphaSq);
        FilteredMatrix dist = filterDistributedLump(A, g);
        if (!(dist.tildeA.at(center, center) > 0.0)) {
            std::cout << "  distributed lumping at alpha^2 " << alphaSq << " gave diagonal "
                      << dist.tildeA.at(center, center) << ", expected > 0\n";
            ok = false;
        }
    }

    // the quadrature-assembled path reproduces the same cancellation to
    // machine precision
    for (double alpha : {1.0, 1.2, 3.0}) {
        Mesh mesh = buildMesh(uniaxialStretchSpec(3, 4, 1.0, alpha));
        SparseMatrix A = assembleFull(mesh);
        StrengthGraph g = axisOnlyGraph(mesh, A);
        Index c = mesh.vertexId(2, 2, 2);
        FilteredMatrix diag = filterDiagonalLump(A, g);
        double rel = std::abs(diag.tildeA.at(c, c)) / A.at(c, c);
        if (rel > 1e-13) {
            std::cout << "  assembled-path diagonal at alpha " << alpha << " off by " << rel
                      << " relative\n";
            ok = false;
        }
        if (alpha > 1.0 && alpha < std::sqrt(2.0)) {
            FilteredMatrix dist = filterDistributedLump(A, g);
            if (!(dist.tildeA.at(c, c) > 0.0)) ok = false;
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 4: sign and row-sum preservation on randomized matrices that
// satisfy the lumping hypotheses

struct RandomLumpingCase {
    SparseMatrix A;
    StrengthGraph g;
};

RandomLumpingCase makeLumpingCase(std::uint64_t seed) {
    Lcg64 rng(seed);
    const Index n = 4 + static_cast<Index>(rng.next() % 9);
    std::vector<Triplet> trips;
    StrengthGraph g;
    g.nRows = n;
    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);

    for (Index i = 0; i < n; ++i) {
        std::set<Index> offdiag;
        const Index want = 2 + static_cast<Index>(rng.next() % 4);
        while (static_cast<Index>(offdiag.size()) < std::min(want, n - 1)) {
            Index j = static_cast<Index>(rng.next() % static_cast<std::uint64_t>(n));
            if (j != i) offdiag.insert(j);
        }
        double offSum = 0.0;
        std::vector<std::pair<Index, double>> entries;
        bool haveRetainedNegative = false;
        Index idx = 0;
        for (Index j : offdiag) {
            double v = rng.uniform();                 // mixed signs
            bool retain = idx == 0 || rng.next() % 2 == 0;
            if (idx == 0) v = -std::abs(v) - 0.1;     // guaranteed retained negative
            if (retain && v < 0.0) haveRetainedNegative = true;
            entries.emplace_back(j, v);
            if (retain) g.cols.push_back(j);
            offSum += v;
            ++idx;
        }
        (void)haveRetainedNegative;
        std::sort(g.cols.begin() + g.offsets[static_cast<std::size_t>(i)], g.cols.end());
        g.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(g.cols.size());

        // positive diagonal, non-negative row sum (exactly zero half the time)
        double slack = rng.next() % 2 == 0 ? 0.0 : std::abs(rng.uniform());
        double diag = -offSum + slack;
        if (diag <= 0.0) diag = std::abs(diag) + 0.5;
        for (auto [j, v] : entries) trips.push_back({i, j, v});
        trips.push_back({i, i, diag});
    }
    return {SparseMatrix::fromTriplets(n, n, std::move(trips)), std::move(g)};
}

bool criterion4() {
    const int cases = 1000;
    double worstRowSum = 0.0;
    double minFactor = std::numeric_limits<double>::infinity();
    for (int c = 0; c < cases; ++c) {
        RandomLumpingCase tc = makeLumpingCase(1000 + static_cast<std::uint64_t>(c));
        FilteredMatrix f = filterDistributedLump(tc.A, tc.g);

        DenseVector sumA = rowSums(tc.A);
        DenseVector sumT = rowSums(f.tildeA);
        for (Index i = 0; i < tc.A.nRows(); ++i) {
            double scale = 0.0;
            for (double v : tc.A.rowVals(i)) scale += std::abs(v);
            double dev = std::abs(sumT[static_cast<std::size_t>(i)] - sumA[static_cast<std::size_t>(i)]) /
                         std::max(scale, 1e-300);
            worstRowSum = std::max(worstRowSum, dev);
        }

        // exact sign preservation on retained entries
        for (Index i = 0; i < tc.A.nRows(); ++i) {
            for (std::size_t p = 0; p < tc.A.rowCols(i).size(); ++p) {
                Index j = tc.A.rowCols(i)[p];
                if (j != i && !tc.g.retained(i, j)) continue;
                double a = tc.A.rowVals(i)[p];
                double t = f.tildeA.at(i, j);
                if (a > 0.0 && !(t > 0.0)) return false;
                if (a < 0.0 && !(t < 0.0)) return false;
            }
        }

        CorollaryReport rep = verifyCorollary(tc.A, f, tc.g);
        if (!rep.holds) {
            std::cout << "  corollary violated, seed " << 1000 + c << "\n";
            return false;
        }
        if (rep.rowsChecked > 0) minFactor = std::min(minFactor, rep.minFactor);
    }
    std::cout << "  " << cases << " cases, worst row-sum deviation " << worstRowSum
              << ", min corollary factor " << minFactor << "\n";
    return worstRowSum <= 1e-12 && minFactor > 1.0;
}

// ---------------------------------------------------------------------------
// criterion 5: cut-drop properties on fuzzed rows

bool criterion5() {
    const int rows = 500;
    for (int c = 0; c < rows; ++c) {
        Lcg64 rng(9000 + static_cast<std::uint64_t>(c));
        const Index n = 3 + static_cast<Index>(rng.next() % 10);
        std::vector<Triplet> trips;
        for (Index i = 0; i < n; ++i) {
            trips.push_back({i, i, 2.0 + std::abs(rng.uniform())});
            for (Index j = 0; j < n; ++j)
                if (j != i && rng.next() % 3 != 0) trips.push_back({i, j, rng.uniform()});
        }
        SparseMatrix A = SparseMatrix::fromTriplets(n, n, std::move(trips));
        const double thetaG = 0.1 + 0.85 * std::abs(rng.uniform());

        ScaledEntries v = scaleSymmetricSA(A);
        StrengthGraph g = classifyCutDrop(v, thetaG);

        // scale invariance: pattern equality under A -> gamma A
        for (double gamma : {1e-6, 0.5, 3.0, 1e8}) {
            SparseMatrix B = rowScale(A, DenseVector(static_cast<std::size_t>(n), gamma));
            StrengthGraph gb = classifyCutDrop(scaleSymmetricSA(B), thetaG);
            if (gb.offsets != g.offsets || gb.cols != g.cols) {
                std::cout << "  scale invariance failed, seed " << 9000 + c << " gamma " << gamma
                          << "\n";
                return false;
            }
        }

        for (Index i = 0; i < n; ++i) {
            // at least one retained edge per row with off-diagonals
            Index rowEntries = v.offsets[i + 1] - v.offsets[i];
            Index kept = g.offsets[i + 1] - g.offsets[i];
            if (rowEntries > 0 && kept < 1) {
                std::cout << "  empty retained row, seed " << 9000 + c << "\n";
                return false;
            }
            // retained set is a prefix of the descending sort
            std::vector<std::pair<double, Index>> sorted;
            for (Index p = v.offsets[i]; p < v.offsets[i + 1]; ++p)
                sorted.emplace_back(v.vals[static_cast<std::size_t>(p)],
                                    v.cols[static_cast<std::size_t>(p)]);
            std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            std::set<Index> keptSet(g.cols.begin() + g.offsets[i], g.cols.begin() + g.offsets[i + 1]);
            for (Index p = 0; p < kept; ++p) {
                if (!keptSet.count(sorted[static_cast<std::size_t>(p)].second)) {
                    std::cout << "  retained set is not a sort prefix, seed " << 9000 + c << "\n";
                    return false;
                }
            }
        }
    }
    std::cout << "  " << rows << " fuzzed rows\n";
    return true;
}

// ---------------------------------------------------------------------------
// criterion 6: semi-coarsening iteration table on the 82^3 grid

bool criterion6() {
    bool ok = true;
    const std::vector<double> alphas = {1.0, 3.0, 9.0, 27.0, 81.0};
    const std::vector<Index> semi1Expected = {17, 17, 22, 23, 23};
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        SolveReport rep = geoSolve(82, alphas[k], 1.0, 4);
        bool pass = rep.converged && std::abs(rep.iterations - semi1Expected[k]) <= 3;
        std::cout << "  semi_1 alpha " << alphas[k] << ": " << rep.iterations << " iterations"
                  << " (expected " << semi1Expected[k] << " +/- 3)"
                  << (pass ? "" : "  <-- out of tolerance") << std::endl;
        ok = ok && pass;
    }
    {
        SolveReport rep = geoSolve(82, 81.0, std::numeric_limits<double>::infinity(), 4);
        bool pass = rep.converged && std::abs(rep.iterations - 394.0) <= 0.10 * 394.0;
        std::cout << "  semi_inf alpha 81: " << rep.iterations
                  << " iterations (expected 394 +/- 10%)" << (pass ? "" : "  <-- out of tolerance")
                  << std::endl;
        ok = ok && pass;
    }
    {
        SolveReport rep = geoSolve(82, 9.0, 9.0, 4);
        bool pass = rep.converged && std::abs(rep.iterations - 120.0) <= 0.10 * 120.0;
        std::cout << "  semi_9 alpha 9: " << rep.iterations
                  << " iterations (expected 120 +/- 10%)" << (pass ? "" : "  <-- out of tolerance")
                  << std::endl;
        ok = ok && pass;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 7: stretch-sweep property checks on a 5x5 subsample (2D family)

ExperimentConfig sweepConfig(DropConfig drop) {
    ExperimentConfig cfg;
    cfg.family = Family::Tensor2d;
    cfg.gamma1 = logSpace(0.5, 200.0, 5);
    cfg.gamma2 = cfg.gamma1;
    cfg.drop = drop;
    cfg.maxIt = 500;
    return cfg;
}

bool criterion7() {
    bool ok = true;

    DropConfig best;  // DLap/Sgn/Val, theta 0.16, distributed
    best.theta = 0.16;

    DropConfig traditional;  // A/SA/Val, theta 0.16, distributed
    traditional.soc = SocKind::SystemMatrix;
    traditional.scaling = ScalingKind::SymmetricSA;
    traditional.theta = 0.16;

    DropConfig bestDiag = best;
    bestDiag.lumping = LumpingKind::Diagonal;

    std::cout << "  running DLap/Sgn/Val theta 0.16 distributed..." << std::endl;
    auto bestRows = runSweep(sweepConfig(best));
    std::cout << "  running A/SA/Val theta 0.16 distributed..." << std::endl;
    auto tradRows = runSweep(sweepConfig(traditional));
    std::cout << "  running DLap/Sgn/Val theta 0.16 diagonal..." << std::endl;
    auto diagRows = runSweep(sweepConfig(bestDiag));

    // (a) the recommended combination converges everywhere with cost <= 60
    for (const SweepRow& row : bestRows) {
        if (row.status != "converged" || !row.cost || *row.cost > 60.0) {
            std::cout << "  (a) failed at gamma (" << row.gamma1 << ", " << row.gamma2
                      << "): status " << row.status << " cost "
                      << (row.cost ? std::to_string(*row.cost) : "-") << "\n";
            ok = false;
        }
    }
    std::cout << "  (a) checked " << bestRows.size() << " points" << std::endl;

    // (b) plain SA on A costs strictly more wherever stretching is large
    for (std::size_t i = 0; i < bestRows.size(); ++i) {
        if (std::max(bestRows[i].gamma1, bestRows[i].gamma2) < 20.0) continue;
        double bestCost = bestRows[i].cost ? *bestRows[i].cost
                                           : std::numeric_limits<double>::infinity();
        double tradCost = tradRows[i].cost ? *tradRows[i].cost
                                           : std::numeric_limits<double>::infinity();
        if (!(tradCost > bestCost)) {
            std::cout << "  (b) failed at gamma (" << bestRows[i].gamma1 << ", "
                      << bestRows[i].gamma2 << "): A/SA/Val cost " << tradCost
                      << " vs DLap/Sgn/Val " << bestCost << "\n";
            ok = false;
        }
    }
    std::cout << "  (b) compared stretched points" << std::endl;

    // (c) distributed lumping does not regress unflagged points by > 10%
    for (std::size_t i = 0; i < bestRows.size(); ++i) {
        if (diagRows[i].flaggedRows > 0) continue;
        if (diagRows[i].status != "converged" || bestRows[i].status != "converged") continue;
        double limit = 1.10 * static_cast<double>(diagRows[i].iterations) + 1e-9;
        if (static_cast<double>(bestRows[i].iterations) > limit) {
            std::cout << "  (c) failed at gamma (" << bestRows[i].gamma1 << ", "
                      << bestRows[i].gamma2 << "): " << diagRows[i].iterations << " -> "
                      << bestRows[i].iterations << " iterations\n";
            ok = false;
        }
    }
    std::cout << "  (c) compared lumping modes" << std::endl;

    // (d) complexity window of the three theta = 0.32 combinations
    std::vector<DropConfig> combos(3);
    combos[0].soc = SocKind::SystemMatrix;  // A/Sgn/Val
    combos[0].theta = 0.32;
    combos[1].theta = 0.32;                 // DLap/Sgn/Val
    combos[2].scaling = ScalingKind::SymmetricSA;  // DLap/SA/Gap
    combos[2].classifier = ClassifierKind::CutDrop;
    combos[2].thetaG = 0.32;
    for (DropConfig& c : combos) c.lumping = LumpingKind::Diagonal;
    for (const DropConfig& c : combos) {
        std::cout << "  running " << c.label() << " theta 0.32..." << std::endl;
        auto rows = runSweep(sweepConfig(c));
        double lo = 10.0, hi = 0.0;
        for (const SweepRow& row : rows) {
            if (row.levels == 0) continue;  // setup failures carry no complexity
            lo = std::min(lo, row.complexity);
            hi = std::max(hi, row.complexity);
            if (row.complexity < 1.05 || row.complexity > 1.50) {
                std::cout << "  (d) " << c.label() << " complexity " << row.complexity
                          << " outside [1.05, 1.50] at gamma (" << row.gamma1 << ", "
                          << row.gamma2 << ")\n";
                ok = false;
            }
        }
        std::cout << "  (d) " << c.label() << " complexity range [" << lo << ", " << hi << "]"
                  << std::endl;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 8: the two-close-vertices line mesh

std::pair<SparseMatrix, std::vector<std::array<double, 3>>> figureFiveLine() {
    const std::vector<double> xs = {0.0, 1.0, 2.0, 2.1, 3.1, 4.1};
    const Index n = static_cast<Index>(xs.size());
    std::vector<Triplet> trips;
    for (Index i = 0; i < n; ++i) {
        trips.push_back({i, i, 2.0});
        if (i > 0) trips.push_back({i, i - 1, -1.0});
        if (i + 1 < n) trips.push_back({i, i + 1, -1.0});
    }
    std::vector<std::array<double, 3>> coords;
    for (double x : xs) coords.push_back({x, 0.0, 0.0});
    return {SparseMatrix::fromTriplets(n, n, std::move(trips)), coords};
}

bool criterion8() {
    auto [A, coords] = figureFiveLine();
    const Index i = 1, j = 2, k = 3, l = 4;

    DropConfig saCfg;
    saCfg.soc = SocKind::DistanceLaplacian;
    saCfg.scaling = ScalingKind::SymmetricSA;
    saCfg.classifier = ClassifierKind::Threshold;
    saCfg.theta = 0.5;
    StrengthGraph saGraph = buildStrength(A, coords, saCfg);

    bool ok = true;
    if (!saGraph.retained(j, k) || !saGraph.retained(k, j) || saGraph.retained(i, j) ||
        saGraph.retained(j, i) || saGraph.retained(k, l) || saGraph.retained(l, k)) {
        std::cout << "  SA graph does not isolate the close pair\n";
        ok = false;
    }

    // j and k share an aggregate under every scan order
    std::vector<Index> order(static_cast<std::size_t>(A.nRows()));
    for (std::size_t p = 0; p < order.size(); ++p) order[p] = static_cast<Index>(p);
    int permutations = 0;
    do {
        Aggregation agg = aggregate(saGraph, order);
        if (agg.assignment[static_cast<std::size_t>(j)] !=
            agg.assignment[static_cast<std::size_t>(k)]) {
            std::cout << "  j,k split under some scan order\n";
            ok = false;
            break;
        }
        ++permutations;
    } while (std::next_permutation(order.begin(), order.end()));
    std::cout << "  " << permutations << " scan orders checked\n";

    // signed classical: split decisions on the directed edges
    DropConfig sgnCfg;
    sgnCfg.soc = SocKind::DistanceLaplacian;
    sgnCfg.scaling = ScalingKind::SignedClassical;
    sgnCfg.classifier = ClassifierKind::Threshold;
    sgnCfg.theta = 0.5;
    StrengthGraph sgnGraph = buildStrength(A, coords, sgnCfg);
    if (!sgnGraph.retained(i, j) || sgnGraph.retained(j, i) || !sgnGraph.retained(l, k) ||
        sgnGraph.retained(k, l) || !sgnGraph.retained(j, k) || !sgnGraph.retained(k, j)) {
        std::cout << "  signed classical directed pattern wrong\n";
        ok = false;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// criterion 9: Galerkin dense oracle and spectral oracle

bool criterion9() {
    // RAP against a dense oracle on a 100-dof FE system
    Mesh mesh = buildMesh(uniaxialStretchSpec(2, 11, 1.0, 3.0));
    AssembledSystem sys = assemble(mesh);
    DropConfig cfg;
    cfg.theta = 0.16;
    StrengthGraph g = buildStrength(sys.A, sys.freeCoords, cfg);
    FilteredMatrix f = filterDistributedLump(sys.A, g);
    Aggregation agg = aggregate(g);
    auto [P, omega] = smoothProlongator(f, tentativeProlongator(agg));
    (void)omega;
    SparseMatrix coarse = galerkinTripleProduct(P, sys.A);

    const Index n = sys.A.nRows(), c = P.nCols();
    std::vector<std::vector<double>> dP(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(c), 0.0));
    for (Index r = 0; r < n; ++r)
        for (std::size_t p = 0; p < P.rowCols(r).size(); ++p)
            dP[static_cast<std::size_t>(r)][static_cast<std::size_t>(P.rowCols(r)[p])] =
                P.rowVals(r)[p];
    double maxDiff = 0.0, scale = 0.0;
    for (Index a = 0; a < c; ++a)
        for (Index b = 0; b < c; ++b) {
            double want = 0.0;
            for (Index r = 0; r < n; ++r) {
                if (dP[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)] == 0.0) continue;
                double arow = 0.0;
                for (std::size_t p = 0; p < sys.A.rowCols(r).size(); ++p)
                    arow += sys.A.rowVals(r)[p] *
                            dP[static_cast<std::size_t>(sys.A.rowCols(r)[p])][static_cast<std::size_t>(b)];
                want += dP[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)] * arow;
            }
            maxDiff = std::max(maxDiff, std::abs(coarse.at(a, b) - want));
            scale = std::max(scale, std::abs(want));
        }
    bool rapOk = maxDiff <= 1e-12 * std::max(scale, 1.0);
    std::cout << "  RAP max deviation " << maxDiff << " on " << n << " dofs\n";

    // spectral oracle: 1D Poisson Jacobi-scaled
    const Index m = 64;
    std::vector<Triplet> trips;
    for (Index r = 0; r < m; ++r) {
        trips.push_back({r, r, 2.0});
        if (r > 0) trips.push_back({r, r - 1, -1.0});
        if (r + 1 < m) trips.push_back({r, r + 1, -1.0});
    }
    SparseMatrix T = SparseMatrix::fromTriplets(m, m, std::move(trips));
    double est = signedDominantEig(DenseVector(static_cast<std::size_t>(m), 2.0), T);
    double analytic = 1.0 - std::cos(static_cast<double>(m) * M_PI / (m + 1.0));
    bool eigOk = std::abs(est - analytic) / analytic <= 0.05;
    std::cout << "  rho estimate " << est << " vs analytic " << analytic << "\n";
    return rapOk && eigOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--criteria") == 0 && a + 1 < argc) {
            std::string list = argv[a + 1];
            for (std::size_t pos = 0; pos < list.size();) {
                std::size_t comma = list.find(',', pos);
                selected.insert(std::stoi(list.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            ++a;
        }
    }
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    if (selected.count(1)) report(1, criterion1(), "interior stencils match the closed forms");
    if (selected.count(2)) report(2, criterion2(), "isotropic criterion constants 0.0625 / 0.125");
    if (selected.count(3)) report(3, criterion3(), "lumping pathology on the axis-only pattern");
    if (selected.count(4)) report(4, criterion4(), "sign and row-sum preservation, 1000 cases");
    if (selected.count(5)) report(5, criterion5(), "cut-drop properties, 500 fuzzed rows");
    if (selected.count(6)) report(6, criterion6(), "semi-coarsening iteration table, 82^3 grid");
    if (selected.count(7)) report(7, criterion7(), "stretch-sweep property checks, 5x5 subsample");
    if (selected.count(8)) report(8, criterion8(), "two-close-vertices line mesh patterns");
    if (selected.count(9)) report(9, criterion9(), "Galerkin and spectral oracles");

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all selected criteria passed" << std::endl;
    return 0;
}
