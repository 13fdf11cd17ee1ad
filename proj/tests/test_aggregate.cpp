#include <doctest.h>

#include <stdexcept>

#include <set>

#include "dropmg/aggregate.hpp"

using namespace dropmg;

namespace {

StrengthGraph pathGraph(Index n) {
    StrengthGraph g;
    g.nRows = n;
    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Index i = 0; i < n; ++i) {
        if (i > 0) g.cols.push_back(i - 1);
        if (i + 1 < n) g.cols.push_back(i + 1);
        g.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(g.cols.size());
    }
    return g;
}

StrengthGraph emptyGraph(Index n) {
    StrengthGraph g;
    g.nRows = n;
    g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    return g;
}

}  // namespace

TEST_CASE("1d path aggregation, hand-traced phases") {
    // ascending scan: roots at 0, 3, 6; phase 2 attaches vertex 8
    Aggregation agg = aggregate(pathGraph(9));
    CHECK(agg.nAggregates == 3);
    CHECK(agg.rootVertex == std::vector<Index>{0, 3, 6});
    CHECK(agg.assignment == std::vector<Index>{0, 0, 1, 1, 1, 2, 2, 2, 2});
}

TEST_CASE("all-weak graph yields singletons") {
    Aggregation agg = aggregate(emptyGraph(5));
    CHECK(agg.nAggregates == 5);
    for (Index v = 0; v < 5; ++v) CHECK(agg.assignment[static_cast<std::size_t>(v)] == v);

    SparseMatrix Pt = tentativeProlongator(agg);
    CHECK(Pt.colIndices() == SparseMatrix::identity(5).colIndices());
    CHECK(Pt.values() == SparseMatrix::identity(5).values());
}

TEST_CASE("tentative prolongator shape and row property") {
    Aggregation agg;
    agg.nFine = 9;
    agg.nAggregates = 3;
    agg.assignment = {0, 0, 0, 1, 1, 1, 2, 2, 2};
    agg.rootVertex = {1, 4, 7};
    SparseMatrix Pt = tentativeProlongator(agg);
    CHECK(Pt.nRows() == 9);
    CHECK(Pt.nCols() == 3);

    // exactly one unit entry per row, column sums equal aggregate sizes
    DenseVector ones(3, 1.0);
    CHECK(spmv(Pt, ones) == DenseVector(9, 1.0));
    DenseVector colSums = rowSums(transpose(Pt));
    CHECK(colSums == DenseVector{3.0, 3.0, 3.0});

    Aggregation incomplete = agg;
    incomplete.assignment[4] = kUnaggregated;
    CHECK_THROWS_AS(tentativeProlongator(incomplete), std::invalid_argument);
}

TEST_CASE("partition invariants on random graphs") {
    for (std::uint64_t seed : {11ULL, 29ULL, 57ULL}) {
        Lcg64 rng(seed);
        const Index n = 60;
        StrengthGraph g;
        g.nRows = n;
        g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
        for (Index i = 0; i < n; ++i) {
            std::set<Index> nbrs;
            for (int e = 0; e < 3; ++e) {
                Index j = static_cast<Index>(rng.next() % static_cast<std::uint64_t>(n));
                if (j != i && rng.next() % 4 != 0) nbrs.insert(j);
            }
            for (Index j : nbrs) g.cols.push_back(j);
            g.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(g.cols.size());
        }

        Aggregation agg = aggregate(g);
        std::vector<Index> sizes(static_cast<std::size_t>(agg.nAggregates), 0);
        for (Index v = 0; v < n; ++v) {
            Index id = agg.assignment[static_cast<std::size_t>(v)];
            REQUIRE(id >= 0);
            REQUIRE(id < agg.nAggregates);
            ++sizes[static_cast<std::size_t>(id)];
        }
        for (Index s : sizes) CHECK(s >= 1);

        // determinism
        Aggregation again = aggregate(g);
        CHECK(again.assignment == agg.assignment);
    }
}

TEST_CASE("phase 2 prefers the best-connected aggregate") {
    // vertices 0-1 and 3-4 form two aggregates; vertex 2 sees one edge to
    // aggregate 0 and two to aggregate 1
    StrengthGraph g;
    g.nRows = 5;
    g.offsets = {0, 1, 2, 5, 6, 7};
    g.cols = {1, 0, 1, 3, 4, 4, 3};
    Aggregation agg = aggregate(g);
    CHECK(agg.assignment[2] == agg.assignment[3]);
    CHECK(agg.assignment[2] != agg.assignment[0]);
}
