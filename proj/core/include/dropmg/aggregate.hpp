#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dropmg/sparse.hpp"
#include "dropmg/strength.hpp"

namespace dropmg {

constexpr Index kUnaggregated = -1;

struct Aggregation {
    Index nFine = 0;
    Index nAggregates = 0;
    std::vector<Index> assignment;   // per-vertex aggregate id
    std::vector<Index> rootVertex;   // per-aggregate seed vertex
};

/// Greedy aggregation of the strength graph.
///
/// Phase 1 scans vertices in the given order; a vertex roots a new aggregate
/// when it is unassigned and not adjacent (either edge direction) to an
/// aggregated vertex, grabbing its unassigned strong out-neighbors.
/// Phase 2 joins each remaining vertex that touches an aggregate to the
/// neighbor aggregate with the most connections (ties to the lowest id).
/// Phase 3 groups leftover vertices into connected clusters; isolated
/// vertices become singletons.
Aggregation aggregate(const StrengthGraph& g);
Aggregation aggregate(const StrengthGraph& g, std::span<const Index> scanOrder);

/// Boolean aggregate-membership matrix, one unit entry per row.
SparseMatrix tentativeProlongator(const Aggregation& agg);

/// Per-vertex aggregate id, one line per vertex.
void writeAggregates(std::ostream& os, const Aggregation& agg);

}  // namespace dropmg
