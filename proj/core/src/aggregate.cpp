#include "dropmg/aggregate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dropmg {

namespace {

// Undirected closure of the strength graph as sorted adjacency lists.
std::pair<std::vector<Index>, std::vector<Index>> undirectedAdjacency(const StrengthGraph& g) {
    std::vector<Index> counts(static_cast<std::size_t>(g.nRows) + 1, 0);
    for (Index i = 0; i < g.nRows; ++i) {
        for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p) {
            Index j = g.cols[static_cast<std::size_t>(p)];
            ++counts[static_cast<std::size_t>(i) + 1];
            ++counts[static_cast<std::size_t>(j) + 1];
        }
    }
    std::partial_sum(counts.begin(), counts.end(), counts.begin());
    std::vector<Index> adj(static_cast<std::size_t>(counts.back()));
    std::vector<Index> cursor(counts.begin(), counts.end() - 1);
    for (Index i = 0; i < g.nRows; ++i) {
        for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p) {
            Index j = g.cols[static_cast<std::size_t>(p)];
            adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)]++)] = j;
            adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(j)]++)] = i;
        }
    }
    std::vector<Index> offsets(static_cast<std::size_t>(g.nRows) + 1, 0);
    Index write = 0;
    for (Index i = 0; i < g.nRows; ++i) {
        Index b = counts[static_cast<std::size_t>(i)];
        Index e = counts[static_cast<std::size_t>(i) + 1];
        std::sort(adj.begin() + b, adj.begin() + e);
        Index uniqueEnd = write;
        for (Index p = b; p < e; ++p) {
            Index j = adj[static_cast<std::size_t>(p)];
            if (j == i) continue;  // ignore self loops
            if (uniqueEnd == write || adj[static_cast<std::size_t>(uniqueEnd - 1)] != j)
                adj[static_cast<std::size_t>(uniqueEnd++)] = j;
        }
        write = uniqueEnd;
        offsets[static_cast<std::size_t>(i) + 1] = write;
    }
    adj.resize(static_cast<std::size_t>(write));
    return {std::move(offsets), std::move(adj)};
}

}  // namespace

Aggregation aggregate(const StrengthGraph& g) {
    std::vector<Index> order(static_cast<std::size_t>(g.nRows));
    std::iota(order.begin(), order.end(), Index{0});
    return aggregate(g, order);
}

Aggregation aggregate(const StrengthGraph& g, std::span<const Index> scanOrder) {
    if (g.nRows <= 0) throw std::invalid_argument("aggregate: empty strength graph");
    if (static_cast<Index>(scanOrder.size()) != g.nRows)
        throw std::invalid_argument("aggregate: scan order length mismatch");

    auto [uOff, uAdj] = undirectedAdjacency(g);
    Aggregation agg;
    agg.nFine = g.nRows;
    agg.assignment.assign(static_cast<std::size_t>(g.nRows), kUnaggregated);

    auto assigned = [&](Index v) { return agg.assignment[static_cast<std::size_t>(v)] >= 0; };

    // Phase 1: root selection and initial aggregates.
    for (Index v : scanOrder) {
        if (assigned(v)) continue;
        bool nearAggregate = false;
        for (Index p = uOff[v]; p < uOff[v + 1] && !nearAggregate; ++p)
            if (assigned(uAdj[static_cast<std::size_t>(p)])) nearAggregate = true;
        if (nearAggregate) continue;
        Index id = agg.nAggregates++;
        agg.rootVertex.push_back(v);
        agg.assignment[static_cast<std::size_t>(v)] = id;
        for (Index p = g.offsets[v]; p < g.offsets[v + 1]; ++p) {
            Index j = g.cols[static_cast<std::size_t>(p)];
            if (!assigned(j)) agg.assignment[static_cast<std::size_t>(j)] = id;
        }
    }

    // Phase 2: attach stragglers to the best-connected neighboring aggregate.
    std::map<Index, Index> connections;
    for (Index v : scanOrder) {
        if (assigned(v)) continue;
        connections.clear();
        for (Index p = g.offsets[v]; p < g.offsets[v + 1]; ++p) {
            Index j = g.cols[static_cast<std::size_t>(p)];
            if (assigned(j)) ++connections[agg.assignment[static_cast<std::size_t>(j)]];
        }
        for (Index p = uOff[v]; p < uOff[v + 1]; ++p) {
            Index j = uAdj[static_cast<std::size_t>(p)];
            if (!assigned(j)) continue;
            if (g.retained(j, v)) ++connections[agg.assignment[static_cast<std::size_t>(j)]];
        }
        Index bestId = kUnaggregated, bestCount = 0;
        for (auto [id, count] : connections) {
            if (count > bestCount) {  // ties resolve to the lowest id via map order
                bestCount = count;
                bestId = id;
            }
        }
        if (bestId >= 0) agg.assignment[static_cast<std::size_t>(v)] = bestId;
    }

    // Phase 3: cluster whatever is left through the undirected closure.
    std::vector<Index> stack;
    for (Index v : scanOrder) {
        if (assigned(v)) continue;
        Index id = agg.nAggregates++;
        agg.rootVertex.push_back(v);
        stack.assign(1, v);
        agg.assignment[static_cast<std::size_t>(v)] = id;
        while (!stack.empty()) {
            Index u = stack.back();
            stack.pop_back();
            for (Index p = uOff[u]; p < uOff[u + 1]; ++p) {
                Index j = uAdj[static_cast<std::size_t>(p)];
                if (!assigned(j)) {
                    agg.assignment[static_cast<std::size_t>(j)] = id;
                    stack.push_back(j);
                }
            }
        }
    }
    return agg;
}

SparseMatrix tentativeProlongator(const Aggregation& agg) {
    std::vector<Index> offsets(static_cast<std::size_t>(agg.nFine) + 1);
    std::vector<Index> cols(static_cast<std::size_t>(agg.nFine));
    std::vector<double> vals(static_cast<std::size_t>(agg.nFine), 1.0);
    for (Index i = 0; i < agg.nFine; ++i) {
        Index id = agg.assignment[static_cast<std::size_t>(i)];
        if (id < 0)
            throw std::invalid_argument("tentativeProlongator: vertex " + std::to_string(i) +
                                        " is unassigned");
        offsets[static_cast<std::size_t>(i)] = i;
        cols[static_cast<std::size_t>(i)] = id;
    }
    offsets[static_cast<std::size_t>(agg.nFine)] = agg.nFine;
    return SparseMatrix(agg.nFine, agg.nAggregates, std::move(offsets), std::move(cols),
                        std::move(vals));
}

void writeAggregates(std::ostream& os, const Aggregation& agg) {
    for (Index id : agg.assignment) os << id << "\n";
}

}  // namespace dropmg
