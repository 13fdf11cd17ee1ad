// Microbenchmarks for the kernels that dominate setup and solve time.

#include <benchmark/benchmark.h>

#include "dropmg/assemble.hpp"
#include "dropmg/hierarchy.hpp"
#include "dropmg/mesh.hpp"
#include "dropmg/strength.hpp"

namespace {

using namespace dropmg;

AssembledSystem makeSystem3d(Index cells) {
    Mesh mesh = buildMesh(uniaxialStretchSpec(3, cells, 1.0, 9.0));
    return assemble(mesh);
}

void BM_Spmv(benchmark::State& state) {
    AssembledSystem sys = makeSystem3d(state.range(0));
    DenseVector x = randomVector(sys.A.nCols(), 1);
    DenseVector y(x.size());
    for (auto _ : state) {
        spmv(sys.A, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * sys.A.nnz());
}
BENCHMARK(BM_Spmv)->Arg(16)->Arg(32);

void BM_Assemble(benchmark::State& state) {
    Mesh mesh = buildMesh(uniaxialStretchSpec(3, state.range(0), 1.0, 9.0));
    for (auto _ : state) {
        SparseMatrix A = assembleFull(mesh);
        benchmark::DoNotOptimize(A.nnz());
    }
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32);

void BM_Galerkin(benchmark::State& state) {
    AssembledSystem sys = makeSystem3d(state.range(0));
    DropConfig cfg;
    cfg.theta = 0.16;
    StrengthGraph g = buildStrength(sys.A, sys.freeCoords, cfg);
    FilteredMatrix f = filterDistributedLump(sys.A, g);
    Aggregation agg = aggregate(g);
    auto [P, omega] = smoothProlongator(f, tentativeProlongator(agg));
    benchmark::DoNotOptimize(omega);
    for (auto _ : state) {
        SparseMatrix Ac = galerkinTripleProduct(P, sys.A);
        benchmark::DoNotOptimize(Ac.nnz());
    }
}
BENCHMARK(BM_Galerkin)->Arg(16)->Arg(32);

void BM_BuildStrength(benchmark::State& state) {
    AssembledSystem sys = makeSystem3d(state.range(0));
    DropConfig cfg;
    for (auto _ : state) {
        StrengthGraph g = buildStrength(sys.A, sys.freeCoords, cfg);
        benchmark::DoNotOptimize(g.nEdges());
    }
}
BENCHMARK(BM_BuildStrength)->Arg(16)->Arg(32);

void BM_VCycle(benchmark::State& state) {
    AssembledSystem sys = makeSystem3d(state.range(0));
    DropConfig cfg;
    HierarchyLimits limits;
    limits.coarseSize = 200;
    Hierarchy h = buildHierarchy(sys.A, sys.freeCoords, cfg, {}, limits);
    DenseVector b = randomVector(sys.A.nRows(), 2);
    DenseVector x;
    for (auto _ : state) {
        vcycle(h, b, x);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_VCycle)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
