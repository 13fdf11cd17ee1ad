#include "dropmg/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dropmg {

namespace {

// Gauss points for the 2-point rule on [-1, 1]; both weights are 1.
constexpr double kGp = 0.57735026918962576451;  // 1/sqrt(3)

// Reference node coordinates, counter-clockwise from the low corner with the
// front face first.
constexpr int kNodeSign[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                                 {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};

void elementStiffness(int dim, const double h[3], double* K) {
    const int npe = 1 << dim;
    std::fill(K, K + npe * npe, 0.0);

    double detJ = 1.0;
    double invh2[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) {
        if (!(h[d] > 0.0)) throw std::invalid_argument("elementStiffness: non-positive spacing");
        detJ *= h[d] / 2.0;
        invh2[d] = 4.0 / (h[d] * h[d]);
    }

    const int nGp = 1 << dim;
    double grad[8][3];
    for (int gp = 0; gp < nGp; ++gp) {
        double xi[3] = {0.0, 0.0, 0.0};
        for (int d = 0; d < dim; ++d) xi[d] = (gp >> d & 1) ? kGp : -kGp;
        for (int a = 0; a < npe; ++a) {
            for (int d = 0; d < dim; ++d) {
                double g = 0.5 * kNodeSign[a][d];
                for (int e = 0; e < dim; ++e)
                    if (e != d) g *= 0.5 * (1.0 + kNodeSign[a][e] * xi[e]);
                grad[a][d] = g;
            }
        }
        for (int a = 0; a < npe; ++a)
            for (int b = 0; b < npe; ++b) {
                double s = 0.0;
                for (int d = 0; d < dim; ++d) s += invh2[d] * grad[a][d] * grad[b][d];
                K[a * npe + b] += detJ * s;
            }
    }
}

}  // namespace

ElemMat elementStiffness1D(double hx) {
    double h[3] = {hx, 0.0, 0.0};
    ElemMat K(4);
    elementStiffness(1, h, K.data());
    return K;
}

ElemMat elementStiffness2D(double hx, double hy) {
    double h[3] = {hx, hy, 0.0};
    ElemMat K(16);
    elementStiffness(2, h, K.data());
    return K;
}

ElemMat elementStiffness3D(double hx, double hy, double hz) {
    double h[3] = {hx, hy, hz};
    ElemMat K(64);
    elementStiffness(3, h, K.data());
    return K;
}

SparseMatrix assembleFull(const Mesh& mesh) {
    const Index nv = mesh.nVertices();
    const int npe = mesh.verticesPerElement;
    const Index ne = static_cast<Index>(mesh.elements.size());

    // vertex -> element adjacency
    std::vector<Index> v2eOff(static_cast<std::size_t>(nv) + 1, 0);
    for (const auto& e : mesh.elements)
        for (int a = 0; a < npe; ++a) ++v2eOff[static_cast<std::size_t>(e[static_cast<std::size_t>(a)]) + 1];
    std::partial_sum(v2eOff.begin(), v2eOff.end(), v2eOff.begin());
    std::vector<Index> v2e(static_cast<std::size_t>(v2eOff.back()));
    {
        std::vector<Index> cursor(v2eOff.begin(), v2eOff.end() - 1);
        for (Index el = 0; el < ne; ++el)
            for (int a = 0; a < npe; ++a) {
                Index v = mesh.elements[static_cast<std::size_t>(el)][static_cast<std::size_t>(a)];
                v2e[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = el;
            }
    }

    // pattern: union of element vertex sets around each vertex
    std::vector<Index> offsets(static_cast<std::size_t>(nv) + 1, 0);
    std::vector<Index> cols;
    {
        std::vector<Index> scratch;
        for (Index v = 0; v < nv; ++v) {
            scratch.clear();
            for (Index p = v2eOff[static_cast<std::size_t>(v)]; p < v2eOff[static_cast<std::size_t>(v) + 1]; ++p) {
                const auto& e = mesh.elements[static_cast<std::size_t>(v2e[static_cast<std::size_t>(p)])];
                for (int a = 0; a < npe; ++a) scratch.push_back(e[static_cast<std::size_t>(a)]);
            }
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            cols.insert(cols.end(), scratch.begin(), scratch.end());
            offsets[static_cast<std::size_t>(v) + 1] = static_cast<Index>(cols.size());
        }
    }
    std::vector<double> vals(cols.size(), 0.0);

    const Index cellsX = std::max<Index>(mesh.pointsPerAxis[0] - 1, 1);
    const Index cellsY = std::max<Index>(mesh.pointsPerAxis[1] - 1, 1);
    double K[64];
    for (Index el = 0; el < ne; ++el) {
        const Index ci = el % cellsX;
        const Index cj = (el / cellsX) % cellsY;
        const Index ck = el / (cellsX * cellsY);
        double h[3] = {0.0, 0.0, 0.0};
        h[0] = mesh.axisWidths[0][static_cast<std::size_t>(ci)];
        if (mesh.dim >= 2) h[1] = mesh.axisWidths[1][static_cast<std::size_t>(cj)];
        if (mesh.dim >= 3) h[2] = mesh.axisWidths[2][static_cast<std::size_t>(ck)];
        elementStiffness(mesh.dim, h, K);

        const auto& e = mesh.elements[static_cast<std::size_t>(el)];
        for (int a = 0; a < npe; ++a) {
            const Index row = e[static_cast<std::size_t>(a)];
            const Index rb = offsets[static_cast<std::size_t>(row)];
            const Index re = offsets[static_cast<std::size_t>(row) + 1];
            for (int b = 0; b < npe; ++b) {
                const Index col = e[static_cast<std::size_t>(b)];
                auto it = std::lower_bound(cols.begin() + rb, cols.begin() + re, col);
                vals[static_cast<std::size_t>(it - cols.begin())] += K[a * npe + b];
            }
        }
    }
    return SparseMatrix(nv, nv, std::move(offsets), std::move(cols), std::move(vals));
}

double manufacturedSolution(int dim, const std::array<double, 3>& x) {
    if (dim == 1) return 1.0 + x[0];
    if (dim == 2) return 1.0 + x[0] + x[1] + x[0] * x[1];
    return 1.0 + x[0] + x[1] + x[2] + x[0] * x[1] + x[0] * x[2] + x[1] * x[2] +
           x[0] * x[1] * x[2];
}

AssembledSystem assemble(const Mesh& mesh) {
    SparseMatrix full = assembleFull(mesh);
    const Index nv = mesh.nVertices();

    AssembledSystem sys;
    sys.freeOfVertex.assign(static_cast<std::size_t>(nv), -1);
    for (Index v = 0; v < nv; ++v) {
        if (!mesh.dirichlet[static_cast<std::size_t>(v)]) {
            sys.freeOfVertex[static_cast<std::size_t>(v)] = static_cast<Index>(sys.vertexOfFree.size());
            sys.vertexOfFree.push_back(v);
        }
    }
    if (sys.vertexOfFree.empty()) throw std::invalid_argument("assemble: mesh has no free dofs");

    DenseVector uAll(static_cast<std::size_t>(nv));
    for (Index v = 0; v < nv; ++v)
        uAll[static_cast<std::size_t>(v)] =
            manufacturedSolution(mesh.dim, mesh.vertices[static_cast<std::size_t>(v)]);
    // Condensed right-hand side: the Dirichlet lift A_ID g is subtracted by
    // zeroing the boundary values before the matrix action.
    DenseVector uLift = uAll;
    for (Index v = 0; v < nv; ++v)
        if (mesh.dirichlet[static_cast<std::size_t>(v)]) uLift[static_cast<std::size_t>(v)] = 0.0;
    DenseVector fAll = spmv(full, uLift);

    sys.A = submatrix(full, sys.vertexOfFree, sys.freeOfVertex,
                      static_cast<Index>(sys.vertexOfFree.size()));
    sys.f.resize(sys.vertexOfFree.size());
    sys.uExact.resize(sys.vertexOfFree.size());
    sys.freeCoords.resize(sys.vertexOfFree.size());
    for (std::size_t r = 0; r < sys.vertexOfFree.size(); ++r) {
        Index v = sys.vertexOfFree[r];
        sys.f[r] = fAll[static_cast<std::size_t>(v)];
        sys.uExact[r] = uAll[static_cast<std::size_t>(v)];
        sys.freeCoords[r] = mesh.vertices[static_cast<std::size_t>(v)];
    }
    sys.u0.assign(sys.vertexOfFree.size(), 0.0);
    return sys;
}

std::map<std::array<int, 3>, double> interiorStencil(const SparseMatrix& fullA, const Mesh& mesh,
                                                     Index vertex) {
    if (fullA.nRows() != mesh.nVertices())
        throw std::invalid_argument("interiorStencil: matrix must cover all mesh vertices");
    const auto& np = mesh.pointsPerAxis;
    const Index i = vertex % np[0];
    const Index j = (vertex / np[0]) % np[1];
    const Index k = vertex / (np[0] * np[1]);
    std::array<Index, 3> idx = {i, j, k};
    for (int a = 0; a < mesh.dim; ++a)
        if (idx[static_cast<std::size_t>(a)] == 0 ||
            idx[static_cast<std::size_t>(a)] == np[static_cast<std::size_t>(a)] - 1)
            throw std::invalid_argument("interiorStencil: vertex " + std::to_string(vertex) +
                                        " lies on the boundary");

    std::map<std::array<int, 3>, double> stencil;
    auto cols = fullA.rowCols(vertex);
    auto vals = fullA.rowVals(vertex);
    for (std::size_t p = 0; p < cols.size(); ++p) {
        Index c = cols[p];
        int di = static_cast<int>(c % np[0] - i);
        int dj = static_cast<int>((c / np[0]) % np[1] - j);
        int dk = static_cast<int>(c / (np[0] * np[1]) - k);
        stencil[{di, dj, dk}] = vals[p];
    }
    return stencil;
}

namespace {

std::string classOf(const std::array<int, 3>& d) {
    std::string name;
    if (d[0] != 0) name += 'x';
    if (d[1] != 0) name += 'y';
    if (d[2] != 0) name += 'z';
    return name;
}

}  // namespace

std::vector<CurvePoint> criterionCurves(const DropConfig& cfg, int dim,
                                        const std::vector<double>& alphas) {
    std::vector<CurvePoint> out;
    for (double alpha : alphas) {
        Mesh mesh = buildMesh(uniaxialStretchSpec(dim, 4, 1.0, alpha));
        SparseMatrix full = assembleFull(mesh);
        SparseMatrix S = socMatrix(full, mesh.vertices, cfg.soc);
        ScaledEntries scaled = cfg.scaling == ScalingKind::SymmetricSA ? scaleSymmetricSA(S)
                                                                       : scaleSignedClassical(S);
        const Index center = dim == 2 ? mesh.vertexId(2, 2, 0) : mesh.vertexId(2, 2, 2);
        const auto& np = mesh.pointsPerAxis;

        std::map<std::string, double> values;
        for (Index p = scaled.offsets[center]; p < scaled.offsets[center + 1]; ++p) {
            Index c = scaled.cols[static_cast<std::size_t>(p)];
            std::array<int, 3> d = {static_cast<int>(c % np[0] - 2),
                                    static_cast<int>((c / np[0]) % np[1] - 2),
                                    static_cast<int>(c / (np[0] * np[1]) - (dim == 3 ? 2 : 0))};
            // canonical representative: offsets with non-negative components
            if (d[0] < 0 || d[1] < 0 || d[2] < 0) continue;
            values[classOf(d)] = scaled.vals[static_cast<std::size_t>(p)];
        }
        for (const auto& [cls, value] : values) out.push_back({alpha, cls, value});
    }
    return out;
}

}  // namespace dropmg
