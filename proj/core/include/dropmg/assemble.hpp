#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dropmg/mesh.hpp"
#include "dropmg/sparse.hpp"
#include "dropmg/strength.hpp"

namespace dropmg {

using ElemMat = std::vector<double>;  // row-major, verticesPerElement^2

/// Element stiffness of the Poisson operator on an axis-aligned box,
/// integrated with 2-point Gauss quadrature per axis (exact for multilinear
/// elements). Node ordering counter-clockwise from the low corner, front
/// face first.
ElemMat elementStiffness1D(double hx);
ElemMat elementStiffness2D(double hx, double hy);
ElemMat elementStiffness3D(double hx, double hy, double hz);

/// Global stiffness matrix on all mesh vertices, no boundary treatment.
SparseMatrix assembleFull(const Mesh& mesh);

/// Multilinear manufactured solution used for the right-hand sides:
/// 1+x in 1D, 1+x+y+xy in 2D, 1+x+y+z+xy+xz+yz+xyz in 3D.
double manufacturedSolution(int dim, const std::array<double, 3>& x);

struct AssembledSystem {
    SparseMatrix A;                                // Dirichlet dofs eliminated
    DenseVector f;                                 // manufactured rhs on retained dofs
    DenseVector u0;                                // zero initial guess
    DenseVector uExact;                            // manufactured solution on retained dofs
    std::vector<std::array<double, 3>> freeCoords;
    std::vector<Index> freeOfVertex;               // -1 for eliminated vertices
    std::vector<Index> vertexOfFree;
};

AssembledSystem assemble(const Mesh& mesh);

/// Interior stencil of an assembled matrix keyed by lattice offset
/// (di, dj, dk). The vertex must have a complete interior neighborhood.
std::map<std::array<int, 3>, double> interiorStencil(const SparseMatrix& fullA, const Mesh& mesh,
                                                     Index vertex);

struct CurvePoint {
    double alpha;
    std::string offsetClass;  // x, y, z, xy, xz, yz, xyz
    double value;             // scaled SOC entry of that class
};

/// Scaled criterion values of every stencil class of the uniaxially
/// stretched lattice, per alpha, under the SOC matrix and scaling chosen in
/// cfg.
std::vector<CurvePoint> criterionCurves(const DropConfig& cfg, int dim,
                                        const std::vector<double>& alphas);

}  // namespace dropmg
