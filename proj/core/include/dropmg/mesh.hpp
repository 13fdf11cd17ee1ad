#pragma once

#include <array>
#include <vector>

#include "dropmg/sparse.hpp"

namespace dropmg {

enum class Bc { Dirichlet, Neumann };

/// Structured tensor-product mesh description: explicit cell widths per axis
/// plus a boundary condition for each of the 2*dim faces.
struct MeshSpec {
    int dim = 3;
    std::array<std::vector<double>, 3> axisWidths;    // cell widths, axes beyond dim unused
    std::array<std::array<Bc, 2>, 3> bc = {{{Bc::Dirichlet, Bc::Dirichlet},
                                            {Bc::Dirichlet, Bc::Dirichlet},
                                            {Bc::Dirichlet, Bc::Dirichlet}}};
};

struct Mesh {
    int dim = 3;
    std::array<Index, 3> pointsPerAxis = {1, 1, 1};
    std::array<std::vector<double>, 3> axisCoords;    // vertex positions per axis
    std::array<std::vector<double>, 3> axisWidths;
    std::vector<std::array<double, 3>> vertices;      // lexicographic, x fastest
    std::vector<std::array<Index, 8>> elements;       // quad uses slots 0..3, segment 0..1
    int verticesPerElement = 8;
    std::vector<bool> dirichlet;

    Index vertexId(Index i, Index j, Index k) const {
        return i + pointsPerAxis[0] * (j + pointsPerAxis[1] * k);
    }
    Index nVertices() const { return static_cast<Index>(vertices.size()); }
};

std::vector<double> uniformAxis(Index cells, double width);

/// Three-block graded axis: 1.0 in 10 uniform cells, then 3(gamma+1) covered
/// by a geometric progression of widths running from 0.1 to gamma/10 (the
/// final cell absorbs the length mismatch), then gamma in 10 uniform cells.
std::vector<double> gradedBlockAxis(double gamma);

Mesh buildMesh(const MeshSpec& spec);

/// Stretched tensor mesh of the sweep experiments: graded x/y axes, a fixed
/// 80-cell z axis in 3D, Dirichlet on the y=0 face and Neumann elsewhere.
MeshSpec tensorStretchSpec(int dim, double gamma1, double gamma2);

/// Uniform mesh with spacing h on every axis except the last, which uses
/// alpha*h. All faces Dirichlet unless stated otherwise.
MeshSpec uniaxialStretchSpec(int dim, Index cellsPerAxis, double h, double alpha);

/// Grid of the semi-coarsening study: n points per axis, x/y spacing h,
/// z spacing alpha*h, Dirichlet everywhere except the two x-faces.
MeshSpec geoGridSpec(Index pointsPerAxis, double h, double alpha);

}  // namespace dropmg
