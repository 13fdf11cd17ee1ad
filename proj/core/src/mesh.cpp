#include "dropmg/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dropmg {

std::vector<double> uniformAxis(Index cells, double width) {
    if (cells < 1 || width <= 0.0) throw std::invalid_argument("uniformAxis: bad cell count or width");
    return std::vector<double>(static_cast<std::size_t>(cells), width);
}

std::vector<double> gradedBlockAxis(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("gradedBlockAxis: gamma must be positive");
    const double first = 0.1;
    const double last = gamma / 10.0;
    const double length = 3.0 * (gamma + 1.0);
    if (first >= length)
        throw std::invalid_argument("gradedBlockAxis: degenerate grading, first size >= block length");

    std::vector<double> axis = uniformAxis(10, 0.1);

    // Geometric fit: smallest n whose progression from `first` to `last` sums
    // to at least the block length.
    Index n = 1;
    double sum = first;
    std::vector<double> widths{first};
    if (std::abs(last - first) < 1e-15 * first) {
        n = static_cast<Index>(std::ceil(length / first - 1e-12));
        widths.assign(static_cast<std::size_t>(n), first);
        sum = first * static_cast<double>(n);
    } else {
        for (n = 2; ; ++n) {
            double r = std::pow(last / first, 1.0 / static_cast<double>(n - 1));
            widths.resize(static_cast<std::size_t>(n));
            sum = 0.0;
            double w = first;
            for (Index k = 0; k < n; ++k) {
                widths[static_cast<std::size_t>(k)] = w;
                sum += w;
                w *= r;
            }
            if (sum >= length) break;
            if (n > 100000) throw std::invalid_argument("gradedBlockAxis: grading does not fit");
        }
    }
    widths.back() -= sum - length;  // final cell absorbs the remainder
    if (widths.back() <= 0.0)
        throw std::invalid_argument("gradedBlockAxis: degenerate grading for gamma " +
                                    std::to_string(gamma));
    axis.insert(axis.end(), widths.begin(), widths.end());

    auto tail = uniformAxis(10, gamma / 10.0);
    axis.insert(axis.end(), tail.begin(), tail.end());
    return axis;
}

Mesh buildMesh(const MeshSpec& spec) {
    if (spec.dim < 1 || spec.dim > 3) throw std::invalid_argument("buildMesh: dim must be 1, 2, or 3");
    Mesh mesh;
    mesh.dim = spec.dim;
    mesh.verticesPerElement = 1 << spec.dim;

    std::array<Index, 3> cells = {1, 1, 1};
    for (int a = 0; a < spec.dim; ++a) {
        const auto& w = spec.axisWidths[static_cast<std::size_t>(a)];
        if (w.size() < 2)
            throw std::invalid_argument("buildMesh: axis " + std::to_string(a) +
                                        " needs at least 2 cells");
        for (double width : w)
            if (!(width > 0.0))
                throw std::invalid_argument("buildMesh: non-positive cell width on axis " +
                                            std::to_string(a));
        cells[static_cast<std::size_t>(a)] = static_cast<Index>(w.size());
        mesh.axisWidths[static_cast<std::size_t>(a)] = w;
        auto& coords = mesh.axisCoords[static_cast<std::size_t>(a)];
        coords.resize(w.size() + 1);
        coords[0] = 0.0;
        for (std::size_t c = 0; c < w.size(); ++c) coords[c + 1] = coords[c] + w[c];
        mesh.pointsPerAxis[static_cast<std::size_t>(a)] = static_cast<Index>(coords.size());
    }
    for (int a = spec.dim; a < 3; ++a) {
        mesh.axisCoords[static_cast<std::size_t>(a)] = {0.0};
        mesh.pointsPerAxis[static_cast<std::size_t>(a)] = 1;
    }

    const auto& np = mesh.pointsPerAxis;
    mesh.vertices.resize(static_cast<std::size_t>(np[0] * np[1] * np[2]));
    for (Index k = 0; k < np[2]; ++k)
        for (Index j = 0; j < np[1]; ++j)
            for (Index i = 0; i < np[0]; ++i)
                mesh.vertices[static_cast<std::size_t>(mesh.vertexId(i, j, k))] = {
                    mesh.axisCoords[0][static_cast<std::size_t>(i)],
                    mesh.axisCoords[1][static_cast<std::size_t>(j)],
                    mesh.axisCoords[2][static_cast<std::size_t>(k)]};

    // Element nodes counter-clockwise from the low corner, front face first.
    for (Index k = 0; k < cells[2]; ++k)
        for (Index j = 0; j < cells[1]; ++j)
            for (Index i = 0; i < cells[0]; ++i) {
                std::array<Index, 8> e{};
                if (spec.dim == 1) {
                    e = {mesh.vertexId(i, 0, 0), mesh.vertexId(i + 1, 0, 0), 0, 0, 0, 0, 0, 0};
                } else if (spec.dim == 2) {
                    e = {mesh.vertexId(i, j, 0), mesh.vertexId(i + 1, j, 0),
                         mesh.vertexId(i + 1, j + 1, 0), mesh.vertexId(i, j + 1, 0), 0, 0, 0, 0};
                } else {
                    e = {mesh.vertexId(i, j, k),         mesh.vertexId(i + 1, j, k),
                         mesh.vertexId(i + 1, j + 1, k), mesh.vertexId(i, j + 1, k),
                         mesh.vertexId(i, j, k + 1),     mesh.vertexId(i + 1, j, k + 1),
                         mesh.vertexId(i + 1, j + 1, k + 1), mesh.vertexId(i, j + 1, k + 1)};
                }
                mesh.elements.push_back(e);
            }

    mesh.dirichlet.assign(mesh.vertices.size(), false);
    for (Index k = 0; k < np[2]; ++k)
        for (Index j = 0; j < np[1]; ++j)
            for (Index i = 0; i < np[0]; ++i) {
                std::array<Index, 3> idx = {i, j, k};
                bool dir = false;
                for (int a = 0; a < spec.dim; ++a) {
                    if (idx[static_cast<std::size_t>(a)] == 0 &&
                        spec.bc[static_cast<std::size_t>(a)][0] == Bc::Dirichlet)
                        dir = true;
                    if (idx[static_cast<std::size_t>(a)] == np[static_cast<std::size_t>(a)] - 1 &&
                        spec.bc[static_cast<std::size_t>(a)][1] == Bc::Dirichlet)
                        dir = true;
                }
                if (dir) mesh.dirichlet[static_cast<std::size_t>(mesh.vertexId(i, j, k))] = true;
            }
    return mesh;
}

MeshSpec tensorStretchSpec(int dim, double gamma1, double gamma2) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("tensorStretchSpec: dim must be 2 or 3");
    MeshSpec spec;
    spec.dim = dim;
    spec.axisWidths[0] = gradedBlockAxis(gamma1);
    spec.axisWidths[1] = gradedBlockAxis(gamma2);
    if (dim == 3) spec.axisWidths[2] = uniformAxis(80, 0.1);
    spec.bc = {{{Bc::Neumann, Bc::Neumann},
                {Bc::Dirichlet, Bc::Neumann},
                {Bc::Neumann, Bc::Neumann}}};
    return spec;
}

MeshSpec uniaxialStretchSpec(int dim, Index cellsPerAxis, double h, double alpha) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("uniaxialStretchSpec: dim must be 2 or 3");
    MeshSpec spec;
    spec.dim = dim;
    for (int a = 0; a < dim - 1; ++a)
        spec.axisWidths[static_cast<std::size_t>(a)] = uniformAxis(cellsPerAxis, h);
    spec.axisWidths[static_cast<std::size_t>(dim - 1)] = uniformAxis(cellsPerAxis, alpha * h);
    return spec;
}

MeshSpec geoGridSpec(Index pointsPerAxis, double h, double alpha) {
    if (pointsPerAxis < 2) throw std::invalid_argument("geoGridSpec: need at least 2 points per axis");
    MeshSpec spec;
    spec.dim = 3;
    spec.axisWidths[0] = uniformAxis(pointsPerAxis - 1, h);
    spec.axisWidths[1] = uniformAxis(pointsPerAxis - 1, h);
    spec.axisWidths[2] = uniformAxis(pointsPerAxis - 1, alpha * h);
    spec.bc = {{{Bc::Neumann, Bc::Neumann},
                {Bc::Dirichlet, Bc::Dirichlet},
                {Bc::Dirichlet, Bc::Dirichlet}}};
    return spec;
}

}  // namespace dropmg
