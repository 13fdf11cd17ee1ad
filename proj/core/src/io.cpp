#include "dropmg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dropmg {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream openIn(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path + " for reading");
    return is;
}

std::ofstream openOut(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    return os;
}

}  // namespace

void writeMatrixMarket(std::ostream& os, const SparseMatrix& A) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << A.nRows() << " " << A.nCols() << " " << A.nnz() << "\n";
    for (Index i = 0; i < A.nRows(); ++i) {
        auto cols = A.rowCols(i);
        auto vals = A.rowVals(i);
        for (std::size_t p = 0; p < cols.size(); ++p)
            os << (i + 1) << " " << (cols[p] + 1) << " " << fmt17(vals[p]) << "\n";
    }
}

SparseMatrix readMatrixMarket(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("MatrixMarket: empty stream");
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
            field != "real" || symmetry != "general")
            throw std::runtime_error("MatrixMarket: unsupported header: " + line);
    }
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    Index nRows = 0, nCols = 0, nnz = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nRows >> nCols >> nnz)) throw std::runtime_error("MatrixMarket: bad size line");
    }
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(nnz));
    for (Index k = 0; k < nnz; ++k) {
        Index i = 0, j = 0;
        double v = 0.0;
        if (!(is >> i >> j >> v)) throw std::runtime_error("MatrixMarket: truncated entry list");
        trips.push_back({i - 1, j - 1, v});
    }
    return SparseMatrix::fromTriplets(nRows, nCols, std::move(trips));
}

void writeMatrixMarketFile(const std::string& path, const SparseMatrix& A) {
    auto os = openOut(path);
    writeMatrixMarket(os, A);
}

SparseMatrix readMatrixMarketFile(const std::string& path) {
    auto is = openIn(path);
    return readMatrixMarket(is);
}

void writeCoords(std::ostream& os, const std::vector<std::array<double, 3>>& coords) {
    for (const auto& c : coords)
        os << fmt17(c[0]) << " " << fmt17(c[1]) << " " << fmt17(c[2]) << "\n";
}

std::vector<std::array<double, 3>> readCoords(std::istream& is) {
    std::vector<std::array<double, 3>> coords;
    double x, y, z;
    while (is >> x >> y >> z) coords.push_back({x, y, z});
    return coords;
}

void writeCoordsFile(const std::string& path, const std::vector<std::array<double, 3>>& coords) {
    auto os = openOut(path);
    writeCoords(os, coords);
}

std::vector<std::array<double, 3>> readCoordsFile(const std::string& path) {
    auto is = openIn(path);
    return readCoords(is);
}

DenseVector readVectorFile(const std::string& path) {
    auto is = openIn(path);
    DenseVector v;
    double x;
    while (is >> x) v.push_back(x);
    return v;
}

void writeVectorFile(const std::string& path, const DenseVector& v) {
    auto os = openOut(path);
    for (double x : v) os << fmt17(x) << "\n";
}

}  // namespace dropmg
