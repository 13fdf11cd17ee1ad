#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "dropmg/sparse.hpp"

namespace dropmg {

/// Matrix Market coordinate format, `real general`, 1-based indices.
/// Values are written with 17 significant digits so a write/read round trip
/// is bit-exact.
void writeMatrixMarket(std::ostream& os, const SparseMatrix& A);
SparseMatrix readMatrixMarket(std::istream& is);

void writeMatrixMarketFile(const std::string& path, const SparseMatrix& A);
SparseMatrix readMatrixMarketFile(const std::string& path);

/// One vertex per line: `x y z`.
void writeCoords(std::ostream& os, const std::vector<std::array<double, 3>>& coords);
std::vector<std::array<double, 3>> readCoords(std::istream& is);

void writeCoordsFile(const std::string& path, const std::vector<std::array<double, 3>>& coords);
std::vector<std::array<double, 3>> readCoordsFile(const std::string& path);

DenseVector readVectorFile(const std::string& path);
void writeVectorFile(const std::string& path, const DenseVector& v);

}  // namespace dropmg
