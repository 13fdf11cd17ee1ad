#include "dropmg/strength.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dropmg {

namespace {

constexpr double kAllWeak = -std::numeric_limits<double>::infinity();

}  // namespace

void DropConfig::validate() const {
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("DropConfig: theta must lie in [0, 1]");
    if (!(thetaG > 0.0) || thetaG > 1.0)
        throw std::invalid_argument("DropConfig: thetaG must lie in (0, 1]");
    if (classifier == ClassifierKind::CutDrop && scaling != ScalingKind::SymmetricSA)
        throw std::invalid_argument("DropConfig: cut-drop classification requires SA scaling");
}

std::string DropConfig::label() const {
    return toString(soc) + "/" + toString(scaling) + "/" + toString(classifier);
}

std::string toString(SocKind k) { return k == SocKind::SystemMatrix ? "A" : "DLap"; }
std::string toString(ScalingKind k) { return k == ScalingKind::SymmetricSA ? "SA" : "Sgn"; }
std::string toString(ClassifierKind k) { return k == ClassifierKind::Threshold ? "Val" : "Gap"; }
std::string toString(LumpingKind k) { return k == LumpingKind::Diagonal ? "diag" : "distrib"; }

SocKind socKindFromString(const std::string& s) {
    if (s == "A") return SocKind::SystemMatrix;
    if (s == "DLap") return SocKind::DistanceLaplacian;
    throw std::invalid_argument("unknown SOC matrix kind: " + s);
}

ScalingKind scalingKindFromString(const std::string& s) {
    if (s == "SA") return ScalingKind::SymmetricSA;
    if (s == "Sgn") return ScalingKind::SignedClassical;
    throw std::invalid_argument("unknown scaling kind: " + s);
}

ClassifierKind classifierKindFromString(const std::string& s) {
    if (s == "Val") return ClassifierKind::Threshold;
    if (s == "Gap") return ClassifierKind::CutDrop;
    throw std::invalid_argument("unknown classifier kind: " + s);
}

LumpingKind lumpingKindFromString(const std::string& s) {
    if (s == "diag") return LumpingKind::Diagonal;
    if (s == "distrib") return LumpingKind::Distributed;
    throw std::invalid_argument("unknown lumping kind: " + s);
}

bool StrengthGraph::retained(Index i, Index j) const {
    auto begin = cols.begin() + offsets[i];
    auto end = cols.begin() + offsets[i + 1];
    return std::binary_search(begin, end, j);
}

SparseMatrix socMatrix(const SparseMatrix& A, const std::vector<std::array<double, 3>>& coords,
                       SocKind kind) {
    if (kind == SocKind::SystemMatrix) return A;
    if (static_cast<Index>(coords.size()) != A.nRows())
        throw std::invalid_argument("socMatrix: distance Laplacian needs one coordinate per row");

    std::vector<Index> offsets = A.rowOffsets();
    std::vector<Index> cols = A.colIndices();
    std::vector<double> vals(cols.size(), 0.0);
    for (Index i = 0; i < A.nRows(); ++i) {
        const auto& xi = coords[static_cast<std::size_t>(i)];
        double offSum = 0.0;
        Index diagPos = -1;
        for (Index p = offsets[i]; p < offsets[i + 1]; ++p) {
            Index j = cols[static_cast<std::size_t>(p)];
            if (j == i) {
                diagPos = p;
                continue;
            }
            const auto& xj = coords[static_cast<std::size_t>(j)];
            double dx = xi[0] - xj[0], dy = xi[1] - xj[1], dz = xi[2] - xj[2];
            double dist2 = dx * dx + dy * dy + dz * dz;
            if (dist2 == 0.0)
                throw std::runtime_error("socMatrix: coincident coordinates for connected vertices " +
                                         std::to_string(i) + " and " + std::to_string(j));
            double v = -1.0 / dist2;
            vals[static_cast<std::size_t>(p)] = v;
            offSum += v;
        }
        if (diagPos >= 0) vals[static_cast<std::size_t>(diagPos)] = -offSum;
    }
    return SparseMatrix(A.nRows(), A.nCols(), std::move(offsets), std::move(cols), std::move(vals));
}

ScaledEntries scaleSymmetricSA(const SparseMatrix& S) {
    DenseVector d = diagOf(S);
    for (Index i = 0; i < S.nRows(); ++i)
        if (!(d[static_cast<std::size_t>(i)] > 0.0))
            throw std::runtime_error("scaleSymmetricSA: non-positive diagonal in row " +
                                     std::to_string(i));
    ScaledEntries out;
    out.nRows = S.nRows();
    out.offsets.assign(static_cast<std::size_t>(S.nRows()) + 1, 0);
    for (Index i = 0; i < S.nRows(); ++i) {
        auto cols = S.rowCols(i);
        auto vals = S.rowVals(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            Index j = cols[p];
            if (j == i) continue;
            out.cols.push_back(j);
            out.vals.push_back(std::abs(vals[p]) /
                               std::sqrt(d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)]));
        }
        out.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(out.cols.size());
    }
    return out;
}

ScaledEntries scaleSignedClassical(const SparseMatrix& S) {
    ScaledEntries out;
    out.nRows = S.nRows();
    out.offsets.assign(static_cast<std::size_t>(S.nRows()) + 1, 0);
    for (Index i = 0; i < S.nRows(); ++i) {
        auto cols = S.rowCols(i);
        auto vals = S.rowVals(i);
        double m = 0.0;
        for (std::size_t p = 0; p < cols.size(); ++p)
            if (cols[p] != i) m = std::max(m, -vals[p]);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            Index j = cols[p];
            if (j == i) continue;
            out.cols.push_back(j);
            out.vals.push_back(m > 0.0 ? -vals[p] / m : kAllWeak);
        }
        out.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(out.cols.size());
    }
    return out;
}

StrengthGraph classifyThreshold(const ScaledEntries& v, double theta) {
    StrengthGraph g;
    g.nRows = v.nRows;
    g.offsets.assign(static_cast<std::size_t>(v.nRows) + 1, 0);
    for (Index i = 0; i < v.nRows; ++i) {
        for (Index p = v.offsets[i]; p < v.offsets[i + 1]; ++p)
            if (v.vals[static_cast<std::size_t>(p)] >= theta)
                g.cols.push_back(v.cols[static_cast<std::size_t>(p)]);
        g.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(g.cols.size());
    }
    return g;
}

StrengthGraph classifyCutDrop(const ScaledEntries& v, double thetaG) {
    if (!(thetaG > 0.0) || thetaG > 1.0)
        throw std::invalid_argument("classifyCutDrop: thetaG must lie in (0, 1]");
    StrengthGraph g;
    g.nRows = v.nRows;
    g.offsets.assign(static_cast<std::size_t>(v.nRows) + 1, 0);
    std::vector<std::pair<double, Index>> row;
    std::vector<Index> kept;
    for (Index i = 0; i < v.nRows; ++i) {
        row.clear();
        for (Index p = v.offsets[i]; p < v.offsets[i + 1]; ++p)
            row.emplace_back(v.vals[static_cast<std::size_t>(p)], v.cols[static_cast<std::size_t>(p)]);
        // descending value, ascending column on ties
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        kept.clear();
        if (!row.empty()) {
            kept.push_back(row[0].second);
            for (std::size_t k = 1; k < row.size(); ++k) {
                double prev = row[k - 1].first;
                double cur = row[k].first;
                double ratio = prev == 0.0 ? (cur == 0.0 ? 1.0 : 0.0) : cur / prev;
                if (ratio >= thetaG)
                    kept.push_back(row[k].second);
                else
                    break;
            }
        }
        std::sort(kept.begin(), kept.end());
        g.cols.insert(g.cols.end(), kept.begin(), kept.end());
        g.offsets[static_cast<std::size_t>(i) + 1] = static_cast<Index>(g.cols.size());
    }
    return g;
}

StrengthGraph buildStrength(const SparseMatrix& A,
                            const std::vector<std::array<double, 3>>& coords,
                            const DropConfig& cfg) {
    cfg.validate();
    SparseMatrix S = socMatrix(A, coords, cfg.soc);
    ScaledEntries scaled = cfg.scaling == ScalingKind::SymmetricSA ? scaleSymmetricSA(S)
                                                                   : scaleSignedClassical(S);
    return cfg.classifier == ClassifierKind::Threshold ? classifyThreshold(scaled, cfg.theta)
                                                       : classifyCutDrop(scaled, cfg.thetaG);
}

void writeEdgeList(std::ostream& os, const StrengthGraph& g) {
    for (Index i = 0; i < g.nRows; ++i)
        for (Index p = g.offsets[i]; p < g.offsets[i + 1]; ++p)
            os << i << " " << g.cols[static_cast<std::size_t>(p)] << "\n";
}

}  // namespace dropmg
