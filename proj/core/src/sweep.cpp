#include "dropmg/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dropmg/assemble.hpp"
#include "dropmg/geo.hpp"
#include "dropmg/mesh.hpp"

namespace dropmg {

namespace {

std::string fmtNum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string firstLine(const std::string& s) {
    auto pos = s.find('\n');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

std::string toString(Family f) {
    switch (f) {
        case Family::Tensor2d: return "tensor2d";
        case Family::Tensor3d: return "tensor3d";
        default: return "geo3d";
    }
}

Family familyFromString(const std::string& s) {
    if (s == "tensor2d") return Family::Tensor2d;
    if (s == "tensor3d") return Family::Tensor3d;
    if (s == "geo3d") return Family::Geo3d;
    throw std::invalid_argument("unknown problem family: " + s);
}

void ExperimentConfig::validate() const {
    drop.validate();
    if (solver != "pcg" && solver != "gmres")
        throw std::invalid_argument("ExperimentConfig: solver must be pcg or gmres");
    for (double g : gamma1)
        if (!(g > 0.0)) throw std::invalid_argument("ExperimentConfig: gamma values must be positive");
    for (double g : gamma2)
        if (!(g > 0.0)) throw std::invalid_argument("ExperimentConfig: gamma values must be positive");
    if (gamma1.empty() || gamma2.empty())
        throw std::invalid_argument("ExperimentConfig: empty stretch grid");
    if (maxIt < 1 || restart < 1) throw std::invalid_argument("ExperimentConfig: bad iteration caps");
}

std::vector<double> logSpace(double lo, double hi, int count) {
    if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("logSpace: bad range");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<std::pair<double, double>> sweepPairs(const ExperimentConfig& cfg) {
    std::vector<std::pair<double, double>> pairs;
    for (double g1 : cfg.gamma1)
        for (double g2 : cfg.gamma2) {
            if (cfg.family != Family::Geo3d && g2 < g1) continue;
            pairs.emplace_back(g1, g2);
        }
    return pairs;
}

double costMetric(const SolveReport& report) {
    if (!report.converged) throw std::invalid_argument("costMetric: report did not converge");
    return static_cast<double>(report.iterations) * report.operatorComplexity;
}

SweepRow runTensorPoint(const ExperimentConfig& cfg, double gamma1, double gamma2) {
    SweepRow row;
    row.gamma1 = gamma1;
    row.gamma2 = gamma2;
    const int dim = cfg.family == Family::Tensor2d ? 2 : 3;

    Hierarchy hier;
    try {
        Mesh mesh = buildMesh(tensorStretchSpec(dim, gamma1, gamma2));
        AssembledSystem sys = assemble(mesh);
        hier = buildHierarchy(sys.A, sys.freeCoords, cfg.drop, cfg.smoother);
        row.levels = static_cast<Index>(hier.levels.size());
        row.complexity = hier.operatorComplexity;
        row.flaggedRows = hier.totalFlaggedRows();

        ApplyFn M = [&hier](const DenseVector& r, DenseVector& z) { vcycle(hier, r, z); };
        SolveReport report;
        if (cfg.solver == "pcg")
            report = pcg(sys.A, sys.f, M, cfg.tol, cfg.maxIt, &sys.u0, nullptr,
                         hier.operatorComplexity);
        else
            report = gmres(sys.A, sys.f, M, cfg.restart, cfg.tol, cfg.maxIt, &sys.u0, nullptr,
                           hier.operatorComplexity);
        row.iterations = report.iterations;
        if (report.converged) {
            row.cost = costMetric(report);
            row.status = "converged";
        } else {
            row.status = "maxit";
        }
    } catch (const std::exception& e) {
        row.status = row.levels == 0 ? "setup: " + firstLine(e.what())
                                     : "solve: " + firstLine(e.what());
    }
    return row;
}

namespace {

SweepRow runGeoPoint(const ExperimentConfig& cfg, double abar, double alpha) {
    SweepRow row;
    row.gamma1 = abar;
    row.gamma2 = alpha;
    try {
        GeoSolveOptions opts;
        opts.tol = cfg.tol;
        opts.maxIt = cfg.maxIt;
        opts.seed = cfg.seed;
        opts.smoother = cfg.smoother;
        SolveReport report = geoSolve(cfg.geoPoints, alpha, abar, cfg.geoLevels, opts);
        row.levels = cfg.geoLevels;
        row.complexity = report.operatorComplexity;
        row.iterations = report.iterations;
        if (report.converged) {
            row.cost = costMetric(report);
            row.status = "converged";
        } else {
            row.status = "maxit";
        }
    } catch (const std::exception& e) {
        row.status = "setup: " + firstLine(e.what());
    }
    return row;
}

}  // namespace

std::vector<SweepRow> runSweep(const ExperimentConfig& cfg, const SweepProgressFn& progress) {
    cfg.validate();
    std::vector<SweepRow> rows;
    for (auto [g1, g2] : sweepPairs(cfg)) {
        SweepRow row = cfg.family == Family::Geo3d ? runGeoPoint(cfg, g1, g2)
                                                   : runTensorPoint(cfg, g1, g2);
        if (progress) progress(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

void writeSweepCsvHeader(std::ostream& os) {
    os << "family,gamma1,gamma2,soc,scaling,classifier,theta,lumping,levels,iters,complexity,"
          "cost,status\n";
}

void writeSweepCsvRow(std::ostream& os, const ExperimentConfig& cfg, const SweepRow& row) {
    const bool geo = cfg.family == Family::Geo3d;
    os << toString(cfg.family) << "," << fmtNum(row.gamma1) << "," << fmtNum(row.gamma2) << ","
       << (geo ? "-" : toString(cfg.drop.soc)) << "," << (geo ? "-" : toString(cfg.drop.scaling))
       << "," << (geo ? "-" : toString(cfg.drop.classifier)) << ","
       << (geo ? "-" : fmtNum(cfg.drop.activeTolerance())) << ","
       << (geo ? "-" : toString(cfg.drop.lumping)) << "," << row.levels << "," << row.iterations
       << "," << fmtNum(row.complexity) << "," << (row.cost ? fmtNum(*row.cost) : "") << ","
       << row.status << "\n";
}

namespace {

std::vector<double> gammaList(const nlohmann::json& j) {
    if (j.is_array()) return j.get<std::vector<double>>();
    if (j.is_object() && j.contains("lo"))
        return logSpace(j.at("lo").get<double>(), j.at("hi").get<double>(),
                        j.at("count").get<int>());
    if (j.is_number()) return {j.get<double>()};
    throw std::invalid_argument("config: gamma entry must be a number, array, or {lo,hi,count}");
}

}  // namespace

ExperimentConfig configFromJsonText(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    if (j.contains("family")) cfg.family = familyFromString(j.at("family").get<std::string>());
    if (j.contains("gamma1")) cfg.gamma1 = gammaList(j.at("gamma1"));
    if (j.contains("gamma2")) cfg.gamma2 = gammaList(j.at("gamma2"));
    if (j.contains("soc")) cfg.drop.soc = socKindFromString(j.at("soc").get<std::string>());
    if (j.contains("scaling"))
        cfg.drop.scaling = scalingKindFromString(j.at("scaling").get<std::string>());
    if (j.contains("classifier"))
        cfg.drop.classifier = classifierKindFromString(j.at("classifier").get<std::string>());
    if (j.contains("lumping"))
        cfg.drop.lumping = lumpingKindFromString(j.at("lumping").get<std::string>());
    if (j.contains("theta")) cfg.drop.theta = j.at("theta").get<double>();
    if (j.contains("thetaG")) cfg.drop.thetaG = j.at("thetaG").get<double>();
    if (j.contains("solver")) cfg.solver = j.at("solver").get<std::string>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("maxIt")) cfg.maxIt = j.at("maxIt").get<Index>();
    if (j.contains("restart")) cfg.restart = j.at("restart").get<Index>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("geoPoints")) cfg.geoPoints = j.at("geoPoints").get<Index>();
    if (j.contains("geoLevels")) cfg.geoLevels = j.at("geoLevels").get<int>();
    if (j.contains("smoother")) {
        const auto& s = j.at("smoother");
        if (s.is_string()) {
            std::string name = s.get<std::string>();
            if (name == "sgs")
                cfg.smoother = {SmootherKind::SymmetricGaussSeidel, 0.6};
            else if (name == "jacobi")
                cfg.smoother = {SmootherKind::Jacobi, 0.6};
            else
                throw std::invalid_argument("config: unknown smoother " + name);
        } else {
            cfg.smoother = {SmootherKind::Jacobi, s.at("jacobi").get<double>()};
        }
    }
    return cfg;
}

ExperimentConfig configFromJsonFile(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return configFromJsonText(ss.str());
}

}  // namespace dropmg
