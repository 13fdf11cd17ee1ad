#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dropmg/hierarchy.hpp"
#include "dropmg/krylov.hpp"
#include "dropmg/strength.hpp"

namespace dropmg {

enum class Family { Tensor2d, Tensor3d, Geo3d };

std::string toString(Family f);
Family familyFromString(const std::string& s);

struct ExperimentConfig {
    Family family = Family::Tensor2d;
    std::vector<double> gamma1;        // abar values for Geo3d
    std::vector<double> gamma2;        // alpha values for Geo3d
    DropConfig drop;
    std::string solver = "pcg";        // pcg | gmres
    double tol = 1e-10;
    Index maxIt = 500;
    Index restart = 300;
    SmootherSpec smoother{SmootherKind::SymmetricGaussSeidel, 0.6};
    std::uint64_t seed = 20240801;
    Index geoPoints = 82;              // Geo3d grid points per axis
    int geoLevels = 4;

    void validate() const;
};

struct SweepRow {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    Index levels = 0;
    Index iterations = 0;
    double complexity = 0.0;
    std::optional<double> cost;        // missing when the point failed
    std::string status;                // converged | maxit | setup/solve failure
    Index flaggedRows = 0;             // lumping sign flags over all levels
};

std::vector<double> logSpace(double lo, double hi, int count);

/// Stretch-factor pairs visited by a sweep. Tensor families pair
/// triangularly (gamma2 >= gamma1); the geometric family takes the full
/// cross product.
std::vector<std::pair<double, double>> sweepPairs(const ExperimentConfig& cfg);

using SweepProgressFn = std::function<void(const SweepRow&)>;

/// Runs every sweep point, recording failures instead of aborting.
std::vector<SweepRow> runSweep(const ExperimentConfig& cfg, const SweepProgressFn& progress = {});

/// One tensor-family point: assemble, build the hierarchy, solve.
SweepRow runTensorPoint(const ExperimentConfig& cfg, double gamma1, double gamma2);

double costMetric(const SolveReport& report);

void writeSweepCsvHeader(std::ostream& os);
void writeSweepCsvRow(std::ostream& os, const ExperimentConfig& cfg, const SweepRow& row);

/// JSON config document; CLI flags override individual keys.
ExperimentConfig configFromJsonFile(const std::string& path);
ExperimentConfig configFromJsonText(const std::string& text);

}  // namespace dropmg
