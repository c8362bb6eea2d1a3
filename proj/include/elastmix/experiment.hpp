#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elastmix/dofmap.hpp"
#include "elastmix/estimators.hpp"

namespace elastmix {

/// One convergence sweep. Defaults are the analytic problem at mu = 100,
/// nu = 0.4 with Q2-Q1 and the levels 2..6 (h = 1/4 .. 1/64).
struct RunConfig {
  std::string problem = "p1";
  ElementPair pair = ElementPair::Q2Q1;
  double mu = 100.0;
  double nu = 0.4;
  std::vector<int> levels = {2, 3, 4, 5, 6};
  std::vector<EstimatorKind> estimators = {EstimatorKind::Residual, EstimatorKind::Stokes, EstimatorKind::Poisson};
  std::string out_dir;  // empty: nothing written
  bool element_map = false;
};

/// Throws InvalidArgument for a bad configuration.
void validate(const RunConfig& config);

struct RunRow {
  int level = 0;
  double h = 0.0;
  long ndof = 0;
  EstimatorKind estimator = EstimatorKind::Residual;
  double eta = 0.0;
  double theta = 0.0;
  std::optional<double> err;
  std::optional<double> effectivity;
  std::optional<double> rate;  // of eta, against the previous (coarser) level
};

struct LevelInfo {
  int level = 0;
  double h = 0.0;
  long ndof = 0;
  double solve_ms = 0.0;
  double estimate_ms = 0.0;
  double relative_residual = 0.0;
  std::optional<double> err;
};

struct ElementMap {
  int level = 0;
  EstimatorKind estimator = EstimatorKind::Residual;
  std::vector<Point> centers;
  EstimatorReport report;
};

struct RunResult {
  RunConfig config;
  std::vector<LevelInfo> levels;
  std::vector<RunRow> rows;  // ordered by level, then estimator
  std::vector<ElementMap> maps;  // filled when config.element_map is set
  double total_ms = 0.0;
};

/// Runs the sweep. Solver failures propagate as Error(SolverFailure).
RunResult run_experiment(const RunConfig& config);

/// log2(values[i-1] / values[i]) for i >= 1; requires hs[i] = hs[i-1] / 2.
std::vector<std::optional<double>> convergence_rates(const std::vector<double>& hs, const std::vector<double>& values);

/// CSV and JSON text of a result (10 significant digits).
std::string summary_csv(const RunResult& result);
std::string summary_json(const RunResult& result);
std::string element_map_csv(const ElementMap& map);
std::string element_map_filename(const RunConfig& config, const ElementMap& map);

/// Writes summary.csv, summary.json and the element maps into
/// config.out_dir, creating it if needed. Each file is written to a
/// temporary name and renamed. Throws Error(Io) on failure.
void write_outputs(const RunResult& result);

}  // namespace elastmix
