#include "elastmix/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "elastmix/error.hpp"
#include "elastmix/problems.hpp"

namespace elastmix {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

// Rounds through the 10-digit text form so the JSON matches the CSV.
nlohmann::json jnum(double v) { return std::stod(num(v)); }
nlohmann::json jnum(const std::optional<double>& v) { return v ? jnum(*v) : nlohmann::json(nullptr); }

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) fail(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

void validate(const RunConfig& c) {
  find_problem(c.problem);
  require(std::isfinite(c.mu) && c.mu > 0.0, "mu must be positive");
  require(std::isfinite(c.nu) && c.nu > 0.0 && c.nu <= 0.5, "nu must lie in (0, 0.5]");
  require(!c.levels.empty(), "at least one mesh level is required");
  for (int l : c.levels) require(l >= 1 && l <= 9, "mesh levels must lie in 1..9");
  require(!c.estimators.empty(), "at least one estimator is required");
}

std::vector<std::optional<double>> convergence_rates(const std::vector<double>& hs, const std::vector<double>& values) {
  require(hs.size() == values.size(), "rates need one value per mesh size");
  std::vector<std::optional<double>> rates(values.size());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(hs[i] - 0.5 * hs[i - 1]) > 1e-12 * hs[i - 1])
      fail(ErrorCode::InvalidArgument, "convergence rates need successively halved mesh sizes");
    if (values[i - 1] > 0.0 && values[i] > 0.0) rates[i] = std::log2(values[i - 1] / values[i]);
  }
  return rates;
}

RunResult run_experiment(const RunConfig& config) {
  validate(config);
  const auto t_start = Clock::now();
  const TestProblem& problem = find_problem(config.problem);
  const MaterialParams mat = MaterialParams::from_poisson(config.mu, config.nu);
  const VectorField load = problem.load_for(mat);

  RunResult result;
  result.config = config;
  for (int level : config.levels) {
    auto t0 = Clock::now();
    const Discretization disc = make_discretization(problem_mesh(problem, level), config.pair);
    const MixedSystem system = assemble_mixed_system(disc, mat, load, problem.dirichlet);
    const MixedSolution sol = solve_saddle(system);
    LevelInfo info;
    info.level = level;
    info.h = std::ldexp(1.0, -level);
    info.ndof = disc.dofs->num_free_displacement() + disc.dofs->num_pressure();
    info.solve_ms = ms_since(t0);
    info.relative_residual = sol.relative_residual;
    if (problem.exact) info.err = energy_error(sol, *problem.exact);

    t0 = Clock::now();
    const ResidualData data = compute_residual_data(sol, project_load(*disc.mesh, load, mat));
    for (EstimatorKind kind : config.estimators) {
      EstimatorReport report = compute_estimator(kind, data);
      RunRow row;
      row.level = level;
      row.h = info.h;
      row.ndof = info.ndof;
      row.estimator = kind;
      row.eta = report.eta;
      row.theta = report.theta;
      row.err = info.err;
      if (info.err && *info.err > 0.0) row.effectivity = effectivity(report, *info.err);
      result.rows.push_back(row);
      if (config.element_map) {
        ElementMap map{level, kind, {}, std::move(report)};
        for (int e = 0; e < disc.mesh->num_elements(); ++e) map.centers.push_back(disc.mesh->element(e).center());
        result.maps.push_back(std::move(map));
      }
    }
    info.estimate_ms = ms_since(t0);
    result.levels.push_back(info);
  }

  // Rates per estimator along the level sequence, when it halves h.
  for (EstimatorKind kind : config.estimators) {
    std::vector<RunRow*> series;
    for (RunRow& r : result.rows)
      if (r.estimator == kind) series.push_back(&r);
    for (std::size_t i = 1; i < series.size(); ++i) {
      const RunRow& a = *series[i - 1];
      RunRow& b = *series[i];
      if (b.level == a.level + 1 && a.eta > 0.0 && b.eta > 0.0) b.rate = std::log2(a.eta / b.eta);
    }
  }
  result.total_ms = ms_since(t_start);
  return result;
}

std::string summary_csv(const RunResult& r) {
  std::ostringstream out;
  out << "problem,pair,mu,nu,h,ndof,estimator,eta,theta,err,effectivity,rate\n";
  for (const RunRow& row : r.rows) {
    out << r.config.problem << ',' << to_string(r.config.pair) << ',' << num(r.config.mu) << ',' << num(r.config.nu)
        << ',' << num(row.h) << ',' << row.ndof << ',' << to_string(row.estimator) << ',' << num(row.eta) << ','
        << num(row.theta) << ',' << num(row.err) << ',' << num(row.effectivity) << ',' << num(row.rate) << '\n';
  }
  return out.str();
}

std::string summary_json(const RunResult& r) {
  nlohmann::json j;
  const RunConfig& c = r.config;
  nlohmann::json est = nlohmann::json::array();
  for (EstimatorKind k : c.estimators) est.push_back(std::string(to_string(k)));
  j["config"] = {{"problem", c.problem},
                 {"pair", std::string(to_string(c.pair))},
                 {"mu", jnum(c.mu)},
                 {"nu", jnum(c.nu)},
                 {"levels", c.levels},
                 {"estimators", est},
                 {"out", c.out_dir},
                 {"element_map", c.element_map}};
  j["solver"] = solver_backend();
  nlohmann::json runs = nlohmann::json::array();
  for (const LevelInfo& l : r.levels) {
    runs.push_back({{"level", l.level},
                    {"h", jnum(l.h)},
                    {"ndof", l.ndof},
                    {"solve_ms", jnum(l.solve_ms)},
                    {"estimate_ms", jnum(l.estimate_ms)},
                    {"wall_ms", jnum(l.solve_ms + l.estimate_ms)},
                    {"relative_residual", jnum(l.relative_residual)},
                    {"err", jnum(l.err)}});
  }
  j["runs"] = runs;
  nlohmann::json rows = nlohmann::json::array();
  for (const RunRow& row : r.rows) {
    rows.push_back({{"h", jnum(row.h)},
                    {"ndof", row.ndof},
                    {"estimator", std::string(to_string(row.estimator))},
                    {"eta", jnum(row.eta)},
                    {"theta", jnum(row.theta)},
                    {"err", jnum(row.err)},
                    {"effectivity", jnum(row.effectivity)},
                    {"rate", jnum(row.rate)}});
  }
  j["rows"] = rows;
  j["total_ms"] = jnum(r.total_ms);
  return j.dump(2) + "\n";
}

std::string element_map_csv(const ElementMap& map) {
  std::ostringstream out;
  out << "element,xc,yc,eta_sq,comp_R,comp_E,comp_J\n";
  const EstimatorReport& rep = map.report;
  for (std::size_t e = 0; e < rep.eta_sq.size(); ++e) {
    out << e << ',' << num(map.centers[e].x) << ',' << num(map.centers[e].y) << ',' << num(rep.eta_sq[e]) << ','
        << num(rep.components[e][0]) << ',' << num(rep.components[e][1]) << ',' << num(rep.components[e][2]) << '\n';
  }
  return out.str();
}

std::string element_map_filename(const RunConfig& c, const ElementMap& map) {
  return "elements_" + c.problem + "_" + std::string(to_string(c.pair)) + "_l" + std::to_string(map.level) + "_" +
         std::string(to_string(map.estimator)) + ".csv";
}

void write_outputs(const RunResult& result) {
  const std::filesystem::path dir(result.config.out_dir);
  require(!dir.empty(), "no output directory given");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  write_atomic(dir / "summary.csv", summary_csv(result));
  write_atomic(dir / "summary.json", summary_json(result));
  for (const ElementMap& map : result.maps)
    write_atomic(dir / element_map_filename(result.config, map), element_map_csv(map));
}

}  // namespace elastmix
