// Command-line experiment runner. Talks to the library only through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elastmix/elastmix.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

int exit_code(elastmix_status s) {
  switch (s) {
    case ELASTMIX_OK: return kExitOk;
    case ELASTMIX_SOLVER_FAILURE: return kExitSolver;
    default: return kExitConfig;
  }
}

struct ConfigHandle {
  elastmix_config* ptr = nullptr;
  ~ConfigHandle() { elastmix_config_destroy(ptr); }
};

struct ResultHandle {
  elastmix_result* ptr = nullptr;
  ~ResultHandle() { elastmix_result_destroy(ptr); }
};

int report(elastmix_status s) {
  std::fprintf(stderr, "elastmix: %s\n", elastmix_last_error());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed elasticity a posteriori error estimation experiments"};
  app.set_version_flag("--version", std::string(elastmix_version()));

  std::string problem = "p1";
  std::string pair = "q2q1";
  double mu = 100.0;
  double nu = 0.4;
  std::vector<int> levels = {2, 3, 4, 5, 6};
  std::vector<std::string> estimators = {"residual", "stokes", "poisson"};
  std::string out;
  bool element_map = false;
  bool quiet = false;

  app.add_option("--problem", problem, "Test problem: p1 (analytic), p2 (nonsmooth), p3 (mixed BC)")
      ->capture_default_str();
  app.add_option("--pair", pair, "Element pair: q2q1 or q2p1")->capture_default_str();
  app.add_option("--mu", mu, "Shear modulus")->capture_default_str();
  app.add_option("--nu", nu, "Poisson ratio in (0, 0.5]")->capture_default_str();
  app.add_option("--levels", levels, "Mesh levels l (h = 2^-l), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--estimators", estimators,
                 "Comma separated subset of residual,elasticity,modified,stokes,poisson (or 'all')")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--out", out, "Output directory for summary.csv, summary.json and element maps");
  app.add_flag("--element-map", element_map, "Write per-element indicator CSV files (needs --out)");
  app.add_flag("-q,--quiet", quiet, "Do not print the summary CSV to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "elastmix: %s\n", e.what());
    return kExitConfig;
  }

  if (estimators.size() == 1 && estimators[0] == "all")
    estimators = {"residual", "elasticity", "modified", "stokes", "poisson"};
  if (element_map && out.empty()) {
    std::fprintf(stderr, "elastmix: --element-map requires --out\n");
    return kExitConfig;
  }

  ConfigHandle cfg;
  elastmix_status s = elastmix_config_create(&cfg.ptr);
  if (s != ELASTMIX_OK) return report(s);

  std::vector<const char*> names;
  for (const auto& e : estimators) names.push_back(e.c_str());

  if ((s = elastmix_config_set_problem(cfg.ptr, problem.c_str())) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_pair(cfg.ptr, pair.c_str())) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_mu(cfg.ptr, mu)) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_nu(cfg.ptr, nu)) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_levels(cfg.ptr, levels.data(), levels.size())) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_estimators(cfg.ptr, names.data(), names.size())) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_output_dir(cfg.ptr, out.c_str())) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_set_element_map(cfg.ptr, element_map ? 1 : 0)) != ELASTMIX_OK) return report(s);
  if ((s = elastmix_config_validate(cfg.ptr)) != ELASTMIX_OK) return report(s);

  ResultHandle res;
  if ((s = elastmix_run(cfg.ptr, &res.ptr)) != ELASTMIX_OK) return report(s);

  if (!quiet) {
    size_t needed = 0;
    elastmix_result_summary_csv(res.ptr, nullptr, 0, &needed);
    std::string text(needed, '\0');
    elastmix_result_summary_csv(res.ptr, text.data(), text.size(), &needed);
    std::fputs(text.c_str(), stdout);
  }
  std::fprintf(stderr, "elastmix: %zu rows in %.1f ms (solver %s, max residual %.2e)\n",
               elastmix_result_row_count(res.ptr), elastmix_result_total_ms(res.ptr), elastmix_solver_backend(),
               elastmix_result_max_residual(res.ptr));
  return kExitOk;
}
