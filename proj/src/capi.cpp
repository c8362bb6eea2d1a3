#include "elastmix/elastmix.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "elastmix/error.hpp"
#include "elastmix/experiment.hpp"
#include "elastmix/problems.hpp"

struct elastmix_config {
  elastmix::RunConfig config;
};

struct elastmix_result {
  elastmix::RunResult result;
  std::string csv;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

elastmix_status set_error(elastmix_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

elastmix_status from_code(elastmix::ErrorCode code) {
  switch (code) {
    case elastmix::ErrorCode::InvalidArgument: return ELASTMIX_INVALID_ARGUMENT;
    case elastmix::ErrorCode::SolverFailure: return ELASTMIX_SOLVER_FAILURE;
    case elastmix::ErrorCode::Io: return ELASTMIX_IO_ERROR;
    case elastmix::ErrorCode::Internal: return ELASTMIX_INTERNAL_ERROR;
  }
  return ELASTMIX_INTERNAL_ERROR;
}

template <class F>
elastmix_status guarded(F&& body) {
  try {
    body();
    return ELASTMIX_OK;
  } catch (const elastmix::Error& e) {
    return set_error(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ELASTMIX_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ELASTMIX_INTERNAL_ERROR, e.what());
  }
}

#define ELASTMIX_CHECK_PTR(p) \
  if (!(p)) return set_error(ELASTMIX_INVALID_ARGUMENT, #p " is null")

elastmix_status copy_text(const std::string& text, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf && capacity > 0) {
    const size_t n = std::min(capacity - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return ELASTMIX_OK;
}

}  // namespace

extern "C" {

const char* elastmix_version(void) { return "1.0.0"; }

const char* elastmix_last_error(void) { return g_last_error.c_str(); }

const char* elastmix_solver_backend(void) { return elastmix::solver_backend(); }

elastmix_status elastmix_config_create(elastmix_config** out) {
  ELASTMIX_CHECK_PTR(out);
  return guarded([&] { *out = new elastmix_config(); });
}

void elastmix_config_destroy(elastmix_config* config) { delete config; }

elastmix_status elastmix_config_set_problem(elastmix_config* config, const char* id) {
  ELASTMIX_CHECK_PTR(config);
  ELASTMIX_CHECK_PTR(id);
  return guarded([&] {
    elastmix::find_problem(id);
    config->config.problem = id;
  });
}

elastmix_status elastmix_config_set_pair(elastmix_config* config, const char* pair) {
  ELASTMIX_CHECK_PTR(config);
  ELASTMIX_CHECK_PTR(pair);
  return guarded([&] { config->config.pair = elastmix::element_pair_from_string(pair); });
}

elastmix_status elastmix_config_set_mu(elastmix_config* config, double mu) {
  ELASTMIX_CHECK_PTR(config);
  if (!(mu > 0.0) || !std::isfinite(mu)) return set_error(ELASTMIX_INVALID_ARGUMENT, "mu must be positive and finite");
  config->config.mu = mu;
  return ELASTMIX_OK;
}

elastmix_status elastmix_config_set_nu(elastmix_config* config, double nu) {
  ELASTMIX_CHECK_PTR(config);
  if (!(nu > 0.0 && nu <= 0.5)) return set_error(ELASTMIX_INVALID_ARGUMENT, "nu must lie in (0, 0.5]");
  config->config.nu = nu;
  return ELASTMIX_OK;
}

elastmix_status elastmix_config_set_levels(elastmix_config* config, const int* levels, size_t count) {
  ELASTMIX_CHECK_PTR(config);
  if (count == 0) return set_error(ELASTMIX_INVALID_ARGUMENT, "at least one mesh level is required");
  ELASTMIX_CHECK_PTR(levels);
  for (size_t i = 0; i < count; ++i)
    if (levels[i] < 1 || levels[i] > 9) return set_error(ELASTMIX_INVALID_ARGUMENT, "mesh levels must lie in 1..9");
  config->config.levels.assign(levels, levels + count);
  return ELASTMIX_OK;
}

elastmix_status elastmix_config_set_estimators(elastmix_config* config, const char* const* names, size_t count) {
  ELASTMIX_CHECK_PTR(config);
  if (count == 0) return set_error(ELASTMIX_INVALID_ARGUMENT, "at least one estimator is required");
  ELASTMIX_CHECK_PTR(names);
  return guarded([&] {
    std::vector<elastmix::EstimatorKind> kinds;
    for (size_t i = 0; i < count; ++i) {
      elastmix::require(names[i] != nullptr, "estimator name is null");
      kinds.push_back(elastmix::estimator_from_string(names[i]));
    }
    config->config.estimators = kinds;
  });
}

elastmix_status elastmix_config_set_output_dir(elastmix_config* config, const char* dir) {
  ELASTMIX_CHECK_PTR(config);
  config->config.out_dir = dir ? dir : "";
  return ELASTMIX_OK;
}

elastmix_status elastmix_config_set_element_map(elastmix_config* config, int enabled) {
  ELASTMIX_CHECK_PTR(config);
  config->config.element_map = enabled != 0;
  return ELASTMIX_OK;
}

elastmix_status elastmix_config_validate(const elastmix_config* config) {
  ELASTMIX_CHECK_PTR(config);
  return guarded([&] { elastmix::validate(config->config); });
}

elastmix_status elastmix_run(const elastmix_config* config, elastmix_result** out) {
  ELASTMIX_CHECK_PTR(config);
  ELASTMIX_CHECK_PTR(out);
  *out = nullptr;
  return guarded([&] {
    auto* r = new elastmix_result();
    try {
      r->result = elastmix::run_experiment(config->config);
      r->csv = elastmix::summary_csv(r->result);
      r->json = elastmix::summary_json(r->result);
      if (!config->config.out_dir.empty()) elastmix::write_outputs(r->result);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void elastmix_result_destroy(elastmix_result* result) { delete result; }

size_t elastmix_result_row_count(const elastmix_result* result) { return result ? result->result.rows.size() : 0; }

elastmix_status elastmix_result_row(const elastmix_result* result, size_t index, elastmix_row* out) {
  ELASTMIX_CHECK_PTR(result);
  ELASTMIX_CHECK_PTR(out);
  if (index >= result->result.rows.size()) return set_error(ELASTMIX_INVALID_ARGUMENT, "row index out of range");
  const elastmix::RunRow& r = result->result.rows[index];
  out->level = r.level;
  out->h = r.h;
  out->ndof = r.ndof;
  out->estimator = elastmix::to_string(r.estimator).data();
  out->eta = r.eta;
  out->theta = r.theta;
  out->has_err = r.err.has_value();
  out->err = r.err.value_or(0.0);
  out->has_effectivity = r.effectivity.has_value();
  out->effectivity = r.effectivity.value_or(0.0);
  out->has_rate = r.rate.has_value();
  out->rate = r.rate.value_or(0.0);
  return ELASTMIX_OK;
}

double elastmix_result_total_ms(const elastmix_result* result) { return result ? result->result.total_ms : 0.0; }

double elastmix_result_max_residual(const elastmix_result* result) {
  double m = 0.0;
  if (result)
    for (const auto& l : result->result.levels) m = std::max(m, l.relative_residual);
  return m;
}

elastmix_status elastmix_result_summary_csv(const elastmix_result* result, char* buf, size_t capacity,
                                            size_t* needed) {
  ELASTMIX_CHECK_PTR(result);
  return copy_text(result->csv, buf, capacity, needed);
}

elastmix_status elastmix_result_summary_json(const elastmix_result* result, char* buf, size_t capacity,
                                             size_t* needed) {
  ELASTMIX_CHECK_PTR(result);
  return copy_text(result->json, buf, capacity, needed);
}

}  // extern "C"
