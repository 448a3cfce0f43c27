#include "runup/runup.h"

#include <new>
#include <string>
#include <vector>

#include "runup/io.hpp"

struct runup_config {
  runup::RunConfig value;
  std::string mode;
  std::string output;
};

struct runup_ic {
  runup::PhysicalIC value;
};

struct runup_series {
  runup::ShorelineSeries value;
};

struct runup_outputs {
  runup::RunOutputs value;
  std::string output;
};

namespace {

thread_local std::string last_error;

runup_status fail(runup_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
runup_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RUNUP_OK;
  } catch (const runup::Error& e) {
    return fail(static_cast<runup_status>(e.status()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RUNUP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RUNUP_ERR_INTERNAL, e.what());
  }
}

void refresh(runup_config* c) {
  c->mode = std::string(runup::to_string(c->value.mode));
  c->output = c->value.output.string();
}

}  // namespace

extern "C" {

const char* runup_version(void) { return "1.0.0"; }

const char* runup_last_error(void) { return last_error.c_str(); }

int runup_exit_code(runup_status status) {
  switch (status) {
    case RUNUP_OK:
      return 0;
    case RUNUP_ERR_INVALID_ARGUMENT:
    case RUNUP_ERR_CONFIG:
    case RUNUP_ERR_IO:
      return 2;
    case RUNUP_ERR_BREAKING:
      return 3;
    case RUNUP_ERR_CONVERGENCE:
    case RUNUP_ERR_RANGE:
    case RUNUP_ERR_INTERNAL:
      return 4;
  }
  return 4;
}

runup_status runup_config_create(runup_config** out) {
  if (!out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    auto* c = new runup_config{};
    refresh(c);
    *out = c;
  });
}

void runup_config_destroy(runup_config* config) { delete config; }

runup_status runup_config_parse(runup_config* config, int argc, const char* const* argv) {
  if (!config || (argc > 0 && !argv)) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::string> args;
    for (int i = 0; i < argc; ++i) {
      if (!argv[i]) throw runup::InvalidParameter("null argument string");
      args.emplace_back(argv[i]);
    }
    config->value = runup::parse_config(args);
    refresh(config);
  });
}

runup_status runup_config_set(runup_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    runup::apply_setting(config->value, key, value);
    refresh(config);
  });
}

runup_status runup_config_validate(const runup_config* config) {
  if (!config) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] { config->value.validate(); });
}

const char* runup_config_mode(const runup_config* config) {
  return config ? config->mode.c_str() : "";
}

const char* runup_config_output_dir(const runup_config* config) {
  return config ? config->output.c_str() : "";
}

runup_status runup_ic_create(size_t n, const double* x, const double* eta0, const double* u0,
                             runup_ic** out) {
  if (!x || !eta0 || !u0 || !out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    runup::PhysicalIC ic(runup::Grid1D(std::vector<double>(x, x + n), runup::GridLabel::x),
                         std::vector<double>(eta0, eta0 + n), std::vector<double>(u0, u0 + n));
    *out = new runup_ic{std::move(ic)};
  });
}

runup_status runup_ic_builtin_case(const char* name, double amplitude, size_t n, double x_min,
                                 double x_max, double bay_m, runup_ic** out) {
  if (!name || !out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    runup::RunConfig tmp;
    runup::apply_setting(tmp, "case", name);
    if (n < 2) throw runup::InvalidParameter("need at least two nodes");
    const runup::BayGeometry bay(bay_m);
    *out = new runup_ic{runup::builtin_case_ic(tmp.builtin_case, amplitude, n, x_min, x_max, bay)};
  });
}

size_t runup_ic_size(const runup_ic* ic) { return ic ? ic->value.x.size() : 0; }

runup_status runup_ic_copy(const runup_ic* ic, double* x, double* eta0, double* u0) {
  if (!ic) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null ic");
  const auto& v = ic->value;
  for (std::size_t i = 0; i < v.x.size(); ++i) {
    if (x) x[i] = v.x[i];
    if (eta0) eta0[i] = v.eta0[i];
    if (u0) u0[i] = v.u0[i];
  }
  return RUNUP_OK;
}

void runup_ic_destroy(runup_ic* ic) { delete ic; }

runup_status runup_series_create(size_t n, const double* t, const double* R, runup_series** out) {
  if (!t || !R || !out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    runup::ShorelineSeries s(runup::Grid1D(std::vector<double>(t, t + n), runup::GridLabel::t),
                             std::vector<double>(R, R + n));
    *out = new runup_series{std::move(s)};
  });
}

size_t runup_series_size(const runup_series* series) { return series ? series->value.t.size() : 0; }

runup_status runup_series_copy(const runup_series* series, double* t, double* R) {
  if (!series) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null series");
  const auto& v = series->value;
  for (std::size_t i = 0; i < v.t.size(); ++i) {
    if (t) t[i] = v.t[i];
    if (R) R[i] = v.R[i];
  }
  return RUNUP_OK;
}

void runup_series_destroy(runup_series* series) { delete series; }

runup_status runup_forward(const runup_config* config, const runup_ic* ic, runup_series** out) {
  if (!config || !ic || !out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& c = config->value;
    runup::ForwardResult r =
        runup::forward_runup(ic->value, runup::BayGeometry(c.bay_m), c.quadrature, c.forward);
    *out = new runup_series{std::move(r.runup)};
  });
}

runup_status runup_inverse(const runup_config* config, const runup_series* R, runup_ic** out) {
  if (!config || !R || !out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& c = config->value;
    runup::InverseResult r =
        runup::inverse_pipeline(R->value, runup::BayGeometry(c.bay_m), c.quadrature, c.inverse);
    *out = new runup_ic{std::move(r.ic)};
  });
}

runup_status runup_breaking_check(const runup_config* config, const runup_series* R,
                                  double* min_jacobian, double* t_at_min, int* breaking) {
  if (!config || !R) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& c = config->value;
    const runup::GaussianSum fit = runup::fit_gaussian_sum(R->value, c.inverse.fit);
    const runup::BreakingReport rep = runup::breaking_check(
        fit, R->value.t.front(), R->value.t.back(), c.inverse.breaking_threshold);
    if (min_jacobian) *min_jacobian = rep.min_jacobian;
    if (t_at_min) *t_at_min = rep.t_at_min;
    if (breaking) *breaking = rep.breaking ? 1 : 0;
  });
}

runup_status runup_execute(const runup_config* config, runup_outputs** out) {
  if (!config || !out) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new runup_outputs{runup::execute(config->value), config->output};
  });
}

runup_status runup_outputs_write(const runup_outputs* outputs, const char* dir, size_t* count) {
  if (!outputs) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null outputs");
  return guarded([&] {
    const auto written = runup::emit_results(outputs->value, dir ? dir : outputs->output.c_str());
    if (count) *count = written.size();
  });
}

size_t runup_outputs_diagnostic_count(const runup_outputs* outputs) {
  return outputs ? outputs->value.diagnostics.size() : 0;
}

runup_status runup_outputs_diagnostic(const runup_outputs* outputs, size_t index,
                                      const char** name, double* value) {
  if (!outputs) return fail(RUNUP_ERR_INVALID_ARGUMENT, "null outputs");
  if (index >= outputs->value.diagnostics.size()) {
    return fail(RUNUP_ERR_RANGE, "diagnostic index out of range");
  }
  const auto& d = outputs->value.diagnostics[index];
  if (name) *name = d.first.c_str();
  if (value) *value = d.second;
  return RUNUP_OK;
}

int runup_outputs_breaking(const runup_outputs* outputs) {
  return outputs && outputs->value.breaking ? 1 : 0;
}

void runup_outputs_destroy(runup_outputs* outputs) { delete outputs; }

}  // extern "C"
