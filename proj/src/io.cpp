#include "runup/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <omp.h>

#include "runup/cgt.hpp"
#include "runup/projection.hpp"

namespace runup {

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::forward:
      return "forward";
    case RunMode::inverse:
      return "inverse";
    case RunMode::roundtrip:
      return "roundtrip";
    case RunMode::fit:
      return "fit";
    case RunMode::check_breaking:
      return "check-breaking";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string prefixed(const std::string& where, const std::string& msg) {
  return where.empty() ? msg : where + ": " + msg;
}

double parse_double(const std::string& key, const std::string& value, const std::string& where) {
  const std::string v = trim(value);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    throw ConfigError(prefixed(where, key + " expects a number, got '" + value + "'"));
  }
  return d;
}

std::size_t parse_count(const std::string& key, const std::string& value,
                        const std::string& where) {
  const std::string v = trim(value);
  char* end = nullptr;
  errno = 0;
  const long long n = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || n < 0) {
    throw ConfigError(
        prefixed(where, key + " expects a non-negative integer, got '" + value + "'"));
  }
  return static_cast<std::size_t>(n);
}

double positive(const std::string& key, double v, const std::string& where) {
  if (!(v > 0.0)) throw ConfigError(prefixed(where, key + " must be positive"));
  return v;
}

RunMode parse_mode(const std::string& value, const std::string& where) {
  static const std::map<std::string, RunMode> modes = {
      {"forward", RunMode::forward},
      {"inverse", RunMode::inverse},
      {"roundtrip", RunMode::roundtrip},
      {"fit", RunMode::fit},
      {"check-breaking", RunMode::check_breaking},
  };
  const auto it = modes.find(trim(value));
  if (it == modes.end()) {
    throw ConfigError(prefixed(where, "unknown mode '" + value +
                                          "' (forward, inverse, roundtrip, fit, check-breaking)"));
  }
  return it->second;
}

QuadratureScheme parse_scheme(const std::string& key, const std::string& value,
                              const std::string& where) {
  const std::string v = trim(value);
  if (v == "gauss-legendre" || v == "gl") return QuadratureScheme::gauss_legendre;
  if (v == "trapezoid") return QuadratureScheme::trapezoid;
  throw ConfigError(prefixed(where, key + " must be gauss-legendre or trapezoid"));
}

ScalingParams& scaling(RunConfig& c) {
  if (!c.scaling) c.scaling = ScalingParams{};
  return *c.scaling;
}

// Canonical key: lower case, '_' -> '-', with a few aliases.
std::string canonical(std::string key) {
  for (char& ch : key) {
    if (ch == '_') ch = '-';
  }
  static const std::map<std::string, std::string> aliases = {
      {"n-k", "nk"}, {"k-max", "kmax"}, {"m", "bay-m"}, {"input", "in"}, {"output", "out"},
      {"h0", "H0"},
  };
  const auto it = aliases.find(key);
  return it == aliases.end() ? key : it->second;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"mode", [](RunConfig& c, const std::string& v,
                  const std::string& w) { c.mode = parse_mode(v, w); }},
      {"bay-m",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.bay_m = positive("bay-m", parse_double("bay-m", v, w), w);
       }},
      {"proj-order",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         const std::size_t n = parse_count("proj-order", v, w);
         if (n > static_cast<std::size_t>(kMaxProjectionOrder)) {
           throw ConfigError(prefixed(w, "proj-order must be in [0, " +
                                             std::to_string(kMaxProjectionOrder) + "]"));
         }
         c.forward.projection_order = static_cast<int>(n);
       }},
      {"nk", [](RunConfig& c, const std::string& v,
                const std::string& w) { c.quadrature.n_k = parse_count("nk", v, w); }},
      {"kmax",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.quadrature.k_max = positive("kmax", parse_double("kmax", v, w), w);
       }},
      {"k-cap",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.quadrature.k_cap = positive("k-cap", parse_double("k-cap", v, w), w);
       }},
      {"n-inner", [](RunConfig& c, const std::string& v,
                     const std::string& w) { c.quadrature.n_inner = parse_count("n-inner", v, w); }},
      {"scheme", [](RunConfig& c, const std::string& v,
                    const std::string& w) { c.quadrature.scheme = parse_scheme("scheme", v, w); }},
      {"inner-scheme",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.quadrature.inner_scheme = parse_scheme("inner-scheme", v, w);
       }},
      {"decay-tol",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.quadrature.decay_tol = positive("decay-tol", parse_double("decay-tol", v, w), w);
       }},
      {"n-tau", [](RunConfig& c, const std::string& v,
                   const std::string& w) { c.forward.n_tau = parse_count("n-tau", v, w); }},
      {"tau-half-width",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.forward.tau_half_width =
             positive("tau-half-width", parse_double("tau-half-width", v, w), w);
       }},
      {"fit-terms", [](RunConfig& c, const std::string& v,
                       const std::string& w) { c.inverse.fit.terms = parse_count("fit-terms", v, w); }},
      {"fit-max-terms",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.inverse.fit.max_terms = parse_count("fit-max-terms", v, w);
       }},
      {"fit-tol",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.inverse.fit.tolerance = positive("fit-tol", parse_double("fit-tol", v, w), w);
       }},
      {"n-lambda", [](RunConfig& c, const std::string& v,
                      const std::string& w) { c.inverse.n_lambda = parse_count("n-lambda", v, w); }},
      {"n-xi", [](RunConfig& c, const std::string& v,
                  const std::string& w) { c.inverse.n_xi = parse_count("n-xi", v, w); }},
      {"n-sigma", [](RunConfig& c, const std::string& v,
                     const std::string& w) { c.inverse.n_sigma = parse_count("n-sigma", v, w); }},
      {"n-band", [](RunConfig& c, const std::string& v,
                    const std::string& w) { c.inverse.n_band = parse_count("n-band", v, w); }},
      {"lambda-max",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.inverse.lambda_max = positive("lambda-max", parse_double("lambda-max", v, w), w);
       }},
      {"t-reach",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.inverse.t_reach = positive("t-reach", parse_double("t-reach", v, w), w);
       }},
      {"breaking-threshold",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         const double t = parse_double("breaking-threshold", v, w);
         c.forward.breaking_threshold = t;
         c.inverse.breaking_threshold = t;
       }},
      {"in", [](RunConfig& c, const std::string& v, const std::string&) { c.input = trim(v); }},
      {"out", [](RunConfig& c, const std::string& v, const std::string&) { c.output = trim(v); }},
      {"case",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         const std::string s = trim(v);
         if (s == "gaussian") {
           c.builtin_case = BuiltinCase::gaussian;
         } else if (s == "soliton") {
           c.builtin_case = BuiltinCase::soliton;
         } else if (s == "nwave" || s == "n-wave") {
           c.builtin_case = BuiltinCase::nwave;
         } else {
           throw ConfigError(prefixed(w, "case must be gaussian, soliton or nwave"));
         }
       }},
      {"amplitude", [](RunConfig& c, const std::string& v,
                       const std::string& w) { c.amplitude = parse_double("amplitude", v, w); }},
      {"n-x", [](RunConfig& c, const std::string& v,
                 const std::string& w) { c.n_x = parse_count("n-x", v, w); }},
      {"x-min", [](RunConfig& c, const std::string& v,
                   const std::string& w) { c.x_min = parse_double("x-min", v, w); }},
      {"x-max", [](RunConfig& c, const std::string& v,
                   const std::string& w) { c.x_max = parse_double("x-max", v, w); }},
      {"H0", [](RunConfig& c, const std::string& v,
                const std::string& w) { scaling(c).H0 = parse_double("H0", v, w); }},
      {"alpha", [](RunConfig& c, const std::string& v,
                   const std::string& w) { scaling(c).alpha = parse_double("alpha", v, w); }},
      {"g", [](RunConfig& c, const std::string& v,
               const std::string& w) { scaling(c).g = parse_double("g", v, w); }},
  };
  return table;
}

void read_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = path.string() + ":" + std::to_string(number);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (canonical(key) == "config") throw ConfigError(where + ": config files cannot nest");
    apply_setting(config, key, line.substr(eq + 1), where);
  }
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::string& where) {
  const auto& table = setters();
  const auto it = table.find(canonical(key));
  if (it == table.end()) throw ConfigError(prefixed(where, "unknown key '" + key + "'"));
  it->second(config, value, where);
}

void RunConfig::validate() const {
  if (!(bay_m > 0.0)) throw ConfigError("bay-m must be positive");
  try {
    quadrature.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (forward.n_tau < 16) throw ConfigError("n-tau must be at least 16");
  if (inverse.n_lambda < 16 || inverse.n_xi < 16 || inverse.n_sigma < 16) {
    throw ConfigError("n-lambda, n-xi and n-sigma must be at least 16");
  }
  if (inverse.n_band < 5 || inverse.n_band % 2 == 0) {
    throw ConfigError("n-band must be odd and at least 5");
  }
  if (!input) {
    if (mode == RunMode::inverse || mode == RunMode::fit) {
      throw ConfigError(std::string(to_string(mode)) + " mode needs --in FILE with t,R columns");
    }
    if (n_x < 16) throw ConfigError("n-x must be at least 16");
    if (!(x_min >= 0.0) || !(x_max > x_min)) throw ConfigError("need 0 <= x-min < x-max");
  }
  if (scaling) {
    try {
      scaling->validate();
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
}

RunConfig parse_config(const std::vector<std::string>& args) {
  // Collect flags first so that the config file can be applied underneath.
  std::vector<std::pair<std::string, std::string>> flags;
  std::optional<std::string> mode;
  std::optional<std::filesystem::path> file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      if (i == 0) {
        mode = a;
        continue;
      }
      throw ConfigError("unexpected argument '" + a + "'");
    }
    std::string key = a.substr(2);
    std::string value;
    const auto eq = key.find('=');
    if (eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.erase(eq);
    } else {
      if (i + 1 >= args.size()) throw ConfigError("flag --" + key + " needs a value");
      value = args[++i];
    }
    if (canonical(key) == "config") {
      file = value;
    } else {
      flags.emplace_back(key, value);
    }
  }

  RunConfig config;
  if (file) read_config_file(config, *file);
  if (mode) config.mode = parse_mode(*mode, "");
  for (const auto& [key, value] : flags) apply_setting(config, key, value, "--" + key);
  config.validate();
  return config;
}

PhysicalIC builtin_case_ic(BuiltinCase which, double amplitude, std::size_t n, double x_min,
                         double x_max, const BayGeometry& bay) {
  Grid1D x = Grid1D::uniform(x_min, x_max, n, GridLabel::x);
  std::vector<double> eta(n), u(n);
  const double speed = 2.0 * std::sqrt((bay.m() + 1.0) / bay.m());
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    double e = 0.0;
    switch (which) {
      case BuiltinCase::gaussian:
        e = amplitude * std::exp(-3.0 * (xi - 3.0) * (xi - 3.0));
        break;
      case BuiltinCase::soliton: {
        const double s = 1.0 / std::cosh(2.0 * xi - 6.0);
        e = amplitude * s * s;
        break;
      }
      case BuiltinCase::nwave:
        e = amplitude * std::exp(-3.0 * (xi - 3.0) * (xi - 3.0)) -
            0.5 * amplitude * std::exp(-2.0 * (xi - 4.0) * (xi - 4.0));
        break;
    }
    eta[i] = e;
    // Velocity of a wave travelling toward the shore.
    u[i] = -speed * (std::sqrt(std::max(e + xi, 0.0)) - std::sqrt(xi));
  }
  return PhysicalIC(std::move(x), std::move(eta), std::move(u));
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

SeriesData read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const std::vector<std::string> header = split_csv(line);

  std::vector<std::string> want;
  if (header.size() >= 2 && header[0] == "t") {
    want = {"t", "R"};
  } else if (header.size() >= 3 && header[0] == "x") {
    want = {"x", "eta0", "u0"};
  } else {
    throw IoError(path.string() + ": header must be 't,R' or 'x,eta0,u0'");
  }
  if (header.size() != want.size()) {
    throw IoError(path.string() + ": expected columns " + want[0] + "," + want[1] +
                  (want.size() > 2 ? "," + want[2] : ""));
  }
  for (std::size_t c = 0; c < want.size(); ++c) {
    if (header[c] != want[c]) {
      throw IoError(path.string() + ": missing column '" + want[c] + "'");
    }
  }

  std::vector<std::vector<double>> cols(want.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    const std::string where = path.string() + ": row " + std::to_string(row);
    if (cells.size() != want.size()) {
      throw IoError(where + ": expected " + std::to_string(want.size()) + " values");
    }
    for (std::size_t c = 0; c < want.size(); ++c) {
      char* end = nullptr;
      const double v = std::strtod(cells[c].c_str(), &end);
      if (cells[c].empty() || end != cells[c].c_str() + cells[c].size() || !std::isfinite(v)) {
        throw IoError(where + ": non-finite or malformed value in column '" + want[c] + "'");
      }
      cols[c].push_back(v);
    }
    const auto& first = cols[0];
    if (first.size() > 1 && !(first.back() > first[first.size() - 2])) {
      throw IoError(where + ": column '" + want[0] + "' is not strictly increasing");
    }
  }
  if (cols[0].size() < 2) throw IoError(path.string() + ": need at least two data rows");
  if (want.size() == 2) {
    return ShorelineSeries(Grid1D(std::move(cols[0]), GridLabel::t), std::move(cols[1]));
  }
  return PhysicalIC(Grid1D(std::move(cols[0]), GridLabel::x), std::move(cols[1]),
                    std::move(cols[2]));
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw InvalidParameter("header/column count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw InvalidParameter("CSV columns differ in length");
  }
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw IoError("cannot write " + path.string());
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::fprintf(f, "%s%s", c ? "," : "", header[c].c_str());
  }
  std::fputc('\n', f);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::fprintf(f, "%s%.17g", c ? "," : "", columns[c][r]);
    }
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw IoError("error while writing " + path.string());
}

namespace {

double peak_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Largest |rec - orig| over the original nodes covered by the recovery,
// divided by the peak of the original field.
double relative_linf(const PhysicalIC& orig, const PhysicalIC& rec, bool velocity) {
  const auto& ref = velocity ? orig.u0 : orig.eta0;
  const SampledFunction f(rec.x, velocity ? rec.u0 : rec.eta0);
  const double peak = peak_abs(ref);
  double err = 0.0;
  for (std::size_t i = 0; i < orig.x.size(); ++i) {
    const double x = orig.x[i];
    if (x < rec.x.front() || x > rec.x.back()) continue;
    err = std::max(err, std::abs(f(x) - ref[i]));
  }
  return peak > 0.0 ? err / peak : err;
}

PhysicalIC load_or_generate_ic(const RunConfig& config, const BayGeometry& bay) {
  if (config.input) {
    SeriesData data = read_series_csv(*config.input);
    if (!std::holds_alternative<PhysicalIC>(data)) {
      throw IoError(config.input->string() + ": this mode needs x,eta0,u0 columns");
    }
    PhysicalIC ic = std::get<PhysicalIC>(std::move(data));
    return config.scaling ? nondimensionalize(ic, *config.scaling) : ic;
  }
  return builtin_case_ic(config.builtin_case, config.amplitude, config.n_x, config.x_min,
                       config.x_max, bay);
}

ShorelineSeries load_series(const RunConfig& config) {
  SeriesData data = read_series_csv(*config.input);
  if (!std::holds_alternative<ShorelineSeries>(data)) {
    throw IoError(config.input->string() + ": this mode needs t,R columns");
  }
  ShorelineSeries s = std::get<ShorelineSeries>(std::move(data));
  return config.scaling ? nondimensionalize(s, *config.scaling) : s;
}

void add_forward(RunOutputs& out, const ForwardResult& fr) {
  out.diagnostics.emplace_back("forward_k_max", fr.k_max);
  out.diagnostics.emplace_back("forward_k_capped", fr.k_capped ? 1.0 : 0.0);
  out.diagnostics.emplace_back("forward_tau_half_width", fr.trace.tau.back());
  out.diagnostics.emplace_back("forward_tau_window_decayed", fr.tau_window_decayed ? 1.0 : 0.0);
  out.diagnostics.emplace_back("forward_projection_warning", fr.projection_warning ? 1.0 : 0.0);
  out.diagnostics.emplace_back("forward_jacobian_margin", fr.jacobian_margin);
  out.diagnostics.emplace_back("runup_max", peak_abs(fr.runup.R));
}

void add_inverse(RunOutputs& out, const InverseResult& inv) {
  out.diagnostics.emplace_back("fit_terms", static_cast<double>(inv.fit.terms().size()));
  out.diagnostics.emplace_back("fit_rms_residual", inv.fit.residual());
  out.diagnostics.emplace_back("fit_relative_residual", inv.fit_report.relative_residual);
  out.diagnostics.emplace_back("fit_converged", inv.fit_report.converged ? 1.0 : 0.0);
  out.diagnostics.emplace_back("breaking_min_jacobian", inv.breaking.min_jacobian);
  out.diagnostics.emplace_back("breaking_t_at_min", inv.breaking.t_at_min);
  out.diagnostics.emplace_back("inverse_sigma_max", inv.projected.sigma.back());
  out.diagnostics.emplace_back("inverse_k_max", inv.k_max);
  out.diagnostics.emplace_back("inverse_k_capped", inv.k_capped ? 1.0 : 0.0);
  out.diagnostics.emplace_back("gamma_band_half_width", inv.band_half_width);
  out.diagnostics.emplace_back("gamma_max_abs", peak_abs(inv.gamma.tau));
}

}  // namespace

namespace {

// RUNUP_NUM_THREADS overrides the OpenMP default.
void apply_thread_override() {
  const char* env = std::getenv("RUNUP_NUM_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError("RUNUP_NUM_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

RunOutputs execute(const RunConfig& config) {
  config.validate();
  apply_thread_override();
  const BayGeometry bay(config.bay_m);
  RunOutputs out;
  out.diagnostics.emplace_back("bay_m", config.bay_m);

  switch (config.mode) {
    case RunMode::forward: {
      PhysicalIC ic = load_or_generate_ic(config, bay);
      ForwardResult fr = forward_runup(ic, bay, config.quadrature, config.forward);
      add_forward(out, fr);
      out.runup = std::move(fr.runup);
      out.gamma = std::move(fr.gamma);
      out.original = std::move(ic);
      break;
    }
    case RunMode::inverse: {
      ShorelineSeries R = load_series(config);
      InverseResult inv = inverse_pipeline(R, bay, config.quadrature, config.inverse);
      add_inverse(out, inv);
      out.runup = std::move(R);
      out.recovered = std::move(inv.ic);
      out.gamma = std::move(inv.gamma);
      out.fit = std::move(inv.fit);
      break;
    }
    case RunMode::roundtrip: {
      PhysicalIC ic = load_or_generate_ic(config, bay);
      ForwardResult fr = forward_runup(ic, bay, config.quadrature, config.forward);
      add_forward(out, fr);
      InverseResult inv = inverse_pipeline(fr.runup, bay, config.quadrature, config.inverse);
      add_inverse(out, inv);
      out.diagnostics.emplace_back("eta0_relative_linf_error", relative_linf(ic, inv.ic, false));
      out.diagnostics.emplace_back("u0_relative_linf_error", relative_linf(ic, inv.ic, true));
      out.runup = std::move(fr.runup);
      out.original = std::move(ic);
      out.recovered = std::move(inv.ic);
      out.gamma = std::move(inv.gamma);
      out.fit = std::move(inv.fit);
      break;
    }
    case RunMode::fit: {
      ShorelineSeries R = load_series(config);
      FitReport report;
      GaussianSum fit = fit_gaussian_sum(R, config.inverse.fit, &report);
      out.diagnostics.emplace_back("fit_terms", static_cast<double>(fit.terms().size()));
      out.diagnostics.emplace_back("fit_rms_residual", fit.residual());
      out.diagnostics.emplace_back("fit_relative_residual", report.relative_residual);
      out.diagnostics.emplace_back("fit_converged", report.converged ? 1.0 : 0.0);
      out.runup = ShorelineSeries(R.t, fit.values(R.t.nodes()));
      out.fit = std::move(fit);
      break;
    }
    case RunMode::check_breaking: {
      if (config.input) {
        SeriesData data = read_series_csv(*config.input);
        if (std::holds_alternative<ShorelineSeries>(data)) {
          ShorelineSeries R = load_series(config);
          GaussianSum fit = fit_gaussian_sum(R, config.inverse.fit);
          const BreakingReport rep =
              breaking_check(fit, R.t.front(), R.t.back(), config.inverse.breaking_threshold);
          out.diagnostics.emplace_back("breaking_min_jacobian", rep.min_jacobian);
          out.diagnostics.emplace_back("breaking_t_at_min", rep.t_at_min);
          out.diagnostics.emplace_back("breaking", rep.breaking ? 1.0 : 0.0);
          out.breaking = rep.breaking;
          out.fit = std::move(fit);
          break;
        }
      }
      PhysicalIC ic = load_or_generate_ic(config, bay);
      try {
        ForwardResult fr = forward_runup(ic, bay, config.quadrature, config.forward);
        add_forward(out, fr);
        out.diagnostics.emplace_back("breaking", 0.0);
      } catch (const BreakingError&) {
        out.diagnostics.emplace_back("breaking", 1.0);
        out.breaking = true;
      }
      break;
    }
  }

  if (config.scaling) {
    const ScalingParams& p = *config.scaling;
    if (out.runup) out.runup = dimensionalize(*out.runup, p);
    if (out.original) out.original = dimensionalize(*out.original, p);
    if (out.recovered) out.recovered = dimensionalize(*out.recovered, p);
  }
  return out;
}

std::vector<std::string> emit_results(const RunOutputs& outputs, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& cols) {
    write_csv(dir / name, header, cols);
    written.push_back(name);
  };
  auto ic_columns = [](const PhysicalIC& ic) {
    return std::vector<std::vector<double>>{
        std::vector<double>(ic.x.nodes().begin(), ic.x.nodes().end()), ic.eta0, ic.u0};
  };

  if (outputs.runup) {
    const auto t = outputs.runup->t.nodes();
    emit("runup.csv", {"t", "R"}, {std::vector<double>(t.begin(), t.end()), outputs.runup->R});
  }
  if (outputs.recovered) emit("recovered_ic.csv", {"x", "eta0", "u0"}, ic_columns(*outputs.recovered));
  if (outputs.original) emit("original_ic.csv", {"x", "eta0", "u0"}, ic_columns(*outputs.original));
  if (outputs.gamma) {
    const auto s = outputs.gamma->sigma.nodes();
    emit("gamma.csv", {"sigma", "tau"},
         {std::vector<double>(s.begin(), s.end()), outputs.gamma->tau});
  }
  if (outputs.original && outputs.recovered) {
    const PhysicalIC& o = *outputs.original;
    const PhysicalIC& r = *outputs.recovered;
    const SampledFunction eta(r.x, r.eta0);
    const SampledFunction u(r.x, r.u0);
    std::vector<std::vector<double>> cols(5);
    for (std::size_t i = 0; i < o.x.size(); ++i) {
      const double x = o.x[i];
      if (x < r.x.front() || x > r.x.back()) continue;
      cols[0].push_back(x);
      cols[1].push_back(o.eta0[i]);
      cols[2].push_back(eta(x));
      cols[3].push_back(o.u0[i]);
      cols[4].push_back(u(x));
    }
    emit("plot_compare.csv", {"x", "eta0_orig", "eta0_rec", "u0_orig", "u0_rec"}, cols);
  }

  std::FILE* f = std::fopen((dir / "diagnostics.csv").string().c_str(), "wb");
  if (!f) throw IoError("cannot write " + (dir / "diagnostics.csv").string());
  std::fprintf(f, "metric,value\n");
  for (const auto& [name, value] : outputs.diagnostics) {
    std::fprintf(f, "%s,%.17g\n", name.c_str(), value);
  }
  if (outputs.fit) {
    std::size_t j = 0;
    for (const GaussianTerm& term : outputs.fit->terms()) {
      ++j;
      std::fprintf(f, "fit_a_%zu,%.17g\nfit_b_%zu,%.17g\nfit_c_%zu,%.17g\n", j, term.a, j, term.b, j,
                   term.c);
    }
  }
  if (std::fclose(f) != 0) throw IoError("error while writing diagnostics.csv");
  written.push_back("diagnostics.csv");
  return written;
}

}  // namespace runup
