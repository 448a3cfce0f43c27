#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "runup/core.hpp"
#include "runup/forward.hpp"
#include "runup/inverse.hpp"
#include "runup/transforms.hpp"

namespace runup {

enum class RunMode { forward, inverse, roundtrip, fit, check_breaking };

std::string_view to_string(RunMode mode);

// Built-in initial conditions of the verification suite.
enum class BuiltinCase { gaussian, soliton, nwave };

struct RunConfig {
  RunMode mode = RunMode::roundtrip;
  double bay_m = 2.0;
  QuadratureConfig quadrature;
  ForwardOptions forward;
  InverseOptions inverse;
  std::optional<std::filesystem::path> input;
  std::filesystem::path output = ".";
  // Used by forward-type modes when no input file is given.
  BuiltinCase builtin_case = BuiltinCase::gaussian;
  double amplitude = 5e-5;
  std::size_t n_x = 512;
  double x_min = 0.1;
  double x_max = 9.1;
  // Set when inputs and outputs are dimensional.
  std::optional<ScalingParams> scaling;

  void validate() const;
};

// `args` excludes the program name. The first argument may be the mode;
// `--config FILE` reads `key = value` lines ('#' starts a comment) whose keys
// are the flag names without dashes. Flags override file values.
RunConfig parse_config(const std::vector<std::string>& args);

// Applies one `key`/`value` pair; throws ConfigError for unknown keys or bad
// values. `where` prefixes messages (e.g. "cfg.txt:3").
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::string& where = "");

PhysicalIC builtin_case_ic(BuiltinCase which, double amplitude, std::size_t n, double x_min,
                         double x_max, const BayGeometry& bay);

// `t,R` -> ShorelineSeries, `x,eta0,u0` -> PhysicalIC.
using SeriesData = std::variant<ShorelineSeries, PhysicalIC>;
SeriesData read_series_csv(const std::filesystem::path& path);

// Header row then rows formatted with %.17g.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// Everything a run produced; absent members are not written.
struct RunOutputs {
  std::optional<ShorelineSeries> runup;
  std::optional<PhysicalIC> original;
  std::optional<PhysicalIC> recovered;
  std::optional<GammaCurve> gamma;
  std::optional<GaussianSum> fit;
  std::vector<std::pair<std::string, double>> diagnostics;
  // Nonzero when check-breaking found a breaking wave.
  bool breaking = false;
};

RunOutputs execute(const RunConfig& config);

// Writes the files for `outputs` into `dir` and returns their names.
std::vector<std::string> emit_results(const RunOutputs& outputs, const std::filesystem::path& dir);

}  // namespace runup
