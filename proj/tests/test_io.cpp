#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "runup/io.hpp"

using namespace runup;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("runup_test_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const std::vector<std::string>& args) {
  try {
    parse_config(args);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("command-line parsing") {
  const RunConfig d = parse_config({});
  CHECK(d.mode == RunMode::roundtrip);
  CHECK(d.bay_m == 2.0);
  CHECK(d.forward.projection_order == 2);
  CHECK(d.quadrature.n_k == 2048);

  const RunConfig c = parse_config({"forward", "--bay-m", "3", "--proj-order=4", "--nk", "1024",
                                    "--kmax", "30", "--out", "somewhere", "--case", "nwave"});
  CHECK(c.mode == RunMode::forward);
  CHECK(c.bay_m == 3.0);
  CHECK(c.forward.projection_order == 4);
  CHECK(c.quadrature.n_k == 1024);
  CHECK(*c.quadrature.k_max == 30.0);
  CHECK(c.output == fs::path("somewhere"));
  CHECK(c.builtin_case == BuiltinCase::nwave);

  const RunConfig m = parse_config({"--mode", "roundtrip", "--bay-m", "2", "--t-reach", "30"});
  CHECK(m.mode == RunMode::roundtrip);
  CHECK(m.bay_m == 2.0);
  CHECK(*m.inverse.t_reach == 30.0);

  const RunConfig a = parse_config({"fit", "--in", "r.csv", "--fit_terms", "3", "--n-k", "64"});
  CHECK(a.inverse.fit.terms == 3);
  CHECK(a.quadrature.n_k == 64);
  CHECK(a.mode == RunMode::fit);
}

TEST_CASE("parse errors name the offending key") {
  CHECK(config_error({"--bay-m", "-1"}) == "--bay-m: bay-m must be positive");
  CHECK(config_error({"--bay-m", "abc"}).find("expects a number") != std::string::npos);
  CHECK(config_error({"--frobnicate", "1"}) == "--frobnicate: unknown key 'frobnicate'");
  CHECK(config_error({"--nk"}).find("needs a value") != std::string::npos);
  CHECK(config_error({"sideways"}).find("mode") != std::string::npos);
  CHECK(config_error({"forward", "stray"}).find("unexpected argument") != std::string::npos);
  CHECK(config_error({"inverse"}).find("--in") != std::string::npos);
  CHECK(config_error({"--proj-order", "9"}).find("proj-order") != std::string::npos);
  CHECK(config_error({"--n-band", "6"}).find("n-band") != std::string::npos);
  CHECK(config_error({"--H0", "-2"}).find("H0") != std::string::npos);
}

TEST_CASE("config file with flag precedence") {
  const fs::path cfg = scratch("run.cfg");
  put(cfg,
      "# comment line\n"
      "mode = forward\n"
      "bay_m = 1.5   # trailing comment\n"
      "nk = 512\n"
      "\n"
      "out = from_file\n");
  const RunConfig c = parse_config({"--config", cfg.string(), "--nk", "256"});
  CHECK(c.mode == RunMode::forward);
  CHECK(c.bay_m == 1.5);
  CHECK(c.quadrature.n_k == 256);
  CHECK(c.output == fs::path("from_file"));
  // The positional mode beats the file.
  CHECK(parse_config({"roundtrip", "--config", cfg.string()}).mode == RunMode::roundtrip);

  put(cfg, "nk = 512\nwibble = 3\n");
  CHECK(config_error({"--config", cfg.string()}) == cfg.string() + ":2: unknown key 'wibble'");
  put(cfg, "nk 512\n");
  CHECK(config_error({"--config", cfg.string()}).find(":1: expected") != std::string::npos);
  put(cfg, "config = other.cfg\n");
  CHECK(config_error({"--config", cfg.string()}).find("nest") != std::string::npos);
  CHECK(config_error({"--config", (cfg.parent_path() / "missing.cfg").string()})
            .find("cannot open") != std::string::npos);
}

TEST_CASE("reading series files") {
  const fs::path p = scratch("series.csv");
  put(p, "t,R\n0,0\n0.5,1e-5\n1.0,-2e-5\n");
  SeriesData d = read_series_csv(p);
  REQUIRE(std::holds_alternative<ShorelineSeries>(d));
  const auto& s = std::get<ShorelineSeries>(d);
  CHECK(s.t.size() == 3);
  CHECK(s.R[2] == -2e-5);

  put(p, "x,eta0,u0\n0,0,0\n1,1e-5,-1e-5\n");
  d = read_series_csv(p);
  REQUIRE(std::holds_alternative<PhysicalIC>(d));
  CHECK(std::get<PhysicalIC>(d).u0[1] == -1e-5);

  auto io_error = [&](const std::string& text) -> std::string {
    put(p, text);
    try {
      read_series_csv(p);
    } catch (const IoError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(io_error("x,eta0\n0,0\n1,1\n").find("header") != std::string::npos);
  CHECK(io_error("t,R,extra\n0,0,0\n1,1,1\n").find("expected columns") != std::string::npos);
  CHECK(io_error("x,eta,u0\n0,0,0\n1,1,1\n").find("missing column 'eta0'") != std::string::npos);
  CHECK(io_error("a,b\n0,0\n").find("header") != std::string::npos);
  CHECK(io_error("t,R\n0,0\n1,nan\n").find("row 3") != std::string::npos);
  CHECK(io_error("t,R\n0,0\n1,1x\n").find("malformed") != std::string::npos);
  CHECK(io_error("t,R\n0,0\n1\n").find("expected 2 values") != std::string::npos);
  CHECK(io_error("t,R\n0,0\n0,1\n").find("strictly increasing") != std::string::npos);
  CHECK(io_error("t,R\n0,0\n").find("two data rows") != std::string::npos);
  CHECK(io_error("").find("empty") != std::string::npos);
  CHECK_THROWS_AS(read_series_csv(scratch("absent.csv")), IoError);
}

TEST_CASE("written files read back exactly") {
  const BayGeometry bay(2.0);
  const PhysicalIC ic = builtin_case_ic(BuiltinCase::soliton, 5e-5, 200, 0.1, 9.1, bay);
  RunOutputs out;
  out.original = ic;
  out.runup = ShorelineSeries(Grid1D::uniform(-3.0, 3.0, 50, GridLabel::t),
                              std::vector<double>(50, 1.0 / 3.0));
  const fs::path dir = scratch("emit");
  const auto files = emit_results(out, dir);
  CHECK(files == std::vector<std::string>{"runup.csv", "original_ic.csv", "diagnostics.csv"});
  const auto back = std::get<PhysicalIC>(read_series_csv(dir / "original_ic.csv"));
  CHECK(back.eta0 == ic.eta0);
  CHECK(back.u0 == ic.u0);
  for (std::size_t i = 0; i < ic.x.size(); ++i) CHECK(back.x[i] == ic.x[i]);
  const auto r = std::get<ShorelineSeries>(read_series_csv(dir / "runup.csv"));
  CHECK(r.R == out.runup->R);
}

TEST_CASE("built-in cases") {
  const BayGeometry bay(2.0);
  const PhysicalIC g = builtin_case_ic(BuiltinCase::gaussian, 5e-5, 901, 0.1, 9.1, bay);
  std::size_t at = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    if (g.eta0[i] > g.eta0[at]) at = i;
  }
  CHECK(g.x[at] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(g.eta0[at] == doctest::Approx(5e-5).epsilon(1e-12));
  // Shoreward (negative) velocity, about -sqrt(3/2) eta / sqrt(x) for small eta.
  CHECK(g.u0[at] < 0.0);
  CHECK(g.u0[at] == doctest::Approx(-std::sqrt(1.5) * 5e-5 / std::sqrt(3.0)).epsilon(1e-4));
  const PhysicalIC n = builtin_case_ic(BuiltinCase::nwave, 5e-5, 901, 0.1, 9.1, bay);
  double lo = 0.0;
  for (double v : n.eta0) lo = std::min(lo, v);
  CHECK(lo < 0.0);
}

TEST_CASE("execute runs a forward case end to end") {
  RunConfig c = parse_config({"forward", "--case", "gaussian"});
  const RunOutputs out = execute(c);
  REQUIRE(out.runup);
  REQUIRE(out.original);
  REQUIRE(out.gamma);
  CHECK_FALSE(out.breaking);
  bool found = false;
  for (const auto& [name, value] : out.diagnostics) {
    if (name == "runup_max") {
      found = true;
      CHECK(value > 0.0);
    }
  }
  CHECK(found);
  // Identical reruns write identical bytes.
  const fs::path a = scratch("rerun_a");
  const fs::path b = scratch("rerun_b");
  emit_results(out, a);
  emit_results(execute(c), b);
  for (const char* f : {"runup.csv", "original_ic.csv", "gamma.csv", "diagnostics.csv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("dimensional scaling is applied to outputs") {
  RunConfig c = parse_config({"forward", "--H0", "2", "--alpha", "0.1"});
  const RunOutputs dim = execute(c);
  const RunOutputs plain = execute(parse_config({"forward"}));
  REQUIRE(dim.runup);
  REQUIRE(plain.runup);
  double pd = 0.0, pp = 0.0;
  for (double v : dim.runup->R) pd = std::max(pd, std::abs(v));
  for (double v : plain.runup->R) pp = std::max(pp, std::abs(v));
  CHECK(pd == doctest::Approx(2.0 * pp).epsilon(1e-12));
}
