// Randomized properties. Every case is seeded so failures reproduce.
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <unistd.h>

#include "doctest.h"
#include "runup/cgt.hpp"
#include "runup/forward.hpp"
#include "runup/inverse.hpp"
#include "runup/io.hpp"

using namespace runup;

namespace {

constexpr int kCases = 40;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::size_t count(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  // Small non-breaking Gaussian sum centred near the origin.
  GaussianSum gaussian_sum(double amplitude) {
    std::vector<GaussianTerm> terms(count(1, 4));
    for (auto& t : terms) t = {uniform(-amplitude, amplitude), uniform(0.3, 3.0), uniform(-2.0, 2.0)};
    return GaussianSum(std::move(terms));
  }

  // Compactly supported bump on [lo, hi] (zero with three derivatives at the ends).
  std::vector<double> bump(const Grid1D& g, double lo, double hi) {
    const double c = uniform(lo + 0.3 * (hi - lo), hi - 0.3 * (hi - lo));
    const double w = uniform(0.1, 0.25) * (hi - lo);
    const double amp = uniform(-1.0, 1.0);
    std::vector<double> v(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double z = (g[i] - c) / w;
      if (std::abs(z) < 1.0) v[i] = amp * std::pow(1.0 - z * z, 4);
    }
    return v;
  }
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("GaussianSum derivatives agree with finite differences") {
  Gen gen(11);
  for (int n = 0; n < kCases; ++n) {
    const GaussianSum g = gen.gaussian_sum(1.0);
    const double t = gen.uniform(-3.0, 3.0);
    const double h = 1e-4;
    const double fd1 = (g.value(t + h) - g.value(t - h)) / (2.0 * h);
    const double fd2 = (g.derivative(t + h) - g.derivative(t - h)) / (2.0 * h);
    const double fd3 = (g.second_derivative(t + h) - g.second_derivative(t - h)) / (2.0 * h);
    CHECK(g.derivative(t) == doctest::Approx(fd1).epsilon(1e-6).scale(1.0));
    CHECK(g.second_derivative(t) == doctest::Approx(fd2).epsilon(1e-6).scale(1.0));
    CHECK(g.third_derivative(t) == doctest::Approx(fd3).epsilon(1e-6).scale(1.0));
    const GaussianSum::Jet j = g.jet(t);
    CHECK(j.value == g.value(t));
    CHECK(j.d1 == doctest::Approx(g.derivative(t)).epsilon(1e-15));
    CHECK(j.d2 == doctest::Approx(g.second_derivative(t)).epsilon(1e-15));
  }
}

TEST_CASE("parity parts are even, odd and sum back exactly") {
  Gen gen(12);
  for (int n = 0; n < kCases; ++n) {
    const GaussianSum g = gen.gaussian_sum(1.0);
    const Grid1D xs = Grid1D::uniform(0.0, gen.uniform(1.0, 5.0), gen.count(5, 40), GridLabel::xi);
    auto f = [&](double x) { return g.value(x); };
    const ParityParts p = even_odd_split(f, xs);
    const ParityParts q = even_odd_split([&](double x) { return g.value(-x); }, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(std::abs(p.even[i] + p.odd[i] - f(xs[i])) <= 4e-16 * (std::abs(p.even[i]) + std::abs(p.odd[i])));
      CHECK(p.even[i] == doctest::Approx(q.even[i]).epsilon(1e-15).scale(1e-300));
      CHECK(p.odd[i] == doctest::Approx(-q.odd[i]).epsilon(1e-12).scale(1e-15));
    }
  }
}

TEST_CASE("shoreline map inverts tau = t + R'(t)") {
  Gen gen(13);
  for (int n = 0; n < kCases; ++n) {
    const GaussianSum g = gen.gaussian_sum(0.05);
    if (breaking_check(g, -20.0, 20.0).breaking) continue;
    const double tau = gen.uniform(-6.0, 6.0);
    const ShorelinePoint p = shoreline_at(g, tau);
    CHECK(p.t + g.derivative(p.t) == doctest::Approx(tau).epsilon(1e-12).scale(1.0));
    // R = psi0 - phi0^2/2 recovers the run-up.
    CHECK(p.psi0 - 0.5 * p.phi0 * p.phi0 == doctest::Approx(g.value(p.t)).epsilon(1e-12).scale(1e-14));
  }
}

TEST_CASE("CGT round trip on random small waves") {
  Gen gen(14);
  for (int n = 0; n < 10; ++n) {
    const Grid1D x = Grid1D::uniform(0.0, 10.0, 801, GridLabel::x);
    auto eta = gen.bump(x, 1.0, 9.0);
    auto u = gen.bump(x, 1.0, 9.0);
    const double ea = gen.uniform(1e-5, 1e-2);
    const double ua = gen.uniform(1e-5, 1e-2);
    for (double& v : eta) v *= ea;
    for (double& v : u) v *= ua;
    const PhysicalIC ic(x, eta, u);
    const PhysicalIC back = inverse_cgt_on_gamma(physical_to_hodograph_ic(ic).gamma);
    const SampledFunction e0(x, eta);
    const SampledFunction u0(x, u);
    for (std::size_t i = 0; i < back.x.size(); i += 7) {
      // Limited by pchip resampling.
      CHECK(std::abs(back.eta0[i] - e0(back.x[i])) <= 1e-4 * ea);
      CHECK(std::abs(back.u0[i] - u0(back.x[i])) <= 1e-4 * ua);
    }
  }
}

TEST_CASE("spectral moments are linear") {
  Gen gen(15);
  const BayGeometry bay(2.0);
  QuadratureConfig cfg;
  cfg.k_max = 20.0;
  cfg.n_k = 256;
  for (int n = 0; n < 10; ++n) {
    const Grid1D s = Grid1D::uniform(0.0, 10.0, 257, GridLabel::sigma);
    const auto p1 = gen.bump(s, 0.5, 9.5), f1 = gen.bump(s, 0.5, 9.5);
    const auto p2 = gen.bump(s, 0.5, 9.5), f2 = gen.bump(s, 0.5, 9.5);
    const double a = gen.uniform(-2.0, 2.0), b = gen.uniform(-2.0, 2.0);
    std::vector<double> ps(s.size()), fs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      ps[i] = a * p1[i] + b * p2[i];
      fs[i] = a * f1[i] + b * f2[i];
    }
    const auto m1 = spectral_moments(SampledFunction(s, p1), SampledFunction(s, f1), bay, cfg);
    const auto m2 = spectral_moments(SampledFunction(s, p2), SampledFunction(s, f2), bay, cfg);
    const auto ms = spectral_moments(SampledFunction(s, ps), SampledFunction(s, fs), bay, cfg);
    const double scale = std::max(max_abs(ms.a), max_abs(ms.b)) + 1e-300;
    for (std::size_t i = 0; i < ms.a.size(); ++i) {
      CHECK(std::abs(ms.a[i] - (a * m1.a[i] + b * m2.a[i])) <= 1e-12 * scale);
      CHECK(std::abs(ms.b[i] - (a * m1.b[i] + b * m2.b[i])) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("psi-Abel of random polynomials, parabolic bay") {
  // psi_hat = (pi / lambda) int_0^{lambda/pi} F; for F = sum c_j xi^j this is
  // sum c_j (lambda/pi)^j / (j + 1).
  Gen gen(16);
  const BayGeometry bay(2.0);
  const QuadratureConfig cfg;
  for (int n = 0; n < kCases; ++n) {
    std::vector<double> c(gen.count(1, 6));
    for (double& v : c) v = gen.uniform(-1.0, 1.0);
    auto F = [&](double xi) {
      double s = 0.0;
      for (std::size_t j = c.size(); j-- > 0;) s = s * xi + c[j];
      return s;
    };
    const double lambda = gen.uniform(0.05, 6.0);
    double exact = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      exact += c[j] * std::pow(lambda / std::numbers::pi, double(j)) / double(j + 1);
    }
    CHECK(abel_recover(AbelKind::psi, F, 2.0, lambda, bay, cfg) ==
          doctest::Approx(exact).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("CSV output round-trips doubles exactly") {
  Gen gen(17);
  const auto dir = std::filesystem::temp_directory_path() / ("runup_prop_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  for (int n = 0; n < 10; ++n) {
    const std::size_t rows = gen.count(2, 100);
    std::vector<double> t(rows), R(rows);
    double acc = gen.uniform(-100.0, 100.0);
    for (std::size_t i = 0; i < rows; ++i) {
      acc += std::exp(gen.uniform(-20.0, 3.0));
      t[i] = acc;
      R[i] = gen.uniform(-1.0, 1.0) * std::exp(gen.uniform(-300.0, 300.0) * 0.1);
    }
    write_csv(dir / "r.csv", {"t", "R"}, {t, R});
    const auto back = std::get<ShorelineSeries>(read_series_csv(dir / "r.csv"));
    CHECK(back.R == R);
    for (std::size_t i = 0; i < rows; ++i) CHECK(back.t[i] == t[i]);
  }
  std::filesystem::remove_all(dir);
}
