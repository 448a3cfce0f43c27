#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "runup/inverse.hpp"

using namespace runup;

namespace {

ShorelineSeries sampled(const GaussianSum& g, double lo, double hi, std::size_t n) {
  Grid1D t = Grid1D::uniform(lo, hi, n, GridLabel::t);
  std::vector<double> R = g.values(t.nodes());
  return ShorelineSeries(std::move(t), std::move(R));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("single-pulse fit recovers its parameters") {
  const ShorelineSeries s = sampled(GaussianSum({{1e-5, 2.0, 1.0}}), -5.0, 5.0, 401);
  FitReport rep;
  const GaussianSum g = fit_gaussian_sum(s, FitOptions{1, 24, 1e-6, 400}, &rep);
  REQUIRE(g.terms().size() == 1);
  CHECK(g.terms()[0].a == doctest::Approx(1e-5).epsilon(1e-8));
  CHECK(g.terms()[0].b == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(g.terms()[0].c == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.converged);
  CHECK(rep.relative_residual < 1e-10);
}

TEST_CASE("two-pulse N-wave fit") {
  const GaussianSum truth({{1e-4, 3.0, -1.0}, {-5e-5, 3.0, 1.0}});
  const ShorelineSeries s = sampled(truth, -6.0, 6.0, 601);
  const GaussianSum g = fit_gaussian_sum(s, 2);
  CHECK(g.residual() <= 1e-12 * 1e-4);
  for (double t : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
    CHECK(std::abs(g.value(t) - truth.value(t)) < 1e-12);
  }
}

TEST_CASE("automatic term count reaches the tolerance") {
  // A sech^2 profile is not a finite Gaussian sum.
  Grid1D t = Grid1D::uniform(-10.0, 10.0, 801, GridLabel::t);
  std::vector<double> R(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) R[i] = 1e-4 / std::pow(std::cosh(t[i]), 2);
  FitReport rep;
  FitOptions opt;
  opt.tolerance = 1e-4;
  const GaussianSum g = fit_gaussian_sum(ShorelineSeries(t, R), opt, &rep);
  CHECK(rep.converged);
  CHECK(rep.relative_residual <= 1e-4);
  CHECK(g.terms().size() > 1);
  CHECK(g.residual() <= 1e-4 * 1e-4 * 1.0001);
}

TEST_CASE("fit edge cases") {
  const Grid1D t = Grid1D::uniform(0.0, 1.0, 30, GridLabel::t);
  const ShorelineSeries zero(t, std::vector<double>(30, 0.0));
  FitReport rep;
  const GaussianSum g = fit_gaussian_sum(zero, FitOptions{}, &rep);
  for (const auto& term : g.terms()) CHECK(term.a == 0.0);
  CHECK(g.residual() == 0.0);
  CHECK(rep.relative_residual == 0.0);
  // Too many terms for the samples.
  CHECK_THROWS_AS(fit_gaussian_sum(zero, 11), InvalidParameter);
  FitOptions bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(fit_gaussian_sum(zero, bad), InvalidParameter);
}

TEST_CASE("even/odd split") {
  const Grid1D xs = Grid1D::uniform(0.0, 2.0, 5, GridLabel::xi);
  auto f = [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); };
  const ParityParts p = even_odd_split(f, xs);
  CHECK(p.even[1] == doctest::Approx(0.442100).epsilon(1e-6));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(p.even[i] + p.odd[i] == doctest::Approx(f(xs[i])).epsilon(1e-15));
    CHECK(p.even[i] == doctest::Approx(0.5 * (f(xs[i]) + f(-xs[i]))));
  }
  CHECK(p.odd[0] == 0.0);
  const ParityParts e = even_odd_split([](double x) { return x * x; }, xs);
  for (double o : e.odd) CHECK(o == 0.0);
  const ParityParts o = even_odd_split([](double x) { return x * x * x; }, xs);
  for (double v : o.even) CHECK(v == 0.0);
}

TEST_CASE("grid gamma search") {
  const Grid1D sigma(std::vector<double>{1.0, 2.0, 3.0}, GridLabel::sigma);
  const Grid1D tau = Grid1D::uniform(-1.0, 1.0, 201, GridLabel::tau);
  auto field = [&](auto phi_of) {
    std::vector<double> psi(sigma.size() * tau.size()), phi(psi.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      for (std::size_t j = 0; j < tau.size(); ++j) {
        phi[i * tau.size() + j] = phi_of(sigma[i], tau[j]);
        psi[i * tau.size() + j] = 10.0 * sigma[i] + tau[j];
      }
    }
    return HodographField(sigma, tau, psi, phi);
  };
  SUBCASE("gamma = 0.1 sigma") {
    const GammaCurve g = recover_gamma(field([](double s, double) { return -0.1 * s; }));
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(g.tau[i] == doctest::Approx(0.1 * sigma[i]).epsilon(1e-12));
      CHECK(g.phi[i] == doctest::Approx(-0.1 * sigma[i]));
      CHECK(g.psi[i] == doctest::Approx(10.0 * sigma[i] + g.tau[i]));
    }
  }
  SUBCASE("zero velocity gives gamma = 0") {
    const GammaCurve g = recover_gamma(field([](double, double) { return 0.0; }));
    for (double v : g.tau) CHECK(std::abs(v) < 1e-15);
  }
  SUBCASE("ties go to the smallest |tau|") {
    // tau + phi vanishes on a whole interval around tau = 0.
    const GammaCurve g = recover_gamma(field([](double, double t) {
      return std::abs(t) < 0.05 ? -t : 0.0;
    }));
    for (double v : g.tau) CHECK(std::abs(v) < 1e-15);
  }
  SUBCASE("minimum on the band edge") {
    CHECK_THROWS_AS(recover_gamma(field([](double, double) { return -2.0; })), RangeError);
  }
}

TEST_CASE("manufactured Abel round trip through the spectral solution") {
  // psi_hat(lambda) with compact support; synthesize psi(0, tau), split off
  // the even part and recover psi_hat.
  const BayGeometry bay(2.0);
  const QuadratureConfig cfg;
  const Grid1D lambda = Grid1D::uniform(0.0, 4.0, 513, GridLabel::lambda);
  std::vector<double> psi(lambda.size()), phi(lambda.size(), 0.0);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    psi[i] = std::exp(-6.0 * (lambda[i] - 1.7) * (lambda[i] - 1.7));
  }
  const SpectralSolution sol(SampledFunction(lambda, psi), SampledFunction(lambda, phi), bay, cfg);
  const Grid1D xi = Grid1D::uniform(0.0, 4.0 / std::numbers::pi, 2049, GridLabel::xi);
  std::vector<double> taus(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) taus[i] = bay.q() * xi[i];
  const SampledFunction Psi(xi, sol.shoreline_psi(taus));
  const std::vector<double> check = {0.5, 1.0, 1.7, 2.2, 3.0};
  const auto rec = abel_recover(AbelKind::psi, Psi, check, bay, cfg);
  for (std::size_t i = 0; i < check.size(); ++i) {
    CHECK(std::abs(rec[i] - std::exp(-6.0 * (check[i] - 1.7) * (check[i] - 1.7))) < 1e-4);
  }
}

TEST_CASE("zero run-up inverts to zero initial data") {
  const Grid1D t = Grid1D::uniform(-10.0, 10.0, 256, GridLabel::t);
  const ShorelineSeries R(t, std::vector<double>(256, 0.0));
  InverseOptions opt;
  opt.n_sigma = 64;
  opt.n_lambda = 64;
  opt.n_xi = 256;
  const InverseResult r = inverse_pipeline(R, BayGeometry(2.0), QuadratureConfig{}, opt);
  for (double v : r.ic.eta0) CHECK(v == 0.0);
  for (double v : r.ic.u0) CHECK(v == 0.0);
  CHECK(max_abs(r.gamma.tau) == 0.0);
}

TEST_CASE("breaking run-up is rejected by the inverse") {
  const ShorelineSeries s = sampled(GaussianSum({{1.0, 1.0, 0.0}}), -5.0, 5.0, 201);
  CHECK_THROWS_AS(inverse_pipeline(s, BayGeometry(2.0), QuadratureConfig{}), BreakingError);
}

TEST_CASE("inverse option checks") {
  const ShorelineSeries s = sampled(GaussianSum({{1e-4, 1.0, 0.0}}), -5.0, 5.0, 201);
  InverseOptions o;
  o.n_sigma = 4;
  CHECK_THROWS_AS(inverse_pipeline(s, BayGeometry(2.0), QuadratureConfig{}, o), InvalidParameter);
  InverseOptions l;
  l.lambda_max = -1.0;
  CHECK_THROWS_AS(recover_projected_ic(GaussianSum({{1e-4, 1.0, 0.0}}), BayGeometry(2.0),
                                       QuadratureConfig{}, l),
                  InvalidParameter);
}
