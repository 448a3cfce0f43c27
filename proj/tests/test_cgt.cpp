#include <cmath>

#include "doctest.h"
#include "runup/cgt.hpp"

using namespace runup;

namespace {

PhysicalIC bump(double amp, double u_amp, std::size_t n = 401) {
  Grid1D x = Grid1D::uniform(0.0, 8.0, n, GridLabel::x);
  std::vector<double> eta(n), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    eta[i] = amp * std::exp(-3.0 * (x[i] - 3.0) * (x[i] - 3.0));
    u[i] = u_amp * std::exp(-3.0 * (x[i] - 3.0) * (x[i] - 3.0));
  }
  return PhysicalIC(std::move(x), std::move(eta), std::move(u));
}

}  // namespace

TEST_CASE("still water maps to sigma = x with zero data") {
  const PhysicalIC ic = bump(0.0, 0.0);
  const auto h = physical_to_hodograph_ic(ic);
  REQUIRE(h.ic.sigma.size() == ic.x.size());
  for (std::size_t i = 0; i < ic.x.size(); ++i) {
    CHECK(h.ic.sigma[i] == doctest::Approx(ic.x[i]).epsilon(1e-15));
    CHECK(h.ic.psi[i] == 0.0);
    CHECK(h.gamma.tau[i] == 0.0);
  }
}

TEST_CASE("u0 = 0: psi = eta0 and gamma = 0") {
  const PhysicalIC ic = bump(1e-3, 0.0);
  const auto h = physical_to_hodograph_ic(ic);
  CHECK(h.ic.kind == HodographICKind::phys_on_gamma);
  for (std::size_t i = 0; i < h.ic.sigma.size(); ++i) {
    CHECK(h.ic.phi[i] == 0.0);
    CHECK(h.gamma.tau[i] == 0.0);
    // psi at sigma = x + eta0 equals eta0 at x.
    const double x = h.ic.sigma[i] - h.ic.psi[i];
    // pchip resampling onto the uniform sigma-grid is accurate to ~1e-8 here.
    CHECK(std::abs(h.ic.psi[i] - 1e-3 * std::exp(-3.0 * (x - 3.0) * (x - 3.0))) < 1e-7);
  }
}

TEST_CASE("dry nodes are dropped, wet nodes below sigma = 0 rejected") {
  Grid1D x(std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0, 3.0}, GridLabel::x);
  const std::vector<double> eta = {0.0, 0.0, 0.1, 0.0, 0.0, 0.0};
  const std::vector<double> u(6, 0.0);
  const auto h = physical_to_hodograph_ic(PhysicalIC(x, eta, u));
  CHECK(h.ic.sigma.size() == 4);
  CHECK(h.ic.sigma.front() == doctest::Approx(0.1));

  std::vector<double> wet = eta;
  wet[0] = 0.5;
  CHECK_THROWS_AS(physical_to_hodograph_ic(PhysicalIC(x, wet, u)), InvalidParameter);
}

TEST_CASE("forward and inverse CGT compose to the identity") {
  const PhysicalIC ic = bump(2e-3, -1e-3, 801);
  const auto h = physical_to_hodograph_ic(ic);
  const PhysicalIC back = inverse_cgt_on_gamma(h.gamma);
  for (std::size_t i = 0; i < back.x.size(); ++i) {
    const double x = back.x[i];
    const double g = std::exp(-3.0 * (x - 3.0) * (x - 3.0));
    // Two pchip resamplings, each accurate to a few 1e-8 at this spacing.
    CHECK(std::abs(back.eta0[i] - 2e-3 * g) < 1e-7);
    CHECK(std::abs(back.u0[i] + 1e-3 * g) < 1e-7);
  }
}

TEST_CASE("shoreline_at") {
  SUBCASE("zero run-up gives the identity map") {
    const GaussianSum R;
    for (double tau : {-3.0, 0.0, 2.5}) {
      const ShorelinePoint p = shoreline_at(R, tau);
      CHECK(p.t == tau);
      CHECK(p.psi0 == 0.0);
      CHECK(p.phi0 == 0.0);
    }
  }
  SUBCASE("inverts tau = t + R'(t)") {
    const GaussianSum R({{0.05, 1.0, 0.5}, {-0.02, 2.0, -1.0}});
    for (double tau : {-4.0, -1.0, 0.0, 0.7, 3.0}) {
      const ShorelinePoint p = shoreline_at(R, tau);
      CHECK(p.t + R.derivative(p.t) == doctest::Approx(tau).epsilon(1e-13).scale(1.0));
      const double d = R.derivative(p.t);
      CHECK(p.psi0 == doctest::Approx(R.value(p.t) + 0.5 * d * d).epsilon(1e-14).scale(1.0));
      CHECK(p.phi0 == -d);
    }
  }
}

TEST_CASE("shoreline trace round trip") {
  const GaussianSum R({{0.01, 1.0, 0.0}});
  const Grid1D tau = Grid1D::uniform(-8.0, 8.0, 801, GridLabel::tau);
  const ShorelineTrace trace = shoreline_from_runup(R, tau);
  const ShorelineSeries back = runup_from_shoreline(trace);
  for (std::size_t i = 0; i < back.t.size(); ++i) {
    CHECK(std::abs(back.R[i] - R.value(back.t[i])) < 1e-10);
  }
}

TEST_CASE("breaking_check") {
  SUBCASE("zero run-up") {
    const BreakingReport r = breaking_check(GaussianSum(), -5.0, 5.0);
    CHECK(r.min_jacobian == 1.0);
    CHECK_FALSE(r.breaking);
  }
  SUBCASE("small pulse: min 1 + R'' = 1 - 2 eps at t = 0") {
    const double eps = 1e-3;
    const BreakingReport r = breaking_check(GaussianSum({{eps, 1.0, 0.0}}), -5.0, 5.0);
    CHECK(r.min_jacobian == doctest::Approx(1.0 - 2.0 * eps).epsilon(1e-14));
    CHECK(std::abs(r.t_at_min) < 1e-6);
    CHECK_FALSE(r.breaking);
  }
  SUBCASE("unit pulse breaks") {
    const GaussianSum R({{1.0, 1.0, 0.0}});
    const BreakingReport r = breaking_check(R, -5.0, 5.0);
    CHECK(r.breaking);
    CHECK(r.min_jacobian == doctest::Approx(-1.0));
    const Grid1D tau = Grid1D::uniform(-5.0, 5.0, 101, GridLabel::tau);
    CHECK_THROWS_AS(shoreline_from_runup(R, tau), BreakingError);
  }
  SUBCASE("series without a fit") {
    const ShorelineSeries s(Grid1D::uniform(0.0, 1.0, 5, GridLabel::t), std::vector<double>(5, 0.0));
    CHECK_THROWS_AS(breaking_check(s), InvalidParameter);
  }
}

TEST_CASE("already-breaking initial data is rejected") {
  Grid1D x = Grid1D::uniform(0.0, 2.0, 201, GridLabel::x);
  std::vector<double> eta(x.size()), u(x.size(), 0.0);
  // eta' < -1 somewhere: sigma = x + eta folds.
  for (std::size_t i = 0; i < x.size(); ++i) eta[i] = 0.5 * std::exp(-40.0 * (x[i] - 1.0) * (x[i] - 1.0));
  CHECK_THROWS_AS(physical_to_hodograph_ic(PhysicalIC(x, eta, u)), BreakingError);
}
