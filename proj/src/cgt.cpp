#include "runup/cgt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "runup/interp.hpp"

namespace runup {

HodographInitialData physical_to_hodograph_ic(const PhysicalIC& ic) {
  std::vector<double> sigma, psi, phi, gamma;
  const std::size_t n = ic.x.size();
  sigma.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = ic.x[i] + ic.eta0[i];
    if (s < 0.0) {
      if (ic.eta0[i] != 0.0 || ic.u0[i] != 0.0) {
        throw InvalidParameter("wet node with negative total height at x = " +
                               std::to_string(ic.x[i]));
      }
      continue;
    }
    if (!sigma.empty() && !(s > sigma.back())) {
      std::ostringstream msg;
      msg << "sigma = x + eta0 is not increasing near x = " << ic.x[i]
          << ": the wave is already breaking at t = 0";
      throw BreakingError(msg.str());
    }
    sigma.push_back(s);
    psi.push_back(ic.eta0[i] + 0.5 * ic.u0[i] * ic.u0[i]);
    phi.push_back(ic.u0[i]);
    gamma.push_back(-ic.u0[i]);
  }
  if (sigma.size() < 2) throw InvalidParameter("initial data has fewer than two wet nodes");

  Grid1D uniform = Grid1D::uniform(sigma.front(), sigma.back(), sigma.size(), GridLabel::sigma);
  auto psi_u = pchip(sigma, psi, uniform.nodes());
  auto phi_u = pchip(sigma, phi, uniform.nodes());
  auto gamma_u = pchip(sigma, gamma, uniform.nodes());
  HodographIC hic(uniform, psi_u, phi_u, HodographICKind::phys_on_gamma);
  GammaCurve curve(uniform, std::move(gamma_u), std::move(psi_u), std::move(phi_u));
  return {std::move(hic), std::move(curve)};
}

namespace {

// Upper bound on |R'| over the real line.
double slope_bound(const GaussianSum& R) {
  double s = 0.0;
  for (const auto& g : R.terms()) s += std::abs(g.a) * std::sqrt(2.0 * g.b) * std::exp(-0.5);
  return s;
}

double narrowest_width(const GaussianSum& R) {
  double w = 1.0;
  for (const auto& g : R.terms()) w = std::min(w, 1.0 / std::sqrt(g.b));
  return w;
}

}  // namespace

ShorelinePoint shoreline_at(const GaussianSum& R, double tau) {
  auto g = [&](double t) { return t + R.derivative(t) - tau; };
  double t = tau;
  double gt = g(t);
  if (gt != 0.0) {
    double delta = std::max(2.0 * std::abs(gt), 1e-300);
    double lo = t - delta;
    double hi = t + delta;
    double glo = g(lo);
    double ghi = g(hi);
    int expand = 0;
    while (glo > 0.0 || ghi < 0.0) {
      if (++expand > 200) throw BreakingError("no root of t + R'(t) = tau near tau = " + std::to_string(tau));
      delta *= 2.0;
      lo = t - delta;
      hi = t + delta;
      glo = g(lo);
      ghi = g(hi);
    }
    // Safeguarded Newton inside the bracket.
    t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      const double gv = g(t);
      if (gv == 0.0) break;
      if (gv < 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      const double dg = 1.0 + R.second_derivative(t);
      double next = t - gv / dg;
      if (!(dg > 0.0) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
      const double step = std::abs(next - t);
      t = next;
      if (step <= 1e-13 * std::max(1.0, std::abs(t)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(t))) {
        break;
      }
    }
  }
  const GaussianSum::Jet j = R.jet(t);
  return {t, j.value + 0.5 * j.d1 * j.d1, -j.d1};
}

BreakingReport breaking_check(const GaussianSum& R, double t_lo, double t_hi, double threshold) {
  BreakingReport report;
  if (R.empty()) return report;
  if (!(t_hi > t_lo)) throw InvalidParameter("breaking_check needs t_hi > t_lo");
  const double step = 0.05 * narrowest_width(R);
  const auto n = static_cast<std::size_t>(
      std::clamp(std::ceil((t_hi - t_lo) / step), 64.0, 2.0e6));
  const double h = (t_hi - t_lo) / static_cast<double>(n);
  std::size_t imin = 0;
  double vmin = 1.0 + R.second_derivative(t_lo);
  for (std::size_t i = 1; i <= n; ++i) {
    const double v = 1.0 + R.second_derivative(t_lo + h * static_cast<double>(i));
    if (v < vmin) {
      vmin = v;
      imin = i;
    }
  }
  // Golden-section polish of the minimum between neighbouring samples.
  double a = t_lo + h * static_cast<double>(imin == 0 ? 0 : imin - 1);
  double b = t_lo + h * static_cast<double>(std::min(imin + 1, n));
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  for (int iter = 0; iter < 100 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++iter) {
    if (R.second_derivative(c) < R.second_derivative(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  const double tm = 0.5 * (a + b);
  const double vm = 1.0 + R.second_derivative(tm);
  report.min_jacobian = vm < vmin ? vm : vmin;
  report.t_at_min = vm < vmin ? tm : t_lo + h * static_cast<double>(imin);
  report.breaking = report.min_jacobian < threshold;
  return report;
}

BreakingReport breaking_check(const ShorelineSeries& R, double threshold) {
  if (!R.fit) throw InvalidParameter("breaking_check needs an analytic fit of R(t)");
  return breaking_check(*R.fit, R.t.front(), R.t.back(), threshold);
}

ShorelineTrace shoreline_from_runup(const GaussianSum& R, const Grid1D& tau, double threshold) {
  const double pad = slope_bound(R);
  const double t_lo = tau.front() - pad;
  const double t_hi = tau.back() + pad;
  const BreakingReport report = breaking_check(R, t_lo, t_hi, threshold);
  if (report.breaking) {
    // Widen around the minimum to the interval where the Jacobian is degenerate.
    const double h = 0.01 * narrowest_width(R);
    double a = report.t_at_min;
    double b = report.t_at_min;
    while (a > t_lo && 1.0 + R.second_derivative(a - h) < threshold) a -= h;
    while (b < t_hi && 1.0 + R.second_derivative(b + h) < threshold) b += h;
    std::ostringstream msg;
    msg << "tau(t) = t + R'(t) is not monotone (1 + R'' = " << report.min_jacobian
        << ") on t in [" << a << ", " << b << "]: the wave breaks";
    throw BreakingError(msg.str());
  }
  std::vector<double> psi(tau.size()), phi(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const ShorelinePoint p = shoreline_at(R, tau[i]);
    psi[i] = p.psi0;
    phi[i] = p.phi0;
  }
  return ShorelineTrace(tau, std::move(psi), std::move(phi));
}

ShorelineTrace shoreline_from_runup(const ShorelineSeries& R, const Grid1D& tau, double threshold) {
  if (!R.fit) throw InvalidParameter("shoreline_from_runup needs an analytic fit of R(t)");
  return shoreline_from_runup(*R.fit, tau, threshold);
}

ShorelineSeries runup_from_shoreline(const ShorelineTrace& trace) {
  const std::size_t n = trace.tau.size();
  std::vector<double> t(n), R(n), slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = trace.tau[i] + trace.phi0[i];
    R[i] = trace.psi0[i] - 0.5 * trace.phi0[i] * trace.phi0[i];
    slope[i] = -trace.phi0[i];
    if (i > 0 && !(t[i] > t[i - 1])) {
      std::ostringstream msg;
      msg << "t(tau) = tau + phi(0, tau) is not monotone on tau in [" << trace.tau[i - 1] << ", "
          << trace.tau[i] << "]: the wave breaks";
      throw BreakingError(msg.str());
    }
  }
  Grid1D grid = Grid1D::uniform(t.front(), t.back(), n, GridLabel::t);
  auto values = hermite(t, R, slope, grid.nodes());
  return ShorelineSeries(std::move(grid), std::move(values));
}

PhysicalIC inverse_cgt_on_gamma(const GammaCurve& gamma) {
  if (!gamma.has_values()) throw InvalidParameter("inverse CGT needs psi and phi on gamma");
  const std::size_t n = gamma.sigma.size();
  std::vector<double> x(n), eta(n), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double half_phi2 = 0.5 * gamma.phi[i] * gamma.phi[i];
    eta[i] = gamma.psi[i] - half_phi2;
    u[i] = gamma.phi[i];
    x[i] = gamma.sigma[i] - gamma.psi[i] + half_phi2;
    if (i > 0 && !(x[i] > x[i - 1])) {
      std::ostringstream msg;
      msg << "x(sigma) is not monotone near sigma = " << gamma.sigma[i]
          << ": the hodograph map is not invertible";
      throw BreakingError(msg.str());
    }
  }
  Grid1D grid = Grid1D::uniform(x.front(), x.back(), n, GridLabel::x);
  auto eta_u = pchip(x, eta, grid.nodes());
  auto u_u = pchip(x, u, grid.nodes());
  return PhysicalIC(std::move(grid), std::move(eta_u), std::move(u_u));
}

PhysicalIC inverse_cgt_on_gamma(const HodographField& field, const GammaCurve& gamma) {
  const std::size_t ns = gamma.sigma.size();
  std::vector<double> psi(ns), phi(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const double s = gamma.sigma[i];
    const auto nodes = field.sigma.nodes();
    auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
    if (it == nodes.end() || std::abs(*it - s) > 1e-12 * std::max(1.0, std::abs(s))) {
      throw RangeError("gamma sigma-node not on the field's sigma-grid");
    }
    const auto row = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t nt = field.tau.size();
    const double tau = gamma.tau[i];
    if (tau < field.tau.front() || tau > field.tau.back()) {
      throw RangeError("gamma leaves the tau-range of the field");
    }
    std::vector<double> prow(field.psi.begin() + static_cast<std::ptrdiff_t>(row * nt),
                             field.psi.begin() + static_cast<std::ptrdiff_t>((row + 1) * nt));
    std::vector<double> frow(field.phi.begin() + static_cast<std::ptrdiff_t>(row * nt),
                             field.phi.begin() + static_cast<std::ptrdiff_t>((row + 1) * nt));
    psi[i] = SampledFunction(field.tau, std::move(prow))(tau);
    phi[i] = SampledFunction(field.tau, std::move(frow))(tau);
  }
  return inverse_cgt_on_gamma(GammaCurve(gamma.sigma, gamma.tau, std::move(psi), std::move(phi)));
}

}  // namespace runup
