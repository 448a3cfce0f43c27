#include "runup/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "runup/projection.hpp"
#include "runup/special.hpp"

namespace runup {

SampledFunction lambda_form(const HodographIC& ic, const std::vector<double>& values,
                            std::size_t n_lambda) {
  const SampledFunction in_sigma(ic.sigma, values);
  const double lambda_max = std::sqrt(ic.sigma.back());
  Grid1D grid = Grid1D::uniform(0.0, lambda_max, n_lambda, GridLabel::lambda);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = in_sigma(grid[i] * grid[i]);
  return SampledFunction(std::move(grid), std::move(v));
}

SpectralSolution::SpectralSolution(const SampledFunction& psi_hat, const SampledFunction& phi_hat,
                                   const BayGeometry& bay, const QuadratureConfig& cfg)
    : bay_(bay), moments_(spectral_moments(psi_hat, phi_hat, bay, cfg)) {}

SpectralSolution::SpectralSolution(const HodographIC& projected, const BayGeometry& bay,
                                   const QuadratureConfig& cfg)
    : SpectralSolution(SampledFunction(projected.sigma, projected.psi),
                       SampledFunction(projected.sigma, projected.phi), bay, cfg) {
  if (projected.kind != HodographICKind::projected_on_tau0) {
    throw InvalidParameter("spectral solution needs data projected onto tau = 0");
  }
}

void SpectralSolution::column(double sigma, std::span<const double> taus, std::span<double> psi,
                              std::span<double> phi) const {
  if (!(sigma > 0.0)) {
    throw RangeError("field evaluation at sigma = 0; use the shoreline limits instead");
  }
  const double nu = bay_.nu();
  const double omega = bay_.omega();
  const auto k = moments_.k.nodes();
  const std::size_t nk = k.size();
  const double root = std::sqrt(sigma);
  std::vector<double> cpsi(nk), spsi(nk), cphi(nk), sphi(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    const double z = 2.0 * k[i] * root;
    const double j0 = bessel_j(nu, z);
    const double j1 = bessel_j(nu + 1.0, z);
    const double wk = moments_.weights[i] * k[i];
    cpsi[i] = wk * moments_.a[i] * j0;
    spsi[i] = wk * omega * moments_.b[i] * j0;
    cphi[i] = wk * moments_.a[i] * j1;
    sphi[i] = wk * omega * moments_.b[i] * j1;
  }
  const double psi_pref = 2.0 * std::pow(sigma, -0.5 * nu);
  const double phi_pref = 2.0 / omega * std::pow(sigma, -0.5 * nu - 0.5);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    double sp = 0.0;
    double sf = 0.0;
    for (std::size_t i = 0; i < nk; ++i) {
      const double arg = omega * k[i] * taus[j];
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      sp += cpsi[i] * c - spsi[i] * s;
      sf += cphi[i] * s + sphi[i] * c;
    }
    psi[j] = psi_pref * sp;
    phi[j] = phi_pref * sf;
  }
}

HodographField SpectralSolution::field(const Grid1D& sigma, const Grid1D& tau) const {
  if (!(sigma.front() > 0.0)) {
    throw RangeError("field grid contains sigma = 0; use the shoreline limits instead");
  }
  const double nu = bay_.nu();
  const double omega = bay_.omega();
  const auto k = moments_.k.nodes();
  const std::size_t nk = k.size();
  const std::size_t nt = tau.size();
  const std::size_t ns = sigma.size();

  std::vector<double> cos_t(nt * nk), sin_t(nt * nk);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i = 0; i < nk; ++i) {
      const double arg = omega * k[i] * tau[j];
      cos_t[j * nk + i] = std::cos(arg);
      sin_t[j * nk + i] = std::sin(arg);
    }
  }

  std::vector<double> psi(ns * nt), phi(ns * nt);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < ns; ++r) {
    const double root = std::sqrt(sigma[r]);
    std::vector<double> cpsi(nk), spsi(nk), cphi(nk), sphi(nk);
    for (std::size_t i = 0; i < nk; ++i) {
      const double z = 2.0 * k[i] * root;
      const double j0 = bessel_j(nu, z);
      const double j1 = bessel_j(nu + 1.0, z);
      const double wk = moments_.weights[i] * k[i];
      cpsi[i] = wk * moments_.a[i] * j0;
      spsi[i] = wk * omega * moments_.b[i] * j0;
      cphi[i] = wk * moments_.a[i] * j1;
      sphi[i] = wk * omega * moments_.b[i] * j1;
    }
    const double psi_pref = 2.0 * std::pow(sigma[r], -0.5 * nu);
    const double phi_pref = 2.0 / omega * std::pow(sigma[r], -0.5 * nu - 0.5);
    for (std::size_t j = 0; j < nt; ++j) {
      const double* c = &cos_t[j * nk];
      const double* s = &sin_t[j * nk];
      double sp = 0.0;
      double sf = 0.0;
      for (std::size_t i = 0; i < nk; ++i) {
        sp += cpsi[i] * c[i] - spsi[i] * s[i];
        sf += cphi[i] * s[i] + sphi[i] * c[i];
      }
      psi[r * nt + j] = psi_pref * sp;
      phi[r * nt + j] = phi_pref * sf;
    }
  }
  return HodographField(sigma, tau, std::move(psi), std::move(phi));
}

std::vector<double> SpectralSolution::shoreline(Part part, std::span<const double> tau) const {
  const double nu = bay_.nu();
  const double omega = bay_.omega();
  const auto k = moments_.k.nodes();
  const std::size_t nk = k.size();
  // psi(0, tau) = 2/G(1+nu) int k^{1+nu} (a cos - omega b sin) dk
  // phi(0, tau) = 2/(omega G(2+nu)) int k^{2+nu} (a sin + omega b cos) dk
  const bool is_psi = part == Part::psi || part == Part::dpsi;
  const bool deriv = part == Part::dpsi || part == Part::dphi;
  const double pref = is_psi ? 2.0 / gamma_fn(1.0 + nu) : 2.0 / (omega * gamma_fn(2.0 + nu));
  std::vector<double> ca(nk), cb(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    double w = moments_.weights[i] * std::pow(k[i], is_psi ? 1.0 + nu : 2.0 + nu);
    if (deriv) w *= omega * k[i];
    ca[i] = w * moments_.a[i];
    cb[i] = w * omega * moments_.b[i];
  }
  std::vector<double> out(tau.size());
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < tau.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nk; ++i) {
      const double arg = omega * k[i] * tau[j];
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      switch (part) {
        case Part::psi: sum += ca[i] * c - cb[i] * s; break;
        case Part::phi: sum += ca[i] * s + cb[i] * c; break;
        case Part::dpsi: sum += -ca[i] * s - cb[i] * c; break;
        case Part::dphi: sum += ca[i] * c - cb[i] * s; break;
      }
    }
    out[j] = pref * sum;
  }
  return out;
}

std::vector<double> SpectralSolution::shoreline_psi(std::span<const double> tau) const {
  return shoreline(Part::psi, tau);
}
std::vector<double> SpectralSolution::shoreline_phi(std::span<const double> tau) const {
  return shoreline(Part::phi, tau);
}
std::vector<double> SpectralSolution::shoreline_dpsi(std::span<const double> tau) const {
  return shoreline(Part::dpsi, tau);
}
std::vector<double> SpectralSolution::shoreline_dphi(std::span<const double> tau) const {
  return shoreline(Part::dphi, tau);
}

HodographField solve_fields(const HodographIC& projected, const Grid1D& sigma, const Grid1D& tau,
                            const BayGeometry& bay, const QuadratureConfig& cfg) {
  return SpectralSolution(projected, bay, cfg).field(sigma, tau);
}

std::vector<double> shoreline_psi_series(const HodographIC& projected, const Grid1D& tau,
                                         const BayGeometry& bay, const QuadratureConfig& cfg) {
  return SpectralSolution(projected, bay, cfg).shoreline_psi(tau.nodes());
}

std::vector<double> shoreline_phi_series(const HodographIC& projected, const Grid1D& tau,
                                         const BayGeometry& bay, const QuadratureConfig& cfg) {
  return SpectralSolution(projected, bay, cfg).shoreline_phi(tau.nodes());
}

namespace {

// Largest |v| in the outer 5% at either end, relative to the peak.
double edge_level(const std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0.0;
  const std::size_t edge = std::max<std::size_t>(2, v.size() / 20);
  double level = 0.0;
  for (std::size_t i = 0; i < edge; ++i) {
    level = std::max({level, std::abs(v[i]), std::abs(v[v.size() - 1 - i])});
  }
  return level / peak;
}

// Window edges below this are treated as quadrature noise once they stop
// shrinking.
constexpr double kNoiseEdge = 1e-6;

}  // namespace

ForwardResult forward_runup(const PhysicalIC& ic, const BayGeometry& bay,
                            const QuadratureConfig& cfg, const ForwardOptions& options) {
  if (options.n_tau < 16) throw InvalidParameter("n_tau must be >= 16");
  HodographInitialData hd = physical_to_hodograph_ic(ic);
  ProjectionResult proj = project_ic(hd.ic, options.projection_order, bay);
  const SpectralSolution sol(proj.ic, bay, cfg);

  bool decayed = true;
  double half = 0.0;
  std::vector<double> psi0;
  if (options.tau_half_width) {
    half = *options.tau_half_width;
    if (!(half > 0.0)) throw InvalidParameter("tau half-width must be positive");
    psi0 = sol.shoreline_psi(Grid1D::uniform(-half, half, options.n_tau, GridLabel::tau).nodes());
  } else {
    // Twice the travel time from the far edge of the data to the shore,
    // grown until the trace has died out. The k-quadrature resolves
    // cos(omega k tau) with about four nodes per period only up to `limit`.
    const double n_k = static_cast<double>(sol.moments().k.size());
    const double limit = std::min(options.tau_cap,
                                  std::acos(-1.0) * n_k / (2.0 * bay.omega() * sol.k_max()));
    half = std::min(limit, std::max(4.0, 4.0 * std::sqrt(proj.ic.sigma.back()) / bay.omega()));
    double previous = std::numeric_limits<double>::infinity();
    for (;;) {
      const Grid1D probe = Grid1D::uniform(-half, half, options.n_tau, GridLabel::tau);
      psi0 = sol.shoreline_psi(probe.nodes());
      const double level = edge_level(psi0);
      if (level <= options.tau_decay) break;
      if (level <= kNoiseEdge && level > 0.5 * previous) break;
      if (half >= limit) {
        decayed = false;
        break;
      }
      previous = level;
      half = std::min(1.5 * half, limit);
    }
  }
  const Grid1D tau = Grid1D::uniform(-half, half, options.n_tau, GridLabel::tau);
  std::vector<double> phi0 = sol.shoreline_phi(tau.nodes());
  const std::vector<double> dphi = sol.shoreline_dphi(tau.nodes());
  double margin = 1.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < dphi.size(); ++i) {
    if (1.0 + dphi[i] < margin) {
      margin = 1.0 + dphi[i];
      at = i;
    }
  }
  if (margin < options.breaking_threshold) {
    std::ostringstream msg;
    msg << "dt/dtau = 1 + dphi(0, tau)/dtau = " << margin << " at tau = " << tau[at]
        << ": the run-up folds and the wave breaks";
    throw BreakingError(msg.str());
  }
  ShorelineTrace trace(tau, std::move(psi0), std::move(phi0));
  ShorelineSeries runup = runup_from_shoreline(trace);
  return ForwardResult{std::move(runup),
                       std::move(trace),
                       std::move(proj.ic),
                       std::move(hd.gamma),
                       sol.k_max(),
                       sol.moments().k_capped,
                       proj.accuracy_warning,
                       decayed,
                       margin};
}

}  // namespace runup
