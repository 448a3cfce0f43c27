#include "runup/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "runup/special.hpp"

namespace runup {

void QuadratureConfig::validate() const {
  if (k_max && (!std::isfinite(*k_max) || *k_max <= 0.0)) {
    throw InvalidParameter("k_max must be positive");
  }
  if (!std::isfinite(k_cap) || k_cap <= 0.0) throw InvalidParameter("k_cap must be positive");
  if (n_k < 16 || n_inner < 16) throw InvalidParameter("quadrature node counts must be >= 16");
  if (!(decay_tol > 0.0 && decay_tol < 1.0)) throw InvalidParameter("decay_tol must be in (0, 1)");
}

QuadratureRule k_rule(double k_max, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(k_max > 0.0)) throw InvalidParameter("k_max must be positive");
  if (cfg.scheme == QuadratureScheme::trapezoid) {
    const Grid1D g = Grid1D::uniform(0.0, k_max, cfg.n_k, GridLabel::k);
    return trapezoid(g.nodes());
  }
  constexpr std::size_t order = 8;
  const std::size_t panels = std::max<std::size_t>(1, (cfg.n_k + order - 1) / order);
  const std::vector<double> breaks = graded_breaks(0.0, k_max, panels, 1.0);
  return composite_gauss_legendre(breaks, order);
}

namespace {

constexpr std::size_t kInnerOrder = 4;
// Largest phase 2 k h covered by one 4-point panel.
constexpr double kMaxPanelPhase = 1.0;

}  // namespace

HankelQuadrature::HankelQuadrature(const SampledFunction& f, const QuadratureConfig& cfg) {
  cfg.validate();
  const auto grid = f.grid().nodes();
  const auto vals = f.values();
  const bool in_sigma = f.grid().label() == GridLabel::sigma;
  const double peak = f.max_abs();
  if (peak > 0.0 && std::abs(vals.back()) > 1e-12 * peak) not_decayed_ = true;
  if (grid.front() < 0.0) throw InvalidParameter("Hankel moments need lambda, sigma >= 0");

  if (cfg.inner_scheme == QuadratureScheme::trapezoid) {
    const QuadratureRule rule = trapezoid(grid);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      if (vals[i] == 0.0) continue;
      if (in_sigma) {
        // d lambda = d sigma / (2 sqrt sigma); the integrand vanishes at 0.
        if (rule.nodes[i] == 0.0) continue;
        const double lambda = std::sqrt(rule.nodes[i]);
        nodes_.push_back(lambda);
        weighted_f_.push_back(rule.weights[i] * vals[i] / (2.0 * lambda));
      } else {
        nodes_.push_back(rule.nodes[i]);
        weighted_f_.push_back(rule.weights[i] * vals[i]);
      }
    }
    return;
  }

  const double k_hint = cfg.k_max ? *cfg.k_max : cfg.k_cap;
  const QuadratureRule base = gauss_legendre(kInnerOrder);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    // Skip intervals where the interpolation stencil is identically zero.
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(grid.size() - 1, i + 2);
    bool zero = true;
    for (std::size_t j = lo; j <= hi; ++j) zero = zero && vals[j] == 0.0;
    if (zero) continue;
    const double a = in_sigma ? std::sqrt(grid[i]) : grid[i];
    const double b = in_sigma ? std::sqrt(grid[i + 1]) : grid[i + 1];
    const double h = b - a;
    const auto sub = static_cast<std::size_t>(std::ceil(2.0 * k_hint * h / kMaxPanelPhase));
    const std::size_t nsub = std::max<std::size_t>(1, sub);
    const double hs = h / static_cast<double>(nsub);
    for (std::size_t s = 0; s < nsub; ++s) {
      const double mid = a + hs * (static_cast<double>(s) + 0.5);
      for (std::size_t q = 0; q < kInnerOrder; ++q) {
        const double x = mid + 0.5 * hs * base.nodes[q];
        const double w = 0.5 * hs * base.weights[q];
        nodes_.push_back(x);
        weighted_f_.push_back(w * f(in_sigma ? x * x : x));
      }
    }
  }
}

double HankelQuadrature::moment(double nu, double power, double k) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double x = nodes_[i];
    const double kernel = (power == 0.0 ? 1.0 : std::pow(x, power)) * bessel_j(nu, 2.0 * k * x);
    sum += weighted_f_[i] * kernel;
  }
  return sum;
}

HankelMoment hankel_moment(const SampledFunction& f, double nu, double power, double k,
                           const QuadratureConfig& cfg) {
  if (!(k >= 0.0)) throw InvalidParameter("hankel_moment: k must be >= 0");
  QuadratureConfig local = cfg;
  if (!local.k_max) local.k_max = std::max(k, 1e-3);
  const HankelQuadrature quad(f, local);
  return {quad.moment(nu, power, k), quad.not_decayed()};
}

SpectralMoments spectral_moments(const SampledFunction& psi_hat, const SampledFunction& phi_hat,
                                 const BayGeometry& bay, const QuadratureConfig& cfg) {
  cfg.validate();
  const double nu = bay.nu();
  const double omega = bay.omega();
  const HankelQuadrature qpsi(psi_hat, cfg);
  const HankelQuadrature qphi(phi_hat, cfg);

  auto a_at = [&](double k) { return 2.0 * qpsi.moment(nu, nu + 1.0, k); };
  auto b_at = [&](double k) { return 2.0 * qphi.moment(nu + 1.0, nu + 2.0, k); };

  bool capped = false;
  double k_max = 0.0;
  if (cfg.k_max) {
    k_max = *cfg.k_max;
  } else {
    // Probe the envelope max(|a|, omega |b|). Sampled data leave a noise
    // floor in the moments, so the cut-off is the larger of the relative
    // tolerance and ten times the floor seen over the upper half of the probe.
    constexpr double dk = 0.5;
    constexpr double kNoiseFloor = 1e-4;
    const auto n_probe = static_cast<std::size_t>(std::ceil(cfg.k_cap / dk));
    std::vector<double> env(n_probe);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n_probe; ++i) {
      const double k = dk * static_cast<double>(i + 1);
      env[i] = std::max(std::abs(a_at(k)), omega * std::abs(b_at(k)));
    }
    const double peak = *std::max_element(env.begin(), env.end());
    if (peak == 0.0) {
      k_max = 1.0;
    } else {
      std::vector<double> upper(env.begin() + static_cast<std::ptrdiff_t>(n_probe / 2), env.end());
      std::nth_element(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(upper.size() / 2),
                       upper.end());
      const double floor = upper[upper.size() / 2];
      // A floor this high is unresolved signal rather than quadrature noise.
      const bool settled = floor <= kNoiseFloor * peak;
      const double threshold =
          settled ? std::max(cfg.decay_tol * peak, 10.0 * floor) : cfg.decay_tol * peak;
      std::size_t last = 0;
      for (std::size_t i = 0; i < n_probe; ++i) {
        if (env[i] > threshold) last = i;
      }
      k_max = dk * static_cast<double>(last + 3);
      // Reaching the cap means the envelope never settled; a floor above
      // the tolerance alone is reported through the probe, not here.
      if (last + 1 >= n_probe / 2 && floor > cfg.decay_tol * peak) capped = true;
      if (last + 1 >= n_probe) capped = true;
      k_max = std::min(k_max, cfg.k_cap);
    }
  }

  const QuadratureRule rule = k_rule(k_max, cfg);
  std::vector<double> a(rule.size()), b(rule.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < rule.size(); ++i) {
    a[i] = a_at(rule.nodes[i]);
    b[i] = b_at(rule.nodes[i]);
  }
  return SpectralMoments{k_max, Grid1D(rule.nodes, GridLabel::k), rule.weights, std::move(a),
                         std::move(b), capped, qpsi.not_decayed() || qphi.not_decayed()};
}

namespace {

// Constant and cosine power after xi = lambda sin(theta) / pi:
//   psi: C int_0^{pi/2} cos^{2 nu} F dtheta,  C = 2 G(1+nu) / (sqrt(pi) G(nu+1/2))
//   phi: C int_0^{pi/2} cos^{2 nu+2} F dtheta, C = 2 G(2+nu) / (sqrt(pi) G(nu+3/2))
struct AbelKernel {
  double constant;
  double cos_power;
};

AbelKernel abel_kernel(AbelKind kind, const BayGeometry& bay) {
  const double nu = bay.nu();
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  if (kind == AbelKind::psi) {
    return {2.0 * gamma_fn(1.0 + nu) / (sqrt_pi * gamma_fn(nu + 0.5)), 2.0 * nu};
  }
  return {2.0 * gamma_fn(2.0 + nu) / (sqrt_pi * gamma_fn(nu + 1.5)), 2.0 * nu + 2.0};
}

double abel_panels(const AbelKernel& kernel, const std::function<double(double)>& F, double lambda,
                   std::size_t panels) {
  constexpr std::size_t order = 8;
  // Grading toward theta = pi/2 where cos^p is not smooth for fractional p.
  const double grading = std::abs(kernel.cos_power - std::round(kernel.cos_power)) < 1e-14 ? 1.0 : 3.0;
  const std::vector<double> breaks = graded_breaks(0.0, 0.5 * std::numbers::pi, panels, grading);
  const QuadratureRule rule = composite_gauss_legendre(breaks, order);
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double theta = rule.nodes[i];
    const double c = std::cos(theta);
    const double xi = lambda * std::sin(theta) / std::numbers::pi;
    sum.add(rule.weights[i] * std::pow(c, kernel.cos_power) * F(xi));
  }
  return kernel.constant * sum.value();
}

}  // namespace

double abel_recover(AbelKind kind, const std::function<double(double)>& F, double xi_max,
                    double lambda, const BayGeometry& bay, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("abel_recover: lambda must be positive");
  }
  if (lambda / std::numbers::pi > xi_max * (1.0 + 1e-12)) {
    throw RangeError("abel_recover: lambda/pi = " + std::to_string(lambda / std::numbers::pi) +
                     " exceeds the sampled xi range " + std::to_string(xi_max));
  }
  const AbelKernel kernel = abel_kernel(kind, bay);
  std::size_t panels = std::max<std::size_t>(2, cfg.n_inner / 8);
  double coarse = abel_panels(kernel, F, lambda, panels);
  for (int level = 0; level < 6; ++level) {
    panels *= 2;
    const double fine = abel_panels(kernel, F, lambda, panels);
    const double scale = std::max(std::abs(fine), 1e-300);
    if (std::abs(fine - coarse) <= 1e-12 * scale) return fine;
    coarse = fine;
  }
  return coarse;
}

double abel_recover(AbelKind kind, const SampledFunction& F, double lambda, const BayGeometry& bay,
                    const QuadratureConfig& cfg) {
  if (F.grid().front() > 0.0) throw RangeError("abel_recover: xi-grid must start at 0");
  return abel_recover(
      kind, [&F](double xi) { return F(xi); }, F.grid().back(), lambda, bay, cfg);
}

std::vector<double> abel_recover(AbelKind kind, const SampledFunction& F,
                                 std::span<const double> lambdas, const BayGeometry& bay,
                                 const QuadratureConfig& cfg) {
  if (F.grid().front() > 0.0) throw RangeError("abel_recover: xi-grid must start at 0");
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0) || lambda / std::numbers::pi > F.grid().back() * (1.0 + 1e-12)) {
      throw RangeError("abel_recover: lambda = " + std::to_string(lambda) +
                       " outside the range covered by the xi-grid");
    }
  }
  std::vector<double> out(lambdas.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    // The kernel is normalized, so lambda -> 0 leaves F(0).
    out[i] = lambdas[i] == 0.0 ? F(0.0) : abel_recover(kind, F, lambdas[i], bay, cfg);
  }
  return out;
}

}  // namespace runup
