#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "runup/core.hpp"
#include "runup/interp.hpp"
#include "runup/quadrature.hpp"

namespace runup {

enum class QuadratureScheme { trapezoid, gauss_legendre };

struct QuadratureConfig {
  // Truncation of the outer k-integral; unset selects it from the decay of
  // the spectral moments, capped at k_cap.
  std::optional<double> k_max;
  double k_cap = 200.0;
  std::size_t n_k = 2048;
  std::size_t n_inner = 512;
  // Outer k-integrals.
  QuadratureScheme scheme = QuadratureScheme::gauss_legendre;
  // Inner integrals over sampled data. Trapezoid works on the sample nodes
  // themselves and is spectrally accurate for data vanishing at both ends;
  // Gauss-Legendre interpolates the samples onto panel nodes.
  QuadratureScheme inner_scheme = QuadratureScheme::trapezoid;
  // Relative level below which spectral moments count as decayed.
  double decay_tol = 1e-10;

  void validate() const;
};

// Outer k-quadrature: nodes on (0, k_max] and their weights.
QuadratureRule k_rule(double k_max, const QuadratureConfig& cfg);

struct HankelMoment {
  double value = 0.0;
  // The integrand had not decayed at the end of the sampled range.
  bool not_decayed = false;
};

// Truncated quadrature of int_0^inf f(lambda) lambda^power J_nu(2 k lambda) d lambda
// for f given by samples on a lambda-grid, or on a sigma-grid (sigma =
// lambda^2, integrated in sigma). HankelQuadrature reuses the sampled
// integrand across many k; this is the one-shot form.
HankelMoment hankel_moment(const SampledFunction& f, double nu, double power, double k,
                           const QuadratureConfig& cfg);

class HankelQuadrature {
 public:
  HankelQuadrature(const SampledFunction& f, const QuadratureConfig& cfg);

  double moment(double nu, double power, double k) const;
  bool not_decayed() const noexcept { return not_decayed_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weighted_f_;
  bool not_decayed_ = false;
};

// Inner integrals of the spectral solution at the outer k-nodes:
//   a(k) = int psi_proj(s) s^{nu/2} J_nu(2k sqrt s) ds,
//   b(k) = int phi_proj(s) s^{nu/2 + 1/2} J_{nu+1}(2k sqrt s) ds,
// with nu = 1/m, evaluated in lambda = sqrt(s).
struct SpectralMoments {
  // Truncation point of the k-integral; the last node may lie below it.
  double k_max;
  Grid1D k;
  std::vector<double> weights;
  std::vector<double> a;
  std::vector<double> b;
  bool k_capped = false;
  bool not_decayed = false;
};

// psi and phi data sampled on a lambda-grid (psi_hat(lambda) = psi_proj(lambda^2))
// or directly on a sigma-grid.
SpectralMoments spectral_moments(const SampledFunction& psi_hat, const SampledFunction& phi_hat,
                                 const BayGeometry& bay, const QuadratureConfig& cfg);

enum class AbelKind { psi, phi };

// Recovers psi_hat_proj(lambda) (kind=psi) or phi_hat_proj(lambda) (kind=phi)
// from the even shoreline trace F(xi), xi = tau / q:
//   psi: 2 sqrt(pi) G(1+1/m) / (lambda G(1/m+1/2)) int_0^{lambda/pi} (1-(pi xi/lambda)^2)^{1/m-1/2} F dxi
//   phi: 2 sqrt(pi) G(2+1/m) / (lambda^{2+2/m} G(3/2+1/m)) int_0^{lambda/pi} (lambda^2-pi^2 xi^2)^{1/m+1/2} F dxi
// Evaluated after xi = lambda sin(theta) / pi on a graded panel mesh that is
// doubled until the value settles.
double abel_recover(AbelKind kind, const SampledFunction& F, double lambda, const BayGeometry& bay,
                    const QuadratureConfig& cfg);

double abel_recover(AbelKind kind, const std::function<double(double)>& F, double xi_max,
                    double lambda, const BayGeometry& bay, const QuadratureConfig& cfg);

// Batch form; lambda = 0 is allowed and returns the limit F(0).
std::vector<double> abel_recover(AbelKind kind, const SampledFunction& F,
                                 std::span<const double> lambdas, const BayGeometry& bay,
                                 const QuadratureConfig& cfg);

}  // namespace runup
