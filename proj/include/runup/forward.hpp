#pragma once

#include <span>
#include <vector>

#include "runup/cgt.hpp"
#include "runup/core.hpp"
#include "runup/hodograph.hpp"
#include "runup/interp.hpp"
#include "runup/transforms.hpp"

namespace runup {

// Fourier-Bessel solution of the linear hodograph system with data on
// tau = 0. The inner Hankel moments are computed once; every evaluation
// afterwards is a cos/sin synthesis over the outer k-nodes.
class SpectralSolution {
 public:
  // psi_hat(lambda) = psi_proj(lambda^2), phi_hat likewise.
  SpectralSolution(const SampledFunction& psi_hat, const SampledFunction& phi_hat,
                   const BayGeometry& bay, const QuadratureConfig& cfg);
  // Projected data on its sigma-grid.
  SpectralSolution(const HodographIC& projected, const BayGeometry& bay,
                   const QuadratureConfig& cfg);

  const SpectralMoments& moments() const noexcept { return moments_; }
  const BayGeometry& bay() const noexcept { return bay_; }
  double k_max() const noexcept { return moments_.k_max; }

  // Full field on a rectangular grid; sigma-nodes must be > 0.
  HodographField field(const Grid1D& sigma, const Grid1D& tau) const;
  // psi and phi at one sigma > 0 for each tau in `taus`.
  void column(double sigma, std::span<const double> taus, std::span<double> psi,
              std::span<double> phi) const;

  // sigma -> 0 limits.
  std::vector<double> shoreline_psi(std::span<const double> tau) const;
  std::vector<double> shoreline_phi(std::span<const double> tau) const;
  // d/dtau of the two limits, by differentiating the cos/sin synthesis.
  std::vector<double> shoreline_dpsi(std::span<const double> tau) const;
  std::vector<double> shoreline_dphi(std::span<const double> tau) const;

 private:
  enum class Part { psi, phi, dpsi, dphi };
  std::vector<double> shoreline(Part part, std::span<const double> tau) const;

  BayGeometry bay_;
  SpectralMoments moments_;
};

// Uniform lambda-grid sampling of projected data given on sigma.
SampledFunction lambda_form(const HodographIC& ic, const std::vector<double>& values,
                            std::size_t n_lambda);

HodographField solve_fields(const HodographIC& projected, const Grid1D& sigma, const Grid1D& tau,
                            const BayGeometry& bay, const QuadratureConfig& cfg);
std::vector<double> shoreline_psi_series(const HodographIC& projected, const Grid1D& tau,
                                         const BayGeometry& bay, const QuadratureConfig& cfg);
std::vector<double> shoreline_phi_series(const HodographIC& projected, const Grid1D& tau,
                                         const BayGeometry& bay, const QuadratureConfig& cfg);

struct ForwardOptions {
  int projection_order = 2;
  std::size_t n_tau = 512;
  // Half-width of the symmetric tau-window; unset grows it until psi(0, tau)
  // falls below `tau_decay` of its peak at both ends, or its edges settle at
  // a quadrature noise floor below 1e-6, or tau_cap is hit.
  std::optional<double> tau_half_width;
  double tau_decay = 1e-10;
  double tau_cap = 200.0;
  double breaking_threshold = kDefaultBreakingThreshold;
};

struct ForwardResult {
  ShorelineSeries runup;
  ShorelineTrace trace;
  HodographIC projected;
  GammaCurve gamma;
  double k_max = 0.0;
  bool k_capped = false;
  bool projection_warning = false;
  bool tau_window_decayed = true;
  // min over tau of dt/dtau = 1 + d phi(0, tau)/d tau.
  double jacobian_margin = 1.0;
};

// physical_to_hodograph_ic -> project_ic -> shoreline limits ->
// runup_from_shoreline.
ForwardResult forward_runup(const PhysicalIC& ic, const BayGeometry& bay,
                            const QuadratureConfig& cfg, const ForwardOptions& options = {});

}  // namespace runup
