#pragma once

#include <optional>

#include "runup/core.hpp"
#include "runup/gaussian_sum.hpp"
#include "runup/hodograph.hpp"

namespace runup {

// Jacobian factor below which the hodograph map is treated as degenerate.
inline constexpr double kDefaultBreakingThreshold = 1e-8;

struct HodographInitialData {
  HodographIC ic;  // kind = phys_on_gamma
  GammaCurve gamma;
};

// (eta0, u0) on x  ->  psi_phys = eta0 + u0^2/2, phi_phys = u0 and
// gamma = -u0 at sigma = x + eta0, resampled onto a uniform sigma-grid with
// the same node count. Nodes with sigma < 0 must be dry (zero data) and are
// dropped.
HodographInitialData physical_to_hodograph_ic(const PhysicalIC& ic);

struct ShorelinePoint {
  double t;
  double psi0;
  double phi0;
};

// Solves tau = t + R'(t) for t, then psi0 = R + R'^2/2 and phi0 = -R'.
ShorelinePoint shoreline_at(const GaussianSum& R, double tau);

// shoreline_at on every tau-node. Throws BreakingError when 1 + R'' drops
// below `threshold` on the t-range the grid maps to.
ShorelineTrace shoreline_from_runup(const GaussianSum& R, const Grid1D& tau,
                                    double threshold = kDefaultBreakingThreshold);
ShorelineTrace shoreline_from_runup(const ShorelineSeries& R, const Grid1D& tau,
                                    double threshold = kDefaultBreakingThreshold);

// t = tau + phi0, R = psi0 - phi0^2/2, resampled onto a uniform t-grid by
// cubic Hermite interpolation with the exact slope R' = -phi0.
ShorelineSeries runup_from_shoreline(const ShorelineTrace& trace);

// eta0 = psi - phi^2/2, u0 = phi, x = sigma - psi + phi^2/2 along gamma,
// resampled onto a uniform x-grid. Requires values on the curve.
PhysicalIC inverse_cgt_on_gamma(const GammaCurve& gamma);
// Same, reading psi and phi off the field by interpolation in tau.
PhysicalIC inverse_cgt_on_gamma(const HodographField& field, const GammaCurve& gamma);

struct BreakingReport {
  // min over the sampled range of d tau / d t = 1 + R''(t).
  double min_jacobian = 1.0;
  double t_at_min = 0.0;
  bool breaking = false;
};

// Scans 1 + R'' of the analytic fit on a dense grid over [t_lo, t_hi].
BreakingReport breaking_check(const GaussianSum& R, double t_lo, double t_hi,
                              double threshold = kDefaultBreakingThreshold);
BreakingReport breaking_check(const ShorelineSeries& R,
                              double threshold = kDefaultBreakingThreshold);

}  // namespace runup
