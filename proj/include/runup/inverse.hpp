#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "runup/cgt.hpp"
#include "runup/core.hpp"
#include "runup/forward.hpp"
#include "runup/gaussian_sum.hpp"
#include "runup/hodograph.hpp"
#include "runup/interp.hpp"
#include "runup/transforms.hpp"

namespace runup {

struct FitOptions {
  // Number of pulses; 0 adds pulses one at a time until the RMS misfit drops
  // below `tolerance` of the data peak or `max_terms` (at most one per three
  // samples) is reached.
  std::size_t terms = 0;
  std::size_t max_terms = 24;
  double tolerance = 1e-6;
  std::size_t max_iterations = 400;
};

struct FitReport {
  // Tolerance reached (automatic term count) or iteration stationary (fixed).
  bool converged = true;
  std::size_t iterations = 0;
  // RMS misfit divided by the peak |R|.
  double relative_residual = 0.0;
};

// Least-squares fit of sum_j a_j exp(-b_j (t - c_j)^2) to the samples, with
// b_j = exp(beta_j) so that b_j stays positive. Pulses are seeded one at a
// time at the largest remaining misfit and all parameters are re-optimized
// by Levenberg-Marquardt after each addition. Non-convergence returns the
// best fit found and clears `report->converged`.
GaussianSum fit_gaussian_sum(const ShorelineSeries& samples, const FitOptions& options = {},
                             FitReport* report = nullptr);
GaussianSum fit_gaussian_sum(const ShorelineSeries& samples, std::size_t terms);

struct ParityParts {
  std::vector<double> even;
  std::vector<double> odd;
};

ParityParts even_odd_split(const std::function<double(double)>& f, const Grid1D& xs);

struct InverseOptions {
  FitOptions fit;
  std::size_t n_lambda = 512;
  std::size_t n_xi = 4096;
  std::size_t n_sigma = 512;
  // Coarse tau-band nodes for the gamma search; the refinement pass uses the
  // same count at `refine_factor` times finer spacing.
  std::size_t n_band = 201;
  double refine_factor = 10.0;
  // Optional upper end of the lambda-grid; unset infers it from the decay of
  // the shoreline trace and extends it until psi_hat has died out.
  std::optional<double> lambda_max;
  double trace_decay = 1e-6;
  // Largest |t| at which R is known; the fit is not trusted beyond it when
  // inferring the lambda-range. inverse_pipeline defaults it to the sample range.
  std::optional<double> t_reach;
  double breaking_threshold = kDefaultBreakingThreshold;
};

struct ProjectedRecovery {
  // psi_proj, phi_proj on sigma = lambda^2.
  HodographIC ic;
  // The same data on the uniform lambda-grid.
  SampledFunction psi_hat;
  SampledFunction phi_hat;
  // Parity diagnostics of the shoreline trace, relative to its peak.
  double odd_psi_fraction = 0.0;
  double edge_level = 0.0;
};

// Abel recovery of the projected hodograph data from the analytic fit of R.
ProjectedRecovery recover_projected_ic(const GaussianSum& R, const BayGeometry& bay,
                                       const QuadratureConfig& cfg,
                                       const InverseOptions& options = {});

// Grid argmin of |tau + phi(sigma_j, tau)| per sigma-row; ties go to the
// smallest |tau|. Throws RangeError when a minimum sits on the band edge.
GammaCurve recover_gamma(const HodographField& field);

// Coarse search on a band of half-width max(4 max|phi_proj|, 1e-3 q), then
// one pass on a band refine_factor times finer around the coarse curve.
// The returned curve carries psi and phi evaluated on it.
GammaCurve recover_gamma(const SpectralSolution& solution, const Grid1D& sigma,
                         double max_phi_proj, const InverseOptions& options = {});

struct InverseResult {
  PhysicalIC ic;
  GaussianSum fit;
  FitReport fit_report;
  HodographIC projected;
  GammaCurve gamma;
  double k_max;
  bool k_capped;
  double band_half_width;
  BreakingReport breaking;
};

InverseResult inverse_pipeline(const ShorelineSeries& R, const BayGeometry& bay,
                               const QuadratureConfig& cfg, const InverseOptions& options = {});

}  // namespace runup
