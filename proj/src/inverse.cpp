#include "runup/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace runup {

namespace {

// Normalized problem: s = (t - shift) / t_scale, y = R / r_scale.
struct FitProblem {
  std::vector<double> s;
  std::vector<double> y;
};

// Parameters per pulse: amplitude, log width coefficient, center.
using Params = std::vector<double>;

constexpr double kMaxLogB = 18.0;

double model(const Params& p, double s) {
  double v = 0.0;
  for (std::size_t j = 0; j < p.size(); j += 3) {
    const double d = s - p[j + 2];
    v += p[j] * std::exp(-std::exp(p[j + 1]) * d * d);
  }
  return v;
}

double cost(const FitProblem& prob, const Params& p) {
  double c = 0.0;
  for (std::size_t i = 0; i < prob.s.size(); ++i) {
    const double e = model(p, prob.s[i]) - prob.y[i];
    c += e * e;
  }
  return c;
}

struct LmOutcome {
  Params p;
  double cost;
  std::size_t iterations;
  bool converged;
};

LmOutcome levenberg_marquardt(const FitProblem& prob, Params p, std::size_t max_iterations) {
  const auto n = static_cast<Eigen::Index>(prob.s.size());
  const auto np = static_cast<Eigen::Index>(p.size());
  double current = cost(prob, p);
  double mu = 1e-3;
  Eigen::MatrixXd J(n, np);
  Eigen::VectorXd e(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (current <= 1e-32 * static_cast<double>(n)) return {p, current, it, true};
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = prob.s[static_cast<std::size_t>(i)];
      double v = 0.0;
      for (Eigen::Index j = 0; j < np; j += 3) {
        const double a = p[static_cast<std::size_t>(j)];
        const double b = std::exp(p[static_cast<std::size_t>(j + 1)]);
        const double d = s - p[static_cast<std::size_t>(j + 2)];
        const double g = std::exp(-b * d * d);
        v += a * g;
        J(i, j) = g;
        J(i, j + 1) = -a * g * b * d * d;
        J(i, j + 2) = 2.0 * a * g * b * d;
      }
      e(i) = v - prob.y[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd grad = J.transpose() * e;
    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = A;
      for (Eigen::Index k = 0; k < np; ++k) damped(k, k) += mu * std::max(A(k, k), 1e-30);
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      if (!step.allFinite()) {
        mu *= 10.0;
        continue;
      }
      Params trial = p;
      for (Eigen::Index k = 0; k < np; ++k) trial[static_cast<std::size_t>(k)] += step(k);
      for (std::size_t j = 1; j < trial.size(); j += 3) trial[j] = std::min(trial[j], kMaxLogB);
      const double c = cost(prob, trial);
      if (c < current) {
        const double gain = (current - c) / current;
        double step_norm = 0.0;
        double p_norm = 0.0;
        for (Eigen::Index k = 0; k < np; ++k) {
          step_norm = std::max(step_norm, std::abs(step(k)));
          p_norm = std::max(p_norm, std::abs(p[static_cast<std::size_t>(k)]));
        }
        p = std::move(trial);
        current = c;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
        if (gain < 1e-12 || step_norm < 1e-10 * std::max(1.0, p_norm)) {
          return {p, current, it + 1, true};
        }
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) return {p, current, it + 1, true};  // no descent left: stationary
  }
  return {p, current, max_iterations, false};
}

// New pulse at the largest remaining misfit, width from the half-maximum.
void seed_pulse(const FitProblem& prob, Params& p) {
  const std::size_t n = prob.s.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = prob.y[i] - model(p, prob.s[i]);
  std::size_t at = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(r[i]) > std::abs(r[at])) at = i;
  }
  const double a = r[at];
  std::size_t lo = at;
  std::size_t hi = at;
  while (lo > 0 && r[lo - 1] * a > 0.5 * a * a) --lo;
  while (hi + 1 < n && r[hi + 1] * a > 0.5 * a * a) ++hi;
  const double ds = (prob.s.back() - prob.s.front()) / static_cast<double>(n - 1);
  const double half_width = std::max(0.5 * (prob.s[hi] - prob.s[lo]) + 0.5 * ds, ds);
  p.push_back(a);
  p.push_back(std::log(std::log(2.0) / (half_width * half_width)));
  p.push_back(prob.s[at]);
}

}  // namespace

GaussianSum fit_gaussian_sum(const ShorelineSeries& samples, const FitOptions& options,
                             FitReport* report) {
  const std::size_t n = samples.t.size();
  // The automatic count stops where the samples run out; a fixed count must fit.
  const std::size_t limit = options.terms ? options.terms : std::min(options.max_terms, n / 3);
  if (limit == 0) throw InvalidParameter("fit needs at least one term and three samples per term");
  if (3 * limit > n) {
    std::ostringstream msg;
    msg << "fit with " << limit << " terms needs at least " << 3 * limit << " samples, got " << n;
    throw InvalidParameter(msg.str());
  }
  if (!(options.tolerance > 0.0)) throw InvalidParameter("fit tolerance must be positive");

  const double shift = 0.5 * (samples.t.front() + samples.t.back());
  const double t_scale = 0.5 * (samples.t.back() - samples.t.front());
  double r_scale = 0.0;
  for (double v : samples.R) r_scale = std::max(r_scale, std::abs(v));

  FitReport local;
  if (r_scale == 0.0) {
    std::vector<GaussianTerm> zero(limit, GaussianTerm{0.0, 1.0 / (t_scale * t_scale), shift});
    if (report) *report = local;
    return GaussianSum(std::move(zero), 0.0);
  }

  FitProblem prob;
  prob.s.resize(n);
  prob.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    prob.s[i] = (samples.t[i] - shift) / t_scale;
    prob.y[i] = samples.R[i] / r_scale;
  }

  Params p;
  Params best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < limit; ++j) {
    seed_pulse(prob, p);
    LmOutcome out = levenberg_marquardt(prob, p, options.max_iterations);
    p = out.p;
    local.iterations += out.iterations;
    local.converged = out.converged;
    if (out.cost < best_cost) {
      best_cost = out.cost;
      best = p;
    }
    const double rel = std::sqrt(out.cost / static_cast<double>(n));
    if (options.terms == 0) {
      // Automatic term count succeeds once the misfit is small enough.
      local.converged = rel <= options.tolerance;
      if (local.converged) break;
    }
  }

  std::vector<GaussianTerm> terms;
  for (std::size_t j = 0; j < best.size(); j += 3) {
    terms.push_back(GaussianTerm{best[j] * r_scale, std::exp(best[j + 1]) / (t_scale * t_scale),
                                 best[j + 2] * t_scale + shift});
  }
  local.relative_residual = std::sqrt(best_cost / static_cast<double>(n));
  GaussianSum fit(std::move(terms));
  // Residual recomputed in physical units against the samples.
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = fit.value(samples.t[i]) - samples.R[i];
    sq += e * e;
  }
  if (report) *report = local;
  return GaussianSum(fit.terms(), std::sqrt(sq / static_cast<double>(n)));
}

GaussianSum fit_gaussian_sum(const ShorelineSeries& samples, std::size_t terms) {
  FitOptions options;
  options.terms = terms;
  return fit_gaussian_sum(samples, options);
}

ParityParts even_odd_split(const std::function<double(double)>& f, const Grid1D& xs) {
  ParityParts out;
  out.even.resize(xs.size());
  out.odd.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double plus = f(xs[i]);
    const double minus = f(-xs[i]);
    out.even[i] = 0.5 * (plus + minus);
    out.odd[i] = plus - out.even[i];
  }
  return out;
}

namespace {

double peak_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Largest |tau| at which the trace exceeds `decay` of its peak.
double trace_extent(const ShorelineTrace& trace, double decay) {
  const double peak = std::max(peak_abs(trace.psi0), peak_abs(trace.phi0));
  if (peak == 0.0) return 0.0;
  double extent = 0.0;
  for (std::size_t i = 0; i < trace.tau.size(); ++i) {
    if (std::max(std::abs(trace.psi0[i]), std::abs(trace.phi0[i])) > decay * peak) {
      extent = std::max(extent, std::abs(trace.tau[i]));
    }
  }
  return extent;
}

struct LambdaData {
  Grid1D lambda;
  std::vector<double> psi_hat;
  std::vector<double> phi_hat;
  double odd_fraction;
};

LambdaData recover_on(const GaussianSum& R, const BayGeometry& bay, const QuadratureConfig& cfg,
                      const InverseOptions& options, double lambda_max) {
  const std::size_t nx = options.n_xi;
  const double xi_max = lambda_max / std::numbers::pi;
  const Grid1D xi = Grid1D::uniform(0.0, xi_max, nx, GridLabel::xi);
  // Symmetric tau-grid tau = +-q xi; the trace on it gives both parities.
  std::vector<double> taus(2 * nx - 1);
  for (std::size_t i = 0; i < nx; ++i) {
    taus[nx - 1 + i] = bay.q() * xi[i];
    taus[nx - 1 - i] = -bay.q() * xi[i];
  }
  const ShorelineTrace trace =
      shoreline_from_runup(R, Grid1D(std::move(taus), GridLabel::tau), options.breaking_threshold);
  std::vector<double> Psi(nx), Phi(nx);
  double odd = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const std::size_t plus = nx - 1 + i;
    const std::size_t minus = nx - 1 - i;
    Psi[i] = 0.5 * (trace.psi0[plus] + trace.psi0[minus]);
    Phi[i] = 0.5 * (trace.phi0[plus] + trace.phi0[minus]);
    odd = std::max(odd, std::abs(trace.psi0[plus] - Psi[i]));
  }
  const double peak = std::max(peak_abs(trace.psi0), peak_abs(trace.phi0));
  const SampledFunction Psi_f(xi, std::move(Psi));
  const SampledFunction Phi_f(xi, std::move(Phi));
  Grid1D lambda = Grid1D::uniform(0.0, lambda_max, options.n_lambda, GridLabel::lambda);
  auto psi_hat = abel_recover(AbelKind::psi, Psi_f, lambda.nodes(), bay, cfg);
  auto phi_hat = abel_recover(AbelKind::phi, Phi_f, lambda.nodes(), bay, cfg);
  return LambdaData{std::move(lambda), std::move(psi_hat), std::move(phi_hat),
                    peak > 0.0 ? odd / peak : 0.0};
}

double edge_fraction(const LambdaData& d) {
  const double peak = std::max(peak_abs(d.psi_hat), peak_abs(d.phi_hat));
  if (peak == 0.0) return 0.0;
  const std::size_t n = d.psi_hat.size();
  const std::size_t edge = std::max<std::size_t>(2, n / 20);
  double level = 0.0;
  for (std::size_t i = n - edge; i < n; ++i) {
    level = std::max({level, std::abs(d.psi_hat[i]), std::abs(d.phi_hat[i])});
  }
  return level / peak;
}

// Recovered data whose edge stays above this are extended. Fit misfit leaves
// a slowly decaying tail of relative size ~1e-3 that must not trigger it.
constexpr double kLambdaEdge = 1e-2;
constexpr int kLambdaExtensions = 4;

}  // namespace

ProjectedRecovery recover_projected_ic(const GaussianSum& R, const BayGeometry& bay,
                                       const QuadratureConfig& cfg,
                                       const InverseOptions& options) {
  cfg.validate();
  if (options.n_lambda < 16 || options.n_xi < 16) {
    throw InvalidParameter("lambda- and xi-grids need at least 16 nodes");
  }
  double lambda_max = 0.0;
  bool adaptive = !options.lambda_max;
  if (options.lambda_max) {
    lambda_max = *options.lambda_max;
    if (!(lambda_max > 0.0)) throw InvalidParameter("lambda_max must be positive");
  } else {
    // Signals from sigma <= s reach the shore within |tau| <= 2 sqrt(s) / omega.
    double reach = 0.0;
    for (const GaussianTerm& term : R.terms()) {
      if (term.a != 0.0) reach = std::max(reach, std::abs(term.c) + 8.0 / std::sqrt(term.b));
    }
    if (options.t_reach) reach = std::min(reach, *options.t_reach);
    if (!(reach > 0.0)) reach = 1.0;
    const ShorelineTrace wide = shoreline_from_runup(
        R, Grid1D::uniform(-reach, reach, 4 * options.n_xi + 1, GridLabel::tau),
        options.breaking_threshold);
    const double extent = trace_extent(wide, options.trace_decay);
    lambda_max = std::max(0.5, 1.25 * 0.5 * bay.omega() * extent);
  }

  LambdaData data = recover_on(R, bay, cfg, options, lambda_max);
  double edge = edge_fraction(data);
  for (int i = 0; adaptive && edge > kLambdaEdge && i < kLambdaExtensions; ++i) {
    lambda_max *= 1.5;
    data = recover_on(R, bay, cfg, options, lambda_max);
    edge = edge_fraction(data);
  }

  std::vector<double> sigma(data.lambda.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = data.lambda[i] * data.lambda[i];
  HodographIC ic(Grid1D(std::move(sigma), GridLabel::sigma), data.psi_hat, data.phi_hat,
                 HodographICKind::projected_on_tau0);
  SampledFunction psi_hat(data.lambda, std::move(data.psi_hat));
  SampledFunction phi_hat(data.lambda, std::move(data.phi_hat));
  return ProjectedRecovery{std::move(ic), std::move(psi_hat), std::move(phi_hat),
                           data.odd_fraction, edge};
}

namespace {

// Index of min |tau + phi| over one row; ties go to the smallest |tau|.
std::size_t row_argmin(std::span<const double> tau, std::span<const double> phi) {
  std::size_t at = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < tau.size(); ++j) {
    const double f = std::abs(tau[j] + phi[j]);
    if (f < best || (f == best && std::abs(tau[j]) < std::abs(tau[at]))) {
      best = f;
      at = j;
    }
  }
  return at;
}

[[noreturn]] void band_too_narrow(double sigma, double tau) {
  std::ostringstream msg;
  msg << "gamma search hit the band edge at sigma = " << sigma << ", tau = " << tau
      << ": the tau-band is too narrow";
  throw RangeError(msg.str());
}

}  // namespace

GammaCurve recover_gamma(const HodographField& field) {
  const std::size_t ns = field.sigma.size();
  const std::size_t nt = field.tau.size();
  std::vector<double> gamma(ns), psi(ns), phi(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const std::span<const double> row(field.phi.data() + i * nt, nt);
    const std::size_t at = row_argmin(field.tau.nodes(), row);
    if (at == 0 || at + 1 == nt) band_too_narrow(field.sigma[i], field.tau[at]);
    gamma[i] = field.tau[at];
    psi[i] = field.psi_at(i, at);
    phi[i] = field.phi_at(i, at);
  }
  return GammaCurve(field.sigma, std::move(gamma), std::move(psi), std::move(phi));
}

GammaCurve recover_gamma(const SpectralSolution& solution, const Grid1D& sigma,
                         double max_phi_proj, const InverseOptions& options) {
  if (options.n_band < 5 || options.n_band % 2 == 0) {
    throw InvalidParameter("gamma band needs an odd node count >= 5");
  }
  if (!(options.refine_factor >= 1.0)) throw InvalidParameter("refine factor must be >= 1");
  const double half = std::max(4.0 * max_phi_proj, 1e-3 * solution.bay().q());
  const Grid1D band = Grid1D::uniform(-half, half, options.n_band, GridLabel::tau);
  const GammaCurve coarse = recover_gamma(solution.field(sigma, band));

  const double step = (2.0 * half / static_cast<double>(options.n_band - 1)) / options.refine_factor;
  const std::size_t nb = options.n_band;
  const std::size_t ns = sigma.size();
  std::vector<double> gamma(ns), psi(ns), phi(ns);
  std::vector<char> at_edge(ns, 0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < ns; ++i) {
    std::vector<double> taus(nb), ps(nb), ph(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      taus[j] = coarse.tau[i] + step * (static_cast<double>(j) - 0.5 * static_cast<double>(nb - 1));
    }
    solution.column(sigma[i], taus, ps, ph);
    const std::size_t at = row_argmin(taus, ph);
    at_edge[i] = at == 0 || at + 1 == nb;
    gamma[i] = taus[at];
    psi[i] = ps[at];
    phi[i] = ph[at];
  }
  // The fine band spans two coarse steps either side, so an edge hit means
  // the coarse search was misled.
  for (std::size_t i = 0; i < ns; ++i) {
    if (at_edge[i]) band_too_narrow(sigma[i], gamma[i]);
  }
  return GammaCurve(sigma, std::move(gamma), std::move(psi), std::move(phi));
}

InverseResult inverse_pipeline(const ShorelineSeries& R, const BayGeometry& bay,
                               const QuadratureConfig& cfg, const InverseOptions& options) {
  if (options.n_sigma < 16) throw InvalidParameter("sigma-grid needs at least 16 nodes");
  FitReport report;
  GaussianSum fit;
  if (R.fit) {
    fit = *R.fit;
    double peak = 0.0;
    for (double v : R.R) peak = std::max(peak, std::abs(v));
    report.relative_residual = peak > 0.0 ? fit.residual() / peak : 0.0;
  } else {
    fit = fit_gaussian_sum(R, options.fit, &report);
  }

  BreakingReport breaking =
      breaking_check(fit, R.t.front(), R.t.back(), options.breaking_threshold);
  if (breaking.breaking) {
    std::ostringstream msg;
    msg << "min(1 + R'') = " << breaking.min_jacobian << " at t = " << breaking.t_at_min
        << ": the run-up data describe a breaking wave";
    throw BreakingError(msg.str());
  }

  InverseOptions bounded = options;
  if (!bounded.t_reach) bounded.t_reach = std::max(std::abs(R.t.front()), std::abs(R.t.back()));
  ProjectedRecovery rec = recover_projected_ic(fit, bay, cfg, bounded);
  const SpectralSolution solution(rec.psi_hat, rec.phi_hat, bay, cfg);

  const double sigma_max = rec.ic.sigma.back();
  const double h = sigma_max / static_cast<double>(options.n_sigma);
  const Grid1D sigma = Grid1D::uniform(h, sigma_max, options.n_sigma, GridLabel::sigma);
  const double max_phi = peak_abs(rec.ic.phi);
  GammaCurve gamma = recover_gamma(solution, sigma, max_phi, bounded);
  PhysicalIC ic = inverse_cgt_on_gamma(gamma);
  const double band = std::max(4.0 * max_phi, 1e-3 * bay.q());
  return InverseResult{std::move(ic),
                       std::move(fit),
                       report,
                       std::move(rec.ic),
                       std::move(gamma),
                       solution.k_max(),
                       solution.moments().k_capped,
                       band,
                       breaking};
}

}  // namespace runup
