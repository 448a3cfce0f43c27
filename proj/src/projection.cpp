#include "runup/projection.hpp"

#include <algorithm>
#include <cmath>

#include "runup/interp.hpp"

namespace runup {

namespace {

struct Pair {
  std::vector<double> phi;
  std::vector<double> psi;
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// All k-th correction terms phi^k/k! [D Delta]^k (phi, psi) on a uniform grid.
std::vector<Pair> corrections(std::span<const double> sigma, const std::vector<double>& phi,
                              const std::vector<double>& psi, int n, double h, double c) {
  const std::size_t len = sigma.size();
  const std::vector<double> dphi_phys = derivative4(phi, h);
  std::vector<Pair> terms;
  Pair v{phi, psi};
  std::vector<double> power(len, 1.0);
  double factorial = 1.0;
  for (int k = 1; k <= n; ++k) {
    const std::vector<double> df = derivative4(v.phi, h);
    const std::vector<double> dg = derivative4(v.psi, h);
    Pair next{std::vector<double>(len), std::vector<double>(len)};
    for (std::size_t i = 0; i < len; ++i) {
      const double cs = c * sigma[i];
      // Delta (f, g) = (-g', -c sigma f' - f)
      const double d1 = -dg[i];
      const double d2 = -cs * df[i] - v.phi[i];
      next.phi[i] = d1 + dphi_phys[i] * d2;
      next.psi[i] = cs * dphi_phys[i] * d1 + d2;
    }
    v = next;
    factorial *= k;
    Pair term{std::vector<double>(len), std::vector<double>(len)};
    for (std::size_t i = 0; i < len; ++i) {
      power[i] *= phi[i];
      term.phi[i] = power[i] / factorial * v.phi[i];
      term.psi[i] = power[i] / factorial * v.psi[i];
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace

ProjectionResult project_ic(const HodographIC& ic, int n, const BayGeometry& bay) {
  if (ic.kind != HodographICKind::phys_on_gamma) {
    throw InvalidParameter("project_ic expects data on gamma");
  }
  if (n < 0 || n > kMaxProjectionOrder) {
    throw InvalidParameter("projection order must be in [0, " +
                           std::to_string(kMaxProjectionOrder) + "]");
  }
  ProjectionResult result{HodographIC(ic.sigma, ic.psi, ic.phi, HodographICKind::projected_on_tau0),
                          {}, false};
  if (n == 0) return result;

  const auto sigma = ic.sigma.nodes();
  const std::size_t len = sigma.size();
  if (len < 9) throw InvalidParameter("projection needs at least 9 sigma-nodes");
  const double h = (sigma.back() - sigma.front()) / static_cast<double>(len - 1);
  for (std::size_t i = 1; i < len; ++i) {
    if (std::abs(sigma[i] - sigma[i - 1] - h) > 1e-9 * h) {
      throw InvalidParameter("projection needs a uniform sigma-grid");
    }
  }
  const double c = bay.m() / (bay.m() + 1.0);

  const std::vector<Pair> terms = corrections(sigma, ic.phi, ic.psi, n, h, c);

  // Same terms from every second node; a resolved series agrees closely.
  std::vector<double> s2, phi2, psi2;
  for (std::size_t i = 0; i < len; i += 2) {
    s2.push_back(sigma[i]);
    phi2.push_back(ic.phi[i]);
    psi2.push_back(ic.psi[i]);
  }
  const std::vector<Pair> coarse =
      s2.size() >= 5 ? corrections(s2, phi2, psi2, n, 2.0 * h, c) : std::vector<Pair>{};

  std::vector<double>& phi_out = result.ic.phi;
  std::vector<double>& psi_out = result.ic.psi;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double norm = std::max(max_abs(terms[k].phi), max_abs(terms[k].psi));
    result.correction_norms.push_back(norm);
    for (std::size_t i = 0; i < len; ++i) {
      phi_out[i] += terms[k].phi[i];
      psi_out[i] += terms[k].psi[i];
    }
    if (!coarse.empty() && norm > 0.0) {
      double diff = 0.0;
      // Interior nodes only; the one-sided closures dominate the boundary.
      for (std::size_t j = 2; j + 2 < s2.size(); ++j) {
        diff = std::max(diff, std::abs(coarse[k].phi[j] - terms[k].phi[2 * j]));
        diff = std::max(diff, std::abs(coarse[k].psi[j] - terms[k].psi[2 * j]));
      }
      if (diff > 0.1 * norm) result.accuracy_warning = true;
    }
  }
  return result;
}

}  // namespace runup
