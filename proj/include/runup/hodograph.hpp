#pragma once

#include <vector>

#include "runup/core.hpp"

namespace runup {

enum class HodographICKind {
  // Data on the curve tau = gamma(sigma) obtained directly from (eta0, u0).
  phys_on_gamma,
  // Data transferred to the line tau = 0.
  projected_on_tau0,
};

// Pressure-like psi and velocity phi initial data over sigma >= 0.
struct HodographIC {
  HodographIC(Grid1D sigma, std::vector<double> psi, std::vector<double> phi, HodographICKind kind);

  Grid1D sigma;
  std::vector<double> psi;
  std::vector<double> phi;
  HodographICKind kind;
};

// psi(0, tau) and phi(0, tau) at the fixed shoreline sigma = 0.
struct ShorelineTrace {
  ShorelineTrace(Grid1D tau, std::vector<double> psi0, std::vector<double> phi0);

  Grid1D tau;
  std::vector<double> psi0;
  std::vector<double> phi0;
};

// The curve tau = gamma(sigma) carrying the physical initial data, together
// with psi and phi evaluated on it when known.
struct GammaCurve {
  GammaCurve(Grid1D sigma, std::vector<double> tau, std::vector<double> psi = {},
             std::vector<double> phi = {});

  bool has_values() const noexcept { return !psi.empty(); }

  Grid1D sigma;
  std::vector<double> tau;
  std::vector<double> psi;
  std::vector<double> phi;
};

// psi and phi on a rectangular (sigma, tau) grid, stored sigma-major.
struct HodographField {
  HodographField(Grid1D sigma, Grid1D tau, std::vector<double> psi, std::vector<double> phi);

  double psi_at(std::size_t i_sigma, std::size_t j_tau) const {
    return psi[i_sigma * tau.size() + j_tau];
  }
  double phi_at(std::size_t i_sigma, std::size_t j_tau) const {
    return phi[i_sigma * tau.size() + j_tau];
  }

  Grid1D sigma;
  Grid1D tau;
  std::vector<double> psi;
  std::vector<double> phi;
};

}  // namespace runup
