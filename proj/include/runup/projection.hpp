#pragma once

#include <vector>

#include "runup/core.hpp"
#include "runup/hodograph.hpp"

namespace runup {

inline constexpr int kMaxProjectionOrder = 8;

struct ProjectionResult {
  HodographIC ic;  // kind = projected_on_tau0
  // Max-norm of each correction term k = 1..n.
  std::vector<double> correction_norms;
  // Some correction term differs by more than 10% between the h and 2h
  // derivative stencils: the grid does not resolve order n.
  bool accuracy_warning = false;
};

// n-th order data projection from gamma to tau = 0:
//   (phi_n, psi_n) = (phi, psi) + sum_{k=1}^n phi^k / k! [D Delta]^k (phi, psi),
// D = [[1, phi'], [m sigma/(m+1) phi', 1]],
// Delta = -[[0, 1], [m sigma/(m+1), 0]] d/dsigma - [[0, 0], [1, 0]],
// with phi = phi_phys. Needs a uniform sigma-grid with at least 5 nodes.
ProjectionResult project_ic(const HodographIC& ic, int n, const BayGeometry& bay);

}  // namespace runup
