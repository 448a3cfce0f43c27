#pragma once

namespace runup {

// Bessel function of the first kind J_nu(x) for real nu >= 0, x >= 0.
// Absolute accuracy ~1e-13 for x <= 1e3 and moderate orders.
double bessel_j(double nu, double x);

// Gamma function for positive arguments.
double gamma_fn(double x);

}  // namespace runup
