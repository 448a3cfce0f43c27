#include "runup/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "runup/error.hpp"

namespace runup {

namespace {

constexpr double kSeriesLimit = 12.0;

// Ascending series, accumulated in extended precision to contain the
// cancellation between terms near the upper end of its range.
double bessel_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double half = 0.5L * static_cast<long double>(x);
  const long double q = -half * half;
  long double term = std::pow(half, static_cast<long double>(nu)) /
                     static_cast<long double>(std::tgamma(nu + 1.0));
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * (static_cast<long double>(k) + nu));
    sum += term;
    if (k > half && std::fabs(term) < 1e-19L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion, used when x is large against nu^2.
double bessel_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  const double inv8x = 1.0 / (8.0 * x);
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) * inv8x / k;
    const double mag = std::abs(term);
    if (mag > last && k > 2) break;
    last = mag;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Steed's method: continued fraction CF1 for J'/J, CF2 for (J' + iY')/(J + iY)
// with downward recurrence to bring the order into CF2's range. Valid x >= 2.
double bessel_steed(double nu, double x) {
  constexpr double eps = 1e-16;
  constexpr double fpmin = 1e-300;
  constexpr int max_iter = 100000;
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / std::numbers::pi;

  int isign = 1;
  double h = nu * xi;
  if (h < fpmin) h = fpmin;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int i = 1;
  for (; i <= max_iter; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b - 1.0 / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) < eps) break;
  }
  if (i > max_iter) throw ConvergenceError("Bessel CF1 did not converge");

  double rjl = isign * fpmin;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
  }
  if (rjl == 0.0) rjl = eps;
  const double f = rjpl / rjl;

  double a = 0.25 - xmu2;
  double p = -0.5 * xi;
  double q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact;
  double ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den;
  double di = -bi / den;
  double dlr = cr * dr - ci * di;
  double dli = cr * di + ci * dr;
  double temp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = temp;
  for (i = 2; i <= max_iter; ++i) {
    a += 2.0 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    if (std::abs(dlr - 1.0) + std::abs(dli) < eps) break;
  }
  if (i > max_iter) throw ConvergenceError("Bessel CF2 did not converge");

  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  return rjl1 * (rjmu / rjl);
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw InvalidParameter("bessel_j: order must be finite and >= 0");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw InvalidParameter("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
  }
  if (x < kSeriesLimit) return bessel_series(nu, x);
  if (x >= 25.0 + nu * nu) return bessel_asymptotic(nu, x);
  return bessel_steed(nu, x);
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidParameter("gamma_fn: argument must be > 0");
  return std::tgamma(x);
}

}  // namespace runup
