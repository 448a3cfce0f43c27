#include "runup/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "runup/error.hpp"

namespace runup {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidParameter("Gauss-Legendre order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) - 1.0) * z * p1 - (static_cast<double>(j) - 1.0) * p2) /
             static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) - 1.0) * z * p1 - (static_cast<double>(j) - 1.0) * p2) /
             static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule composite_gauss_legendre(std::span<const double> breaks, std::size_t order) {
  if (breaks.size() < 2) throw InvalidParameter("composite rule needs at least one panel");
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve((breaks.size() - 1) * order);
  rule.weights.reserve((breaks.size() - 1) * order);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    for (std::size_t i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + half * base.nodes[i]);
      rule.weights.push_back(half * base.weights[i]);
    }
  }
  return rule;
}

QuadratureRule trapezoid(std::span<const double> nodes) {
  if (nodes.size() < 2) throw InvalidParameter("trapezoid rule needs at least two nodes");
  QuadratureRule rule;
  rule.nodes.assign(nodes.begin(), nodes.end());
  rule.weights.assign(nodes.size(), 0.0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double h = 0.5 * (nodes[i + 1] - nodes[i]);
    rule.weights[i] += h;
    rule.weights[i + 1] += h;
  }
  return rule;
}

std::vector<double> graded_breaks(double lo, double hi, std::size_t panels, double grading) {
  if (panels == 0 || !(hi > lo) || grading < 1.0) {
    throw InvalidParameter("graded_breaks: need panels > 0, hi > lo, grading >= 1");
  }
  std::vector<double> breaks(panels + 1);
  for (std::size_t j = 0; j <= panels; ++j) {
    const double s = 1.0 - static_cast<double>(j) / static_cast<double>(panels);
    breaks[j] = hi - (hi - lo) * std::pow(s, grading);
  }
  breaks.front() = lo;
  breaks.back() = hi;
  return breaks;
}

}  // namespace runup
