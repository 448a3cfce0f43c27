#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace runup {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

// Gauss-Legendre of order `order` on every panel [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss_legendre(std::span<const double> breaks, std::size_t order);

// Composite trapezoid on the given nodes.
QuadratureRule trapezoid(std::span<const double> nodes);

// Panel breakpoints on [lo, hi] clustered geometrically-polynomially toward
// `hi` with exponent `grading` (1 = uniform).
std::vector<double> graded_breaks(double lo, double hi, std::size_t panels, double grading);

// Fixed-order accumulation with Neumaier compensation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace runup
