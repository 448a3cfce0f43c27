#pragma once

#include <span>
#include <vector>

#include "runup/core.hpp"

namespace runup {

// Samples on a grid, evaluated by local four-point Lagrange interpolation.
// Zero outside the sampled range (compactly supported data).
class SampledFunction {
 public:
  SampledFunction(Grid1D grid, std::vector<double> values);

  double operator()(double x) const;
  std::vector<double> operator()(std::span<const double> xs) const;

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double max_abs() const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

// Shape-preserving piecewise cubic (Fritsch-Carlson slopes). Query points must
// lie inside [xs.front(), xs.back()].
std::vector<double> pchip(std::span<const double> xs, std::span<const double> ys,
                          std::span<const double> query);

// Cubic Hermite interpolation with prescribed slopes.
std::vector<double> hermite(std::span<const double> xs, std::span<const double> ys,
                            std::span<const double> slopes, std::span<const double> query);

// Fourth-order first derivative on a uniform grid with spacing h; one-sided
// closures on the two boundary nodes at each end. Needs at least 5 samples.
std::vector<double> derivative4(std::span<const double> f, double h);

}  // namespace runup
