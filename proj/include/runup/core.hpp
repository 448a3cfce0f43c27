#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "runup/error.hpp"
#include "runup/gaussian_sum.hpp"

namespace runup {

// Power-shaped bay z = -x + |y|^m. Everything downstream needs only the
// exponent and the two derived constants.
class BayGeometry {
 public:
  explicit BayGeometry(double m);

  double m() const noexcept { return m_; }
  // Wave-speed factor omega = sqrt(m / (m + 1)).
  double omega() const noexcept { return omega_; }
  // Time scale q = 2 pi / omega used to rescale the shoreline trace.
  double q() const noexcept { return q_; }
  // Bessel order 1/m of the pressure kernel.
  double nu() const noexcept { return 1.0 / m_; }

 private:
  double m_;
  double omega_;
  double q_;
};

BayGeometry make_bay(double m);

// Characteristic wave height H0, bathymetry slope alpha and gravity g.
struct ScalingParams {
  double H0 = 1.0;
  double alpha = 1.0;
  double g = 9.81;

  void validate() const;
};

enum class GridLabel { x, t, sigma, tau, lambda, xi, k };

std::string_view to_string(GridLabel label);

// Explicit node array, strictly increasing, at least two nodes.
class Grid1D {
 public:
  Grid1D(std::vector<double> nodes, GridLabel label);

  static Grid1D uniform(double lo, double hi, std::size_t n, GridLabel label);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  GridLabel label() const noexcept { return label_; }

 private:
  std::vector<double> nodes_;
  GridLabel label_;
};

// Initial displacement and velocity sampled on x.
struct PhysicalIC {
  PhysicalIC(Grid1D x, std::vector<double> eta0, std::vector<double> u0);

  Grid1D x;
  std::vector<double> eta0;
  std::vector<double> u0;
};

// Vertical shoreline displacement R(t), optionally with its analytic fit.
struct ShorelineSeries {
  ShorelineSeries(Grid1D t, std::vector<double> R, std::optional<GaussianSum> fit = std::nullopt);

  Grid1D t;
  std::vector<double> R;
  std::optional<GaussianSum> fit;
};

PhysicalIC dimensionalize(const PhysicalIC& ic, const ScalingParams& p);
ShorelineSeries dimensionalize(const ShorelineSeries& s, const ScalingParams& p);
PhysicalIC nondimensionalize(const PhysicalIC& ic, const ScalingParams& p);
ShorelineSeries nondimensionalize(const ShorelineSeries& s, const ScalingParams& p);

}  // namespace runup
