#pragma once

#include <span>
#include <vector>

namespace runup {

// One pulse a * exp(-b (t - c)^2), b > 0.
struct GaussianTerm {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
};

// Analytic approximation R(t) = sum_j a_j exp(-b_j (t - c_j)^2) of shoreline
// data. Defined and smooth on the whole real line, which is what the parity
// split of the shoreline trace needs.
class GaussianSum {
 public:
  GaussianSum() = default;
  explicit GaussianSum(std::vector<GaussianTerm> terms, double residual = 0.0);

  const std::vector<GaussianTerm>& terms() const noexcept { return terms_; }
  // RMS misfit against the samples the sum was fitted to.
  double residual() const noexcept { return residual_; }
  bool empty() const noexcept { return terms_.empty(); }

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  double third_derivative(double t) const;

  // Value and first two derivatives in one pass.
  struct Jet {
    double value;
    double d1;
    double d2;
  };
  Jet jet(double t) const;

  std::vector<double> values(std::span<const double> t) const;

 private:
  std::vector<GaussianTerm> terms_;
  double residual_ = 0.0;
};

}  // namespace runup
