#include "runup/gaussian_sum.hpp"

#include <cmath>

#include "runup/error.hpp"

namespace runup {

GaussianSum::GaussianSum(std::vector<GaussianTerm> terms, double residual)
    : terms_(std::move(terms)), residual_(residual) {
  for (const auto& term : terms_) {
    if (!(term.b > 0.0) || !std::isfinite(term.b) || !std::isfinite(term.a) ||
        !std::isfinite(term.c)) {
      throw InvalidParameter("Gaussian terms need finite a, c and b > 0");
    }
  }
}

double GaussianSum::value(double t) const {
  double s = 0.0;
  for (const auto& g : terms_) {
    const double d = t - g.c;
    s += g.a * std::exp(-g.b * d * d);
  }
  return s;
}

double GaussianSum::derivative(double t) const {
  double s = 0.0;
  for (const auto& g : terms_) {
    const double d = t - g.c;
    s += -2.0 * g.b * d * g.a * std::exp(-g.b * d * d);
  }
  return s;
}

double GaussianSum::second_derivative(double t) const {
  double s = 0.0;
  for (const auto& g : terms_) {
    const double d = t - g.c;
    s += g.a * (4.0 * g.b * g.b * d * d - 2.0 * g.b) * std::exp(-g.b * d * d);
  }
  return s;
}

double GaussianSum::third_derivative(double t) const {
  double s = 0.0;
  for (const auto& g : terms_) {
    const double d = t - g.c;
    const double b = g.b;
    s += g.a * (12.0 * b * b * d - 8.0 * b * b * b * d * d * d) * std::exp(-b * d * d);
  }
  return s;
}

GaussianSum::Jet GaussianSum::jet(double t) const {
  Jet j{0.0, 0.0, 0.0};
  for (const auto& g : terms_) {
    const double d = t - g.c;
    const double e = g.a * std::exp(-g.b * d * d);
    j.value += e;
    j.d1 += -2.0 * g.b * d * e;
    j.d2 += (4.0 * g.b * g.b * d * d - 2.0 * g.b) * e;
  }
  return j;
}

std::vector<double> GaussianSum::values(std::span<const double> t) const {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = value(t[i]);
  return out;
}

}  // namespace runup
