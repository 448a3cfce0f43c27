#include "runup/interp.hpp"

#include <algorithm>
#include <cmath>

namespace runup {

SampledFunction::SampledFunction(Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidParameter("sampled values must match the grid length");
  }
}

double SampledFunction::operator()(double x) const {
  const auto nodes = grid_.nodes();
  const std::size_t n = nodes.size();
  if (x < nodes.front() || x > nodes.back()) return 0.0;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  if (i >= n - 1) i = n - 2;
  if (x == nodes[i]) return values_[i];
  if (n < 4) {
    const double w = (x - nodes[i]) / (nodes[i + 1] - nodes[i]);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
  }
  std::size_t lo = i == 0 ? 0 : i - 1;
  if (lo + 3 >= n) lo = n - 4;
  double sum = 0.0;
  for (std::size_t j = lo; j < lo + 4; ++j) {
    double w = 1.0;
    for (std::size_t l = lo; l < lo + 4; ++l) {
      if (l != j) w *= (x - nodes[l]) / (nodes[j] - nodes[l]);
    }
    sum += w * values_[j];
  }
  return sum;
}

std::vector<double> SampledFunction::operator()(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void check_xy(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw InvalidParameter("interpolation needs matching arrays of length >= 2");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw InvalidParameter("interpolation abscissae must increase");
  }
}

std::size_t locate(std::span<const double> xs, double x) {
  const double span = xs.back() - xs.front();
  const double tol = 1e-12 * span;
  if (x < xs.front() - tol || x > xs.back() + tol) {
    throw RangeError("interpolation query outside the sampled range");
  }
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  return std::min(i, xs.size() - 2);
}

double hermite_segment(double x0, double x1, double y0, double y1, double d0, double d1,
                       double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

}  // namespace

std::vector<double> pchip(std::span<const double> xs, std::span<const double> ys,
                          std::span<const double> query) {
  check_xy(xs, ys);
  const std::size_t n = xs.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs[i + 1] - xs[i];
    delta[i] = (ys[i + 1] - ys[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] > 0.0) {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    auto end_slope = [](double h0, double h1, double del0, double del1) {
      double s = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
      if (s * del0 <= 0.0) {
        s = 0.0;
      } else if (del0 * del1 <= 0.0 && std::abs(s) > 3.0 * std::abs(del0)) {
        s = 3.0 * del0;
      }
      return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
  std::vector<double> out(query.size());
  for (std::size_t q = 0; q < query.size(); ++q) {
    const std::size_t i = locate(xs, query[q]);
    out[q] = hermite_segment(xs[i], xs[i + 1], ys[i], ys[i + 1], d[i], d[i + 1], query[q]);
  }
  return out;
}

std::vector<double> hermite(std::span<const double> xs, std::span<const double> ys,
                            std::span<const double> slopes, std::span<const double> query) {
  check_xy(xs, ys);
  if (slopes.size() != xs.size()) throw InvalidParameter("slopes must match the abscissae");
  std::vector<double> out(query.size());
  for (std::size_t q = 0; q < query.size(); ++q) {
    const std::size_t i = locate(xs, query[q]);
    out[q] = hermite_segment(xs[i], xs[i + 1], ys[i], ys[i + 1], slopes[i], slopes[i + 1],
                             query[q]);
  }
  return out;
}

std::vector<double> derivative4(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw InvalidParameter("derivative4 needs at least 5 samples");
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
  }
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * s;
  d[n - 1] =
      (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * s;
  return d;
}

}  // namespace runup
