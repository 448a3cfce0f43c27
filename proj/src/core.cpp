#include "runup/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace runup {

BayGeometry::BayGeometry(double m) : m_(m) {
  if (!std::isfinite(m) || m <= 0.0) {
    throw InvalidParameter("bay exponent m must be positive and finite, got " + std::to_string(m));
  }
  omega_ = std::sqrt(m / (m + 1.0));
  q_ = 2.0 * std::numbers::pi / omega_;
}

BayGeometry make_bay(double m) { return BayGeometry(m); }

void ScalingParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidParameter(std::string(name) + " must be positive and finite");
    }
  };
  check(H0, "H0");
  check(alpha, "alpha");
  check(g, "g");
}

std::string_view to_string(GridLabel label) {
  switch (label) {
    case GridLabel::x: return "x";
    case GridLabel::t: return "t";
    case GridLabel::sigma: return "sigma";
    case GridLabel::tau: return "tau";
    case GridLabel::lambda: return "lambda";
    case GridLabel::xi: return "xi";
    case GridLabel::k: return "k";
  }
  return "?";
}

Grid1D::Grid1D(std::vector<double> nodes, GridLabel label)
    : nodes_(std::move(nodes)), label_(label) {
  if (nodes_.size() < 2) {
    throw InvalidParameter(std::string(to_string(label_)) + "-grid needs at least two nodes");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) {
      throw InvalidParameter(std::string(to_string(label_)) + "-grid node " + std::to_string(i) +
                             " is not finite");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw InvalidParameter(std::string(to_string(label_)) +
                             "-grid is not strictly increasing at node " + std::to_string(i));
    }
  }
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t n, GridLabel label) {
  if (n < 2 || !(hi > lo)) {
    throw InvalidParameter("uniform grid needs n >= 2 and hi > lo");
  }
  std::vector<double> nodes(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = lo + h * static_cast<double>(i);
  nodes.back() = hi;
  return Grid1D(std::move(nodes), label);
}

namespace {

void require_finite(std::span<const double> v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidParameter(std::string(name) + " is not finite at node " + std::to_string(i));
    }
  }
}

}  // namespace

PhysicalIC::PhysicalIC(Grid1D x_, std::vector<double> eta0_, std::vector<double> u0_)
    : x(std::move(x_)), eta0(std::move(eta0_)), u0(std::move(u0_)) {
  if (eta0.size() != x.size() || u0.size() != x.size()) {
    throw InvalidParameter("eta0/u0 length must match the x-grid");
  }
  require_finite(eta0, "eta0");
  require_finite(u0, "u0");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= 0.0 && x[i] + eta0[i] < 0.0) {
      throw InvalidParameter("negative total depth x + eta0 at node " + std::to_string(i));
    }
  }
}

ShorelineSeries::ShorelineSeries(Grid1D t_, std::vector<double> R_, std::optional<GaussianSum> fit_)
    : t(std::move(t_)), R(std::move(R_)), fit(std::move(fit_)) {
  if (R.size() != t.size()) throw InvalidParameter("R length must match the t-grid");
  require_finite(R, "R");
  if (fit) {
    double ss = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double d = fit->value(t[i]) - R[i];
      ss += d * d;
      peak = std::max(peak, std::abs(R[i]));
    }
    const double rms = std::sqrt(ss / static_cast<double>(t.size()));
    if (rms > fit->residual() * (1.0 + 1e-6) + 1e-14 * peak + 1e-300) {
      throw InvalidParameter("fit does not match R within its stored residual");
    }
  }
}

namespace {

double time_scale(const ScalingParams& p) { return std::sqrt(p.H0 / p.g) / p.alpha; }

PhysicalIC scale(const PhysicalIC& ic, double sx, double seta, double su) {
  std::vector<double> x(ic.x.nodes().begin(), ic.x.nodes().end());
  std::vector<double> eta = ic.eta0;
  std::vector<double> u = ic.u0;
  for (auto& v : x) v *= sx;
  for (auto& v : eta) v *= seta;
  for (auto& v : u) v *= su;
  return PhysicalIC(Grid1D(std::move(x), GridLabel::x), std::move(eta), std::move(u));
}

ShorelineSeries scale(const ShorelineSeries& s, double st, double sR) {
  std::vector<double> t(s.t.nodes().begin(), s.t.nodes().end());
  std::vector<double> R = s.R;
  for (auto& v : t) v *= st;
  for (auto& v : R) v *= sR;
  std::optional<GaussianSum> fit;
  if (s.fit) {
    // a exp(-b (t - c)^2) with t = t'/st.
    std::vector<GaussianTerm> terms = s.fit->terms();
    for (auto& term : terms) {
      term.a *= sR;
      term.b /= st * st;
      term.c *= st;
    }
    fit = GaussianSum(std::move(terms), s.fit->residual() * std::abs(sR));
  }
  return ShorelineSeries(Grid1D(std::move(t), GridLabel::t), std::move(R), std::move(fit));
}

}  // namespace

PhysicalIC dimensionalize(const PhysicalIC& ic, const ScalingParams& p) {
  p.validate();
  return scale(ic, p.H0 / p.alpha, p.H0, std::sqrt(p.H0 * p.g));
}

ShorelineSeries dimensionalize(const ShorelineSeries& s, const ScalingParams& p) {
  p.validate();
  return scale(s, time_scale(p), p.H0);
}

PhysicalIC nondimensionalize(const PhysicalIC& ic, const ScalingParams& p) {
  p.validate();
  return scale(ic, p.alpha / p.H0, 1.0 / p.H0, 1.0 / std::sqrt(p.H0 * p.g));
}

ShorelineSeries nondimensionalize(const ShorelineSeries& s, const ScalingParams& p) {
  p.validate();
  return scale(s, 1.0 / time_scale(p), 1.0 / p.H0);
}

}  // namespace runup
