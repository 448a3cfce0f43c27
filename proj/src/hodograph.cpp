#include "runup/hodograph.hpp"

#include <cmath>
#include <string>

namespace runup {

namespace {

void require_finite(const std::vector<double>& v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidParameter(std::string(name) + " is not finite at index " + std::to_string(i));
    }
  }
}

}  // namespace

HodographIC::HodographIC(Grid1D sigma_, std::vector<double> psi_, std::vector<double> phi_,
                         HodographICKind kind_)
    : sigma(std::move(sigma_)), psi(std::move(psi_)), phi(std::move(phi_)), kind(kind_) {
  if (psi.size() != sigma.size() || phi.size() != sigma.size()) {
    throw InvalidParameter("hodograph data must match the sigma-grid");
  }
  if (sigma.front() < 0.0) throw InvalidParameter("sigma-nodes must be >= 0");
  require_finite(psi, "psi");
  require_finite(phi, "phi");
}

ShorelineTrace::ShorelineTrace(Grid1D tau_, std::vector<double> psi0_, std::vector<double> phi0_)
    : tau(std::move(tau_)), psi0(std::move(psi0_)), phi0(std::move(phi0_)) {
  if (psi0.size() != tau.size() || phi0.size() != tau.size()) {
    throw InvalidParameter("shoreline trace must match the tau-grid");
  }
  require_finite(psi0, "psi0");
  require_finite(phi0, "phi0");
}

GammaCurve::GammaCurve(Grid1D sigma_, std::vector<double> tau_, std::vector<double> psi_,
                       std::vector<double> phi_)
    : sigma(std::move(sigma_)), tau(std::move(tau_)), psi(std::move(psi_)), phi(std::move(phi_)) {
  if (tau.size() != sigma.size()) throw InvalidParameter("gamma must match the sigma-grid");
  if (psi.size() != phi.size() || (!psi.empty() && psi.size() != sigma.size())) {
    throw InvalidParameter("values on gamma must match the sigma-grid");
  }
  require_finite(tau, "gamma");
  require_finite(psi, "psi on gamma");
  require_finite(phi, "phi on gamma");
}

HodographField::HodographField(Grid1D sigma_, Grid1D tau_, std::vector<double> psi_,
                               std::vector<double> phi_)
    : sigma(std::move(sigma_)), tau(std::move(tau_)), psi(std::move(psi_)), phi(std::move(phi_)) {
  const std::size_t n = sigma.size() * tau.size();
  if (psi.size() != n || phi.size() != n) {
    throw InvalidParameter("field arrays must have sigma x tau entries");
  }
  require_finite(psi, "psi field");
  require_finite(phi, "phi field");
}

}  // namespace runup
