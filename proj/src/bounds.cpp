#include "tvdradmm/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tvdradmm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DualConstants dual_constants(int d_max, double mu, double c0, double epsilon) {
  if (d_max < 1) throw std::invalid_argument("dual_constants: d_max must be >= 1");
  if (mu <= 0.0) throw std::invalid_argument("dual_constants: mu must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("dual_constants: epsilon must be >= 0");
  DualConstants dc;
  dc.mu_bar = epsilon;
  dc.ell_bar = epsilon + d_max / mu;
  dc.kappa_bar = epsilon > 0.0 ? 1.0 + d_max / (mu * epsilon) : kInf;
  dc.norm_A = std::sqrt(static_cast<double>(d_max));
  dc.c0_bar = dc.norm_A * c0 / mu;
  return dc;
}

double RateConstants::zeta(int sweeps) const {
  if (sweeps <= 0) return 1.0;
  return omega * std::pow(lambda, sweeps);
}

double RateConstants::xi(int sweeps) const {
  if (sweeps <= 0) return 0.0;
  return 1.0 + omega * std::pow(lambda, sweeps);
}

RateConstants prs_rate(double rho, const DualConstants& dc) {
  if (rho <= 0.0) throw std::invalid_argument("prs_rate: rho must be positive");
  RateConstants rc;
  double lo = std::abs(1.0 - rho * dc.mu_bar) / (1.0 + rho * dc.mu_bar);
  double hi = std::abs(1.0 - rho * dc.ell_bar) / (1.0 + rho * dc.ell_bar);
  rc.lambda = std::max(lo, hi);
  rc.omega = (1.0 + rho * dc.ell_bar) / (1.0 + rho * dc.mu_bar);
  return rc;
}

TrackingRadius tracking_radius(int n_pred, int n_corr, double t_s, const DualConstants& dc,
                               double rho) {
  if (n_pred < 0 || n_corr < 0)
    throw std::invalid_argument("tracking_radius: sweep counts must be >= 0");
  TrackingRadius tr;
  if (!dc.contractive()) {
    // κ̄ = ∞: the recursion coefficients blow up and no radius exists.
    tr.eta0 = kInf;
    tr.eta1 = kInf;
    tr.radius = kInf;
    tr.feasible = false;
    return tr;
  }
  RateConstants rc = prs_rate(rho, dc);
  double zp = rc.zeta(n_pred), xp = rc.xi(n_pred), zc = rc.zeta(n_corr);
  tr.eta1 = zc * (zp + 2.0 * dc.kappa_bar * xp);
  tr.eta0 = zc * (dc.c0_bar * t_s / dc.mu_bar) * (zp + 2.0 * (1.0 + dc.kappa_bar * xp));
  tr.feasible = tr.eta1 < 1.0;
  tr.radius = tr.feasible ? tr.eta0 / (1.0 - tr.eta1) : kInf;
  return tr;
}

double optimal_rho(const DualConstants& dc) {
  if (!(dc.mu_bar > 0.0))
    throw std::domain_error("optimal_rho: undefined at epsilon = 0 (dual not strongly convex)");
  return 1.0 / std::sqrt(dc.mu_bar * dc.ell_bar);
}

}  // namespace tvdradmm
