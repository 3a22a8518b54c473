#pragma once

namespace tvdradmm {

/**
 * Constants of the regularized dual problem on a given topology:
 *   mu_bar    = ε                  (dual strong convexity)
 *   ell_bar   = ε + d_max/μ        (dual smoothness)
 *   kappa_bar = 1 + d_max/(μ·ε)    (dual condition number, ∞ at ε = 0)
 *   c0_bar    = √d_max · C₀/μ      (dual drift bound from the primal drift C₀)
 *   norm_A    = √d_max             (operator norm of the stacked edge map)
 */
struct DualConstants {
  double mu_bar;
  double ell_bar;
  double kappa_bar;
  double c0_bar;
  double norm_A;

  /// False at ε = 0, where the dual loses strong convexity and the
  /// fixed-sweep contraction argument collapses.
  bool contractive() const { return mu_bar > 0.0; }
};

/// Per-sweep contraction factor λ and overshoot ω of the Peaceman-Rachford
/// map on the regularized dual, with the sweep-count envelopes ζ and ξ.
struct RateConstants {
  double lambda;
  double omega;

  /// ζ(0) = 1, ζ(ℓ) = ω·λ^ℓ — the worst-case gain of ℓ sweeps.
  double zeta(int sweeps) const;
  /// ξ(0) = 0, ξ(ℓ) = 1 + ζ(ℓ) — the companion envelope for the
  /// prediction-phase error terms.
  double xi(int sweeps) const;
};

/// Per-step error recursion coefficients and the asymptotic tracking radius
/// they imply: limsup ‖w_k − w*(t_k)‖ ≤ eta0/(1−eta1) whenever eta1 < 1.
/// Infeasible schedules carry radius = +∞ rather than an error so sweeps
/// can chart the feasibility frontier.
struct TrackingRadius {
  double eta0;
  double eta1;
  double radius;
  bool feasible;
};

/// Assembles DualConstants from the graph's max degree, the primal strong
/// convexity μ, the primal drift bound C₀, and the regularization ε ≥ 0.
DualConstants dual_constants(int d_max, double mu, double c0, double epsilon);

/// λ and ω for penalty ρ > 0:
///   λ = max(|1−ρ·mu_bar|, |1−ρ·ell_bar|) over their resolvent denominators,
///   ω = (1+ρ·ell_bar)/(1+ρ·mu_bar).
RateConstants prs_rate(double rho, const DualConstants& dc);

/// Evaluates the error recursion for a schedule of n_pred prediction and
/// n_corr correction sweeps at sampling interval t_s:
///   eta1 = ζ(n_corr)·[ζ(n_pred) + 2·kappa_bar·ξ(n_pred)]
///   eta0 = ζ(n_corr)·(c0_bar·t_s/mu_bar)·[ζ(n_pred) + 2(1 + kappa_bar·ξ(n_pred))]
TrackingRadius tracking_radius(int n_pred, int n_corr, double t_s, const DualConstants& dc,
                               double rho);

/// The penalty balancing the two resolvent factors, ρ = 1/√(mu_bar·ell_bar);
/// it minimizes λ and gives ω = √kappa_bar.  Throws std::domain_error when
/// mu_bar = 0 (ε = 0), where no finite minimizer exists.
double optimal_rho(const DualConstants& dc);

}  // namespace tvdradmm
