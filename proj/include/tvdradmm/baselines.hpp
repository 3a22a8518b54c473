#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvdradmm/costs.hpp"
#include "tvdradmm/dradmm.hpp"
#include "tvdradmm/graph.hpp"
#include "tvdradmm/pcsched.hpp"

namespace tvdradmm {

/**
 * The consensus-penalized surrogate the gradient baseline descends:
 *   F(x;t) = Σ_i f_i(x_i;t) + (1/2α)·xᵀ((I−W)⊗I_n)x
 * with W a doubly stochastic mixing matrix.  mu/ell bound the separable
 * part's curvature per node; lambda_max_iw is λ_max(I−W), so the penalized
 * smoothness is ell + lambda_max_iw/α and the constant step
 *   step = 2/(mu + ell + lambda_max_iw/α)
 * is the usual two-sided optimum.
 */
struct PenalizedProblem {
  Eigen::MatrixXd mixing;
  double alpha;
  double mu;
  double ell;
  double lambda_max_iw;

  double smoothness() const { return ell + lambda_max_iw / alpha; }
  double step() const { return 2.0 / (mu + smoothness()); }
};

/// Builds the penalized surrogate for a cost family: mu = min_i μ_i,
/// ell = max_i ℓ_i, λ_max(I−W) by dense symmetric eigensolve.
PenalizedProblem make_penalized_problem(const Eigen::MatrixXd& mixing,
                                        const std::vector<const TimeVaryingCost*>& costs,
                                        double alpha);

/// Multiplier-method state: node-stacked primal x and one multiplier block
/// per node for the constraint ((I−W)⊗I_n)x = 0.
struct DualDecompState {
  Eigen::VectorXd x;
  Eigen::VectorXd w;
};

/**
 * n_iters gradient steps on the penalized objective at time t, in place:
 *   x ← x − step·[∇f(x;t) + (1/α)((I−W)⊗I_n)x].
 * One neighbor exchange per iteration (each node sends x_i once per
 * neighbor); sends accounts them like the sweep counter.  Throws
 * SolverError if ‖x‖ exceeds 1e8 (divergence guard).
 */
void pc_gradient_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                       double t, const PenalizedProblem& prob, int n_iters, Eigen::VectorXd& x,
                       std::vector<long>* sends = nullptr);

/**
 * n_iters multiplier-method iterations at time t, in place:
 *   x_i ← argmin f_i(x_i;t) + ⟨((I−W)w)_i, x_i⟩   (per-node Newton)
 *   w ← w + α_d·((I−W)⊗I_n)x.
 * The packet exchanged per neighbor per iteration carries (x_j, w_j), so
 * sends counts one message per neighbor per iteration.  Divergence guard
 * as in pc_gradient_phase, on both stacks.
 */
void pc_dualdecomp_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                         double t, const Eigen::MatrixXd& mixing, double alpha_d, int n_iters,
                         const SolverParams& p, DualDecompState& s,
                         std::vector<long>* sends = nullptr);

/**
 * Prediction-correction driver around pc_gradient_phase, mirroring run():
 * the same per-node Taylor surrogate feeds the prediction phase, and the
 * iterate chains through both phases and across periods.  On SolverError
 * the trace is truncated and annotated (divergent step sizes are an
 * expected outcome during tuning).
 */
PcTrace run_pc_gradient(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                        const Eigen::MatrixXd& mixing, double alpha, const PcConfig& cfg,
                        const Eigen::VectorXd* x0 = nullptr);

/// Prediction-correction driver around pc_dualdecomp_phase; (x, w) chain
/// across phases and periods.  Trace w holds the node-stacked multipliers.
PcTrace run_dual_decomp(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                        const Eigen::MatrixXd& mixing, double alpha_d, const PcConfig& cfg,
                        const SolverParams& p, const Eigen::VectorXd* x0 = nullptr);

}  // namespace tvdradmm
