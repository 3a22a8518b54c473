#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvdradmm/costs.hpp"
#include "tvdradmm/graph.hpp"

namespace tvdradmm {

/**
 * Parameters of the dual-regularized ADMM.  epsilon strengthens the dual
 * (epsilon-strong convexity); rho is the Peaceman-Rachford penalty; the
 * derived delta = 1/(1+epsilon*rho) appears throughout the recursion.
 * The local subproblems are solved by damped Newton to inner_tol.
 */
struct SolverParams {
  double epsilon = 1e-3;
  double rho = 1.0;
  double inner_tol = 1e-10;
  int inner_max_iter = 50;

  double delta() const { return 1.0 / (1.0 + epsilon * rho); }
};

/// Solver state: one z block per directed edge slot, plus the latest local
/// minimizers (also the warm starts for the next inner Newton solves).
struct AdmmState {
  Eigen::VectorXd z;  // 2|E| blocks of dimension n
  Eigen::VectorXd x;  // N blocks of dimension n
};

/// Zero-initialized state (the cold start mandated for step 0).
AdmmState make_cold_state(const Graph& g, int n);

/**
 * Solves the strongly convex local subproblem
 *   min_x f(x; t) + (quad/2)‖x‖² + ⟨lin, x⟩
 * by damped Newton from warm start x (overwritten).  node labels errors.
 * Throws SolverError if the gradient norm is still above p.inner_tol after
 * p.inner_max_iter iterations.
 */
void solve_local(const TimeVaryingCost& f, double t, double quad, const Eigen::VectorXd& lin,
                 const SolverParams& p, Eigen::VectorXd& x, int node);

/// The per-node primal update: minimizes
///   f_i(x) + (rho·delta·d_i/2)‖x‖² − delta·⟨x, z_sum⟩
/// where z_sum aggregates the node's incoming auxiliary blocks.
Eigen::VectorXd local_x_update(const TimeVaryingCost& f_i, double t,
                               const Eigen::VectorXd& z_sum, int d_i, const SolverParams& p,
                               const Eigen::VectorXd& x_warm, int node = -1);

/// The slot recursion, evaluated at node i for slot (i,j) from the
/// neighbor's message: z_ij ← (1−2δ)·z_ji + 2δρ·x_j.
Eigen::VectorXd z_update(const Eigen::VectorXd& z_ji, const Eigen::VectorXd& x_j,
                         const SolverParams& p);

/// Local dual recovery, no communication: w_ij = δ(z_ij − ρ·x_i).
Eigen::VectorXd recover_duals(const Eigen::VectorXd& x_i, const Eigen::VectorXd& z_ij,
                              const SolverParams& p);

/// Stacked dual recovery over all slots: w = δ(z − ρAx).
Eigen::VectorXd recover_duals_stacked(const Graph& g, int n, const AdmmState& s,
                                      const SolverParams& p);

/**
 * One synchronous iteration of the message-passing form: every node solves
 * its local problem from the current z, exchanges (x_i, z_ij) with its
 * neighbors, then every slot applies z_update.  All x-updates complete
 * before any z-update reads neighbor values.  If sends is non-null, each
 * node's entry is incremented by its degree (one packet per neighbor).
 */
void distributed_sweep(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                       double t, AdmmState& s, const SolverParams& p,
                       std::vector<long>* sends = nullptr);

/// Diagnostic by-products of a centralized sweep (see centralized_sweep).
struct CentralizedSweepResult {
  Eigen::VectorXd w;  // δ(z − ρAx) after the x-update
  Eigen::VectorXd y;  // −(1/2ρ)(I+P)(2w−z)
  Eigen::VectorXd u;  // ½(I−P)(2w−z)
};

/**
 * One iteration of the stacked Peaceman-Rachford form:
 *   x ← argmin f(x) + (ρδ/2)‖Ax − z/ρ‖²,  w = δ(z−ρAx),
 *   y = −(1/2ρ)(I+P)(2w−z),  u = ½(I−P)(2w−z),  z ← z + 2(u−w).
 * Mathematically identical to distributed_sweep; kept as an independent
 * code path so the two serve as cross-checks of each other.
 */
CentralizedSweepResult centralized_sweep(const Graph& g,
                                         const std::vector<const TimeVaryingCost*>& costs,
                                         double t, AdmmState& s, const SolverParams& p);

}  // namespace tvdradmm
