#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvdradmm/costs.hpp"
#include "tvdradmm/dradmm.hpp"
#include "tvdradmm/graph.hpp"

namespace tvdradmm {

/// Dense matrix of the stacked edge map: (Ax) on slot (i,j) is x_i.
/// Shape (num_slots·n) × (n_nodes·n).  For reference computations only.
Eigen::MatrixXd dense_edge_map(const Graph& g, int n);

/// Dense permutation exchanging slot (i,j) with slot (j,i), shape
/// (num_slots·n) square.
Eigen::MatrixXd dense_exchange(const Graph& g, int n);

/// Graph Laplacian (degree minus adjacency), n_nodes × n_nodes.
Eigen::MatrixXd dense_laplacian(const Graph& g);

/**
 * Minimizes the aggregate cost Σ_i f_i(x̄; t) over a single block by damped
 * Newton, to gradient norm ≤ tol.  This is the instantaneous optimum that
 * tracking errors are measured against.  Throws SolverError on failure.
 */
Eigen::VectorXd solve_consensus(const std::vector<const TimeVaryingCost*>& costs, double t,
                                double tol = 1e-12);

/**
 * Ground truth at one time instant.  x_star is the aggregate minimizer
 * replicated over nodes.  The remaining fields solve the ε-regularized
 * saddle: x_star_reg the relaxed primal, w_star_reg the (anti-symmetric)
 * dual, z_star_reg the fixed point of the splitting recursion at penalty ρ.
 * At ε = 0 the dual solution set can be an affine subspace (any cycle in
 * the graph adds a null direction); then w_star_reg is its minimum-norm
 * element and dual_unique is false.
 */
struct OracleSolution {
  Eigen::VectorXd x_star;
  Eigen::VectorXd x_star_reg;
  Eigen::VectorXd w_star_reg;
  Eigen::VectorXd z_star_reg;
  bool dual_unique = true;
};

/**
 * Solves the regularized saddle exactly for costs that are quadratic in x
 * at time t (curvature and linear term are read off the cost's Hessian and
 * its gradient at zero).  For ε > 0:
 *   [H + (1/2ε)·(L ⊗ I_n)] x* = −g,    w* = −(1/2ε)(I−P)Ax*,
 *   z* = (1+ρε)w* + ρAx*.
 * For ε = 0, x* is the replicated consensus point and w* the minimum-norm
 * solution of Aᵀw = ∇f(x*) subject to (I+P)w = 0, via least squares.
 * Throws SolverError if the stationarity residual exceeds tol.
 */
OracleSolution solve_regularized_saddle(const Graph& g,
                                        const std::vector<const TimeVaryingCost*>& costs,
                                        double t, double epsilon, double rho,
                                        double tol = 1e-10);

/// One grid point of the regularization study: the distance from w*(ε) to
/// the minimum-norm unregularized dual, and ‖w*(ε)‖ itself.
struct GapRow {
  double epsilon;
  double gap;
  double w_norm;
};

/// Gap table over an ε grid plus the smallest ψ̂ ≥ 0 making
/// gap(ε) ≤ (1 + ψ̂·ε)·‖w*(ε)‖ hold at every grid point.
struct GapTable {
  std::vector<GapRow> rows;
  double psi_hat = 0.0;
  Eigen::VectorXd w_min_norm;
};

GapTable regularization_gap(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                            double t, const std::vector<double>& eps_grid);

/// Reference dual obtained the slow way: distributed sweeps on the frozen
/// costs until the recovered duals move less than tol, capped at
/// max_sweeps.  Usable for any cost (the closed-form oracle is not);
/// cross-validated against it on quadratic instances.
struct RefinedDual {
  Eigen::VectorXd x;
  Eigen::VectorXd w;
  int sweeps = 0;
  double last_change = 0.0;
};

RefinedDual refine_regularized_dual(const Graph& g,
                                    const std::vector<const TimeVaryingCost*>& costs, double t,
                                    const SolverParams& p, int max_sweeps = 10000,
                                    double tol = 1e-12);

}  // namespace tvdradmm
