#include "tvdradmm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tvdradmm/errors.hpp"

namespace tvdradmm {

Eigen::MatrixXd dense_edge_map(const Graph& g, int n) {
  const int s = g.num_slots();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<long>(s) * n,
                                            static_cast<long>(g.n_nodes) * n);
  for (int slot = 0; slot < s; ++slot)
    a.block(static_cast<long>(slot) * n, static_cast<long>(g.slot_src[slot]) * n, n, n)
        .setIdentity();
  return a;
}

Eigen::MatrixXd dense_exchange(const Graph& g, int n) {
  const int s = g.num_slots();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<long>(s) * n,
                                            static_cast<long>(s) * n);
  for (int slot = 0; slot < s; ++slot)
    p.block(static_cast<long>(slot) * n, static_cast<long>(g.slot_reverse[slot]) * n, n, n)
        .setIdentity();
  return p;
}

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n_nodes, g.n_nodes);
  for (int i = 0; i < g.n_nodes; ++i) lap(i, i) = g.degree[i];
  for (const auto& e : g.edges) {
    lap(e.first, e.second) -= 1.0;
    lap(e.second, e.first) -= 1.0;
  }
  return lap;
}

Eigen::VectorXd solve_consensus(const std::vector<const TimeVaryingCost*>& costs, double t,
                                double tol) {
  if (costs.empty()) throw std::invalid_argument("solve_consensus: no costs");
  const int n = costs[0]->dim();
  for (const auto* c : costs)
    if (c->dim() != n) throw std::invalid_argument("solve_consensus: dimension mismatch");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad(n), g_i(n), step(n), trial(n);
  Eigen::MatrixXd hess(n, n), h_i(n, n);

  auto aggregate_value = [&](const Eigen::VectorXd& u) {
    double v = 0.0;
    for (const auto* c : costs) v += c->value(u, t);
    return v;
  };

  const int max_iter = 100;
  double residual = 0.0;
  for (int it = 0; it <= max_iter; ++it) {
    grad.setZero();
    for (const auto* c : costs) {
      c->gradient(x, t, g_i);
      grad += g_i;
    }
    residual = grad.norm();
    if (residual <= tol) return x;
    if (it == max_iter) break;

    hess.setZero();
    for (const auto* c : costs) {
      c->hessian(x, t, h_i);
      hess += h_i;
    }
    step = hess.llt().solve(-grad);

    double slope = grad.dot(step);
    double f0 = aggregate_value(x);
    double slack = 1e-14 * (1.0 + std::abs(f0));
    double s = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      trial = x + s * step;
      if (aggregate_value(trial) <= f0 + 1e-4 * s * slope + slack) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    x = trial;
  }
  throw SolverError("solve_consensus: Newton stalled at residual " + std::to_string(residual),
                    -1, residual);
}

namespace {

// Reads the quadratic data (curvature blocks and linear term) of costs that
// are quadratic in x at the fixed time t.
void stacked_quadratic(const std::vector<const TimeVaryingCost*>& costs, double t,
                       Eigen::MatrixXd& hess, Eigen::VectorXd& lin) {
  const int n = costs[0]->dim();
  const int nn = static_cast<int>(costs.size());
  hess = Eigen::MatrixXd::Zero(static_cast<long>(nn) * n, static_cast<long>(nn) * n);
  lin.resize(static_cast<long>(nn) * n);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd h_i(n, n);
  Eigen::VectorXd g_i(n);
  for (int i = 0; i < nn; ++i) {
    costs[i]->hessian(zero, t, h_i);
    costs[i]->gradient(zero, t, g_i);
    hess.block(static_cast<long>(i) * n, static_cast<long>(i) * n, n, n) = h_i;
    lin.segment(static_cast<long>(i) * n, n) = g_i;
  }
}

}  // namespace

OracleSolution solve_regularized_saddle(const Graph& g,
                                        const std::vector<const TimeVaryingCost*>& costs,
                                        double t, double epsilon, double rho, double tol) {
  if (static_cast<int>(costs.size()) != g.n_nodes)
    throw std::invalid_argument("solve_regularized_saddle: one cost per node required");
  if (epsilon < 0.0)
    throw std::invalid_argument("solve_regularized_saddle: epsilon must be >= 0");
  const int n = costs[0]->dim();
  const int nn = g.n_nodes;

  OracleSolution sol;
  Eigen::VectorXd xbar = solve_consensus(costs, t, 1e-12);
  sol.x_star.resize(static_cast<long>(nn) * n);
  for (int i = 0; i < nn; ++i) sol.x_star.segment(static_cast<long>(i) * n, n) = xbar;

  Eigen::MatrixXd hess;
  Eigen::VectorXd lin;
  stacked_quadratic(costs, t, hess, lin);
  Eigen::MatrixXd a = dense_edge_map(g, n);
  Eigen::MatrixXd p = dense_exchange(g, n);

  if (epsilon > 0.0) {
    Eigen::MatrixXd lap = dense_laplacian(g);
    Eigen::MatrixXd kkt = hess;
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j)
        if (lap(i, j) != 0.0)
          kkt.block(static_cast<long>(i) * n, static_cast<long>(j) * n, n, n) +=
              (lap(i, j) / (2.0 * epsilon)) * Eigen::MatrixXd::Identity(n, n);
    sol.x_star_reg = kkt.llt().solve(-lin);
    Eigen::VectorXd ax = a * sol.x_star_reg;
    sol.w_star_reg = -(ax - p * ax) / (2.0 * epsilon);
    sol.dual_unique = true;
  } else {
    sol.x_star_reg = sol.x_star;
    // anti-symmetric w with A'w matching the stacked gradient, min-norm
    Eigen::VectorXd gradf = hess * sol.x_star + lin;
    const long sn = a.rows();
    Eigen::MatrixXd sys(a.cols() + sn, sn);
    sys.topRows(a.cols()) = a.transpose();
    sys.bottomRows(sn) = Eigen::MatrixXd::Identity(sn, sn) + p;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(a.cols() + sn);
    rhs.head(a.cols()) = gradf;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys);
    sol.w_star_reg = cod.solve(rhs);
    sol.dual_unique = cod.rank() == sn;
  }

  Eigen::VectorXd ax_reg = a * sol.x_star_reg;
  sol.z_star_reg = (1.0 + rho * epsilon) * sol.w_star_reg + rho * ax_reg;

  // stationarity: the stacked gradient must equal A'w*
  double res = (hess * sol.x_star_reg + lin - a.transpose() * sol.w_star_reg).norm();
  if (!(res <= tol))
    throw SolverError(
        "solve_regularized_saddle: stationarity residual " + std::to_string(res), -1, res);
  return sol;
}

GapTable regularization_gap(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                            double t, const std::vector<double>& eps_grid) {
  for (double e : eps_grid)
    if (e <= 0.0) throw std::invalid_argument("regularization_gap: grid must be positive");

  GapTable table;
  OracleSolution base = solve_regularized_saddle(g, costs, t, 0.0, 1.0);
  table.w_min_norm = base.w_star_reg;

  double psi = 0.0;
  for (double e : eps_grid) {
    OracleSolution s = solve_regularized_saddle(g, costs, t, e, 1.0);
    GapRow row;
    row.epsilon = e;
    row.gap = (s.w_star_reg - table.w_min_norm).norm();
    row.w_norm = s.w_star_reg.norm();
    table.rows.push_back(row);
    // smallest psi with gap <= (1 + psi*eps)*w_norm at this grid point
    if (row.w_norm > 0.0) psi = std::max(psi, (row.gap / row.w_norm - 1.0) / e);
  }
  table.psi_hat = std::max(0.0, psi);
  return table;
}

RefinedDual refine_regularized_dual(const Graph& g,
                                    const std::vector<const TimeVaryingCost*>& costs, double t,
                                    const SolverParams& p, int max_sweeps, double tol) {
  const int n = costs.empty() ? 0 : costs[0]->dim();
  AdmmState s = make_cold_state(g, n);
  RefinedDual out;
  Eigen::VectorXd w_prev = recover_duals_stacked(g, n, s, p);
  for (int k = 0; k < max_sweeps; ++k) {
    distributed_sweep(g, costs, t, s, p);
    Eigen::VectorXd w = recover_duals_stacked(g, n, s, p);
    out.sweeps = k + 1;
    out.last_change = (w - w_prev).norm();
    w_prev.swap(w);
    if (out.last_change <= tol) break;
  }
  out.x = s.x;
  out.w = w_prev;
  return out;
}

}  // namespace tvdradmm
