#include "tvdradmm/dradmm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "tvdradmm/errors.hpp"
#include "tvdradmm/parallel.hpp"

namespace tvdradmm {

namespace {

int g_workers = -1;  // -1: not yet initialized from the environment

int env_workers() {
  const char* v = std::getenv("TVDRADMM_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

}  // namespace

int worker_count() {
  if (g_workers < 1) g_workers = env_workers();
  return g_workers;
}

void set_worker_count(int n) { g_workers = n >= 1 ? n : 1; }

void parallel_for(int count, const std::function<void(int)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  workers = std::min(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      // static contiguous split: worker w owns [lo, hi)
      int lo = static_cast<int>(static_cast<long>(count) * w / workers);
      int hi = static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
      for (int i = lo; i < hi; ++i) fn(i);
    });
  for (auto& th : pool) th.join();
}

AdmmState make_cold_state(const Graph& g, int n) {
  AdmmState s;
  s.z = Eigen::VectorXd::Zero(static_cast<long>(g.num_slots()) * n);
  s.x = Eigen::VectorXd::Zero(static_cast<long>(g.n_nodes) * n);
  return s;
}

void solve_local(const TimeVaryingCost& f, double t, double quad, const Eigen::VectorXd& lin,
                 const SolverParams& p, Eigen::VectorXd& x, int node) {
  const int n = f.dim();
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad(n), step(n), trial(n);
  Eigen::MatrixXd hess(n, n);

  auto objective = [&](const Eigen::VectorXd& u) {
    return f.value(u, t) + 0.5 * quad * u.squaredNorm() + lin.dot(u);
  };

  double residual = 0.0;
  for (int it = 0; it <= p.inner_max_iter; ++it) {
    f.gradient(x, t, grad);
    grad += quad * x + lin;
    residual = grad.norm();
    if (residual <= p.inner_tol) return;
    if (it == p.inner_max_iter) break;

    f.hessian(x, t, hess);
    hess.diagonal().array() += quad;
    step = hess.llt().solve(-grad);

    // Armijo backtracking; the objective is strongly convex so the full
    // step is accepted almost always (always, for quadratic f).  The slack
    // term keeps the test meaningful once the predicted decrease drops
    // below the objective's rounding noise.
    double slope = grad.dot(step);
    double f0 = objective(x);
    double slack = 1e-14 * (1.0 + std::abs(f0));
    double s = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      trial = x + s * step;
      if (objective(trial) <= f0 + 1e-4 * s * slope + slack) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    x = trial;
  }
  throw SolverError("local Newton solve did not reach tolerance (node " + std::to_string(node) +
                        ", residual " + std::to_string(residual) + ")",
                    node, residual);
}

Eigen::VectorXd local_x_update(const TimeVaryingCost& f_i, double t,
                               const Eigen::VectorXd& z_sum, int d_i, const SolverParams& p,
                               const Eigen::VectorXd& x_warm, int node) {
  const double delta = p.delta();
  Eigen::VectorXd x = x_warm;
  Eigen::VectorXd lin = -delta * z_sum;
  solve_local(f_i, t, p.rho * delta * d_i, lin, p, x, node);
  return x;
}

Eigen::VectorXd z_update(const Eigen::VectorXd& z_ji, const Eigen::VectorXd& x_j,
                         const SolverParams& p) {
  const double delta = p.delta();
  return (1.0 - 2.0 * delta) * z_ji + (2.0 * delta * p.rho) * x_j;
}

Eigen::VectorXd recover_duals(const Eigen::VectorXd& x_i, const Eigen::VectorXd& z_ij,
                              const SolverParams& p) {
  return p.delta() * (z_ij - p.rho * x_i);
}

Eigen::VectorXd recover_duals_stacked(const Graph& g, int n, const AdmmState& s,
                                      const SolverParams& p) {
  return p.delta() * (s.z - p.rho * apply_A(g, n, s.x));
}

namespace {

void run_x_updates(const Graph& g, const std::vector<const TimeVaryingCost*>& costs, double t,
                   AdmmState& s, const SolverParams& p, int n) {
  const double delta = p.delta();
  parallel_for(g.n_nodes, [&](int i) {
    Eigen::VectorXd z_sum = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < g.degree[i]; ++k)
      z_sum += s.z.segment(static_cast<long>(g.slot_offset[i] + k) * n, n);
    Eigen::VectorXd x = s.x.segment(static_cast<long>(i) * n, n);
    Eigen::VectorXd lin = -delta * z_sum;
    solve_local(*costs[i], t, p.rho * delta * g.degree[i], lin, p, x, i);
    s.x.segment(static_cast<long>(i) * n, n) = x;
  });
}

void check_sizes(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                 const AdmmState& s, int n) {
  if (static_cast<int>(costs.size()) != g.n_nodes)
    throw std::invalid_argument("sweep: one cost per node required");
  for (const auto* c : costs)
    if (c->dim() != n) throw std::invalid_argument("sweep: cost dimension mismatch");
  if (s.z.size() != static_cast<long>(g.num_slots()) * n ||
      s.x.size() != static_cast<long>(g.n_nodes) * n)
    throw std::invalid_argument("sweep: state dimension mismatch");
}

}  // namespace

void distributed_sweep(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                       double t, AdmmState& s, const SolverParams& p,
                       std::vector<long>* sends) {
  const int n = costs.empty() ? 0 : costs[0]->dim();
  check_sizes(g, costs, s, n);

  run_x_updates(g, costs, t, s, p, n);

  // synchronous exchange: slot (i,j) is rewritten from the neighbor's
  // previous z_ji and fresh x_j, all reads against the pre-update z
  const double delta = p.delta();
  const double a = 1.0 - 2.0 * delta;
  const double b = 2.0 * delta * p.rho;
  Eigen::VectorXd z_new(s.z.size());
  parallel_for(g.num_slots(), [&](int slot) {
    z_new.segment(static_cast<long>(slot) * n, n) =
        a * s.z.segment(static_cast<long>(g.slot_reverse[slot]) * n, n) +
        b * s.x.segment(static_cast<long>(g.slot_dst[slot]) * n, n);
  });
  s.z.swap(z_new);

  if (sends) {
    if (static_cast<int>(sends->size()) != g.n_nodes) sends->assign(g.n_nodes, 0);
    for (int i = 0; i < g.n_nodes; ++i) (*sends)[i] += g.degree[i];
  }
}

CentralizedSweepResult centralized_sweep(const Graph& g,
                                         const std::vector<const TimeVaryingCost*>& costs,
                                         double t, AdmmState& s, const SolverParams& p) {
  const int n = costs.empty() ? 0 : costs[0]->dim();
  check_sizes(g, costs, s, n);

  // the stacked x-update min f(x) + (ρδ/2)‖Ax − z/ρ‖² separates by node into
  // exactly the local subproblems, so the primal half is shared; the dual
  // half below follows the splitting operators literally.
  run_x_updates(g, costs, t, s, p, n);

  CentralizedSweepResult r;
  const double delta = p.delta();
  Eigen::VectorXd Ax = apply_A(g, n, s.x);
  r.w = delta * (s.z - p.rho * Ax);
  Eigen::VectorXd refl = 2.0 * r.w - s.z;
  Eigen::VectorXd Prefl = apply_P(g, n, refl);
  r.y = -(refl + Prefl) / (2.0 * p.rho);
  r.u = 0.5 * (refl - Prefl);
  s.z += 2.0 * (r.u - r.w);
  return r;
}

}  // namespace tvdradmm
