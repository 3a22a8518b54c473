#include "tvdradmm/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tvdradmm/errors.hpp"
#include "tvdradmm/parallel.hpp"

namespace tvdradmm {

namespace {

constexpr double kDivergenceCap = 1e8;

void check_family(const Graph& g, const std::vector<const TimeVaryingCost*>& costs) {
  if (static_cast<int>(costs.size()) != g.n_nodes)
    throw std::invalid_argument("baseline: one cost per node required");
  for (const auto* c : costs)
    if (c->dim() != costs[0]->dim())
      throw std::invalid_argument("baseline: cost dimension mismatch");
}

// (I−W)⊗I_n applied blockwise to a node stack.
Eigen::VectorXd apply_iw(const Eigen::MatrixXd& mixing, int n, const Eigen::VectorXd& v) {
  return v - apply_mixing(mixing, n, v);
}

}  // namespace

PenalizedProblem make_penalized_problem(const Eigen::MatrixXd& mixing,
                                        const std::vector<const TimeVaryingCost*>& costs,
                                        double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("penalized problem: alpha must be positive");
  if (costs.empty()) throw std::invalid_argument("penalized problem: no costs");
  PenalizedProblem prob;
  prob.mixing = mixing;
  prob.alpha = alpha;
  prob.mu = costs[0]->mu();
  prob.ell = costs[0]->ell();
  for (const auto* c : costs) {
    prob.mu = std::min(prob.mu, c->mu());
    prob.ell = std::max(prob.ell, c->ell());
  }
  Eigen::MatrixXd iw = Eigen::MatrixXd::Identity(mixing.rows(), mixing.cols()) - mixing;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(iw);
  prob.lambda_max_iw = es.eigenvalues().maxCoeff();
  return prob;
}

void pc_gradient_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                       double t, const PenalizedProblem& prob, int n_iters, Eigen::VectorXd& x,
                       std::vector<long>* sends) {
  check_family(g, costs);
  const int n = costs[0]->dim();
  if (x.size() != static_cast<long>(g.n_nodes) * n)
    throw std::invalid_argument("pc_gradient_phase: x dimension mismatch");

  const double step = prob.step();
  Eigen::VectorXd grad(x.size());
  for (int it = 0; it < n_iters; ++it) {
    parallel_for(g.n_nodes, [&](int i) {
      Eigen::VectorXd gi(n);
      costs[i]->gradient(x.segment(static_cast<long>(i) * n, n), t, gi);
      grad.segment(static_cast<long>(i) * n, n) = gi;
    });
    grad += apply_iw(prob.mixing, n, x) / prob.alpha;
    x -= step * grad;
    if (!(x.norm() <= kDivergenceCap))
      throw SolverError("penalized gradient diverged (alpha = " + std::to_string(prob.alpha) +
                            ")",
                        -1, x.norm());
    if (sends)
      for (int i = 0; i < g.n_nodes; ++i) (*sends)[i] += g.degree[i];
  }
}

void pc_dualdecomp_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                         double t, const Eigen::MatrixXd& mixing, double alpha_d, int n_iters,
                         const SolverParams& p, DualDecompState& s,
                         std::vector<long>* sends) {
  check_family(g, costs);
  if (!(alpha_d > 0.0)) throw std::invalid_argument("dual decomposition: alpha_d must be > 0");
  const int n = costs[0]->dim();
  if (s.x.size() != static_cast<long>(g.n_nodes) * n ||
      s.w.size() != static_cast<long>(g.n_nodes) * n)
    throw std::invalid_argument("pc_dualdecomp_phase: state dimension mismatch");

  for (int it = 0; it < n_iters; ++it) {
    // (I−W) is symmetric, so the x-subproblem's linear term is (I−W)w blockwise
    Eigen::VectorXd iww = apply_iw(mixing, n, s.w);
    parallel_for(g.n_nodes, [&](int i) {
      Eigen::VectorXd xi = s.x.segment(static_cast<long>(i) * n, n);
      solve_local(*costs[i], t, 0.0, iww.segment(static_cast<long>(i) * n, n), p, xi, i);
      s.x.segment(static_cast<long>(i) * n, n) = xi;
    });
    s.w += alpha_d * apply_iw(mixing, n, s.x);
    if (!(s.x.norm() <= kDivergenceCap) || !(s.w.norm() <= kDivergenceCap))
      throw SolverError("dual decomposition diverged (alpha_d = " + std::to_string(alpha_d) +
                            ")",
                        -1, std::max(s.x.norm(), s.w.norm()));
    if (sends)
      for (int i = 0; i < g.n_nodes; ++i) (*sends)[i] += g.degree[i];
  }
}

namespace {

// Shared prediction-correction scaffolding for the two baselines: builds the
// per-node surrogate family at (x_k, t_k), runs the phase callback on the
// surrogate then on the observed costs, and records the trace.
template <typename Phase>
PcTrace drive(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
              const PcConfig& cfg, const Eigen::VectorXd* x0, Eigen::VectorXd& x,
              Phase&& phase, const std::function<void(PcTrace&)>& record_extra) {
  validate(cfg);
  const int n = costs.empty() ? 0 : costs[0]->dim();
  x = Eigen::VectorXd::Zero(static_cast<long>(g.n_nodes) * n);
  if (x0) {
    if (x0->size() != x.size()) throw std::invalid_argument("baseline: x0 dimension mismatch");
    x = *x0;
  }

  PcTrace trace;
  for (int k = 0; k < cfg.horizon; ++k) {
    double t_k = k * cfg.t_s;
    double t_next = (k + 1) * cfg.t_s;
    std::vector<long> sends(g.n_nodes, 0);
    try {
      std::vector<QuadraticCost> surrogates;
      surrogates.reserve(costs.size());
      for (size_t i = 0; i < costs.size(); ++i)
        surrogates.push_back(build_prediction(
            *costs[i], x.segment(static_cast<long>(i) * n, n), t_k, cfg.t_s));
      std::vector<const TimeVaryingCost*> ptrs;
      ptrs.reserve(surrogates.size());
      for (const auto& q : surrogates) ptrs.push_back(&q);

      phase(ptrs, t_k, cfg.n_pred, &sends);
      trace.x_hat.push_back(x);
      phase(costs, t_next, cfg.n_corr, &sends);
    } catch (const SolverError& e) {
      trace.failed = true;
      trace.error = e.what();
      if (trace.x_hat.size() > trace.x.size()) trace.x_hat.pop_back();
      break;
    }
    trace.x.push_back(x);
    record_extra(trace);
    trace.sends.push_back(std::move(sends));
  }
  return trace;
}

}  // namespace

PcTrace run_pc_gradient(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                        const Eigen::MatrixXd& mixing, double alpha, const PcConfig& cfg,
                        const Eigen::VectorXd* x0) {
  check_family(g, costs);
  PenalizedProblem prob = make_penalized_problem(mixing, costs, alpha);
  Eigen::VectorXd x;
  return drive(
      g, costs, cfg, x0, x,
      [&](const std::vector<const TimeVaryingCost*>& family, double t, int iters,
          std::vector<long>* sends) { pc_gradient_phase(g, family, t, prob, iters, x, sends); },
      [](PcTrace&) {});
}

PcTrace run_dual_decomp(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                        const Eigen::MatrixXd& mixing, double alpha_d, const PcConfig& cfg,
                        const SolverParams& p, const Eigen::VectorXd* x0) {
  check_family(g, costs);
  const int n = costs[0]->dim();
  DualDecompState s;
  s.w = Eigen::VectorXd::Zero(static_cast<long>(g.n_nodes) * n);
  PcTrace trace = drive(
      g, costs, cfg, x0, s.x,
      [&](const std::vector<const TimeVaryingCost*>& family, double t, int iters,
          std::vector<long>* sends) {
        pc_dualdecomp_phase(g, family, t, mixing, alpha_d, iters, p, s, sends);
      },
      [&](PcTrace& tr) { tr.w.push_back(s.w); });
  return trace;
}

}  // namespace tvdradmm
