#include "tvdradmm/pcsched.hpp"

#include <stdexcept>

#include "tvdradmm/errors.hpp"

namespace tvdradmm {

void validate(const PcConfig& cfg) {
  if (cfg.n_pred < 0 || cfg.n_corr < 0)
    throw std::invalid_argument("pc config: sweep counts must be >= 0");
  if (cfg.n_pred == 0 && cfg.n_corr == 0)
    throw std::invalid_argument("pc config: at least one of n_pred, n_corr must be positive");
  if (!(cfg.t_s > 0.0)) throw std::invalid_argument("pc config: t_s must be positive");
  if (cfg.horizon < 0) throw std::invalid_argument("pc config: horizon must be >= 0");
}

void predict_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                   double t_k, AdmmState& s, const PcConfig& cfg, const SolverParams& p,
                   std::vector<long>* sends) {
  if (cfg.n_pred == 0) return;
  const int n = costs.empty() ? 0 : costs[0]->dim();

  std::vector<QuadraticCost> surrogates;
  surrogates.reserve(costs.size());
  for (size_t i = 0; i < costs.size(); ++i)
    surrogates.push_back(
        build_prediction(*costs[i], s.x.segment(static_cast<long>(i) * n, n), t_k, cfg.t_s));
  std::vector<const TimeVaryingCost*> ptrs;
  ptrs.reserve(surrogates.size());
  for (const auto& q : surrogates) ptrs.push_back(&q);

  // the surrogates are frozen in time; the sweep's t argument is inert
  for (int sweep = 0; sweep < cfg.n_pred; ++sweep)
    distributed_sweep(g, ptrs, t_k, s, p, sends);
}

void correct_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                   double t_next, AdmmState& s, const PcConfig& cfg, const SolverParams& p,
                   std::vector<long>* sends) {
  for (int sweep = 0; sweep < cfg.n_corr; ++sweep)
    distributed_sweep(g, costs, t_next, s, p, sends);
}

PcTrace run(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
            const PcConfig& cfg, const SolverParams& p, const Eigen::VectorXd* x0) {
  validate(cfg);
  const int n = costs.empty() ? 0 : costs[0]->dim();

  AdmmState s = make_cold_state(g, n);
  if (x0) {
    if (x0->size() != s.x.size())
      throw std::invalid_argument("run: x0 dimension mismatch");
    s.x = *x0;
  }

  PcTrace trace;
  trace.x.reserve(cfg.horizon);
  for (int k = 0; k < cfg.horizon; ++k) {
    double t_k = k * cfg.t_s;
    double t_next = (k + 1) * cfg.t_s;
    std::vector<long> sends(g.n_nodes, 0);
    try {
      predict_phase(g, costs, t_k, s, cfg, p, &sends);
      trace.x_hat.push_back(s.x);
      correct_phase(g, costs, t_next, s, cfg, p, &sends);
    } catch (const SolverError& e) {
      trace.failed = true;
      trace.error = e.what();
      if (trace.x_hat.size() > trace.x.size()) trace.x_hat.pop_back();
      break;
    }
    trace.x.push_back(s.x);
    trace.z.push_back(s.z);
    trace.w.push_back(recover_duals_stacked(g, n, s, p));
    trace.sends.push_back(std::move(sends));
  }
  return trace;
}

}  // namespace tvdradmm
