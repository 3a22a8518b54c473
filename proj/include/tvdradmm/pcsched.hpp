#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tvdradmm/costs.hpp"
#include "tvdradmm/dradmm.hpp"
#include "tvdradmm/graph.hpp"

namespace tvdradmm {

/// Sampling schedule: n_pred sweeps on the extrapolated problem, then
/// n_corr sweeps on the observed problem, every t_s seconds, for horizon
/// sampled instants.  At least one of the sweep counts must be positive.
struct PcConfig {
  int n_pred = 5;
  int n_corr = 5;
  double t_s = 0.1;
  int horizon = 1000;
};

/**
 * Per-period record of a run.  Entry k covers sampling period k: the
 * prediction output x̂ computed from the state at t_k, then the corrected
 * iterate x, slot state z, and recovered duals w at t_{k+1} = (k+1)·t_s,
 * plus each node's message count over the period's sweeps.  Baseline
 * drivers reuse the type, leaving fields they do not produce empty (the
 * multiplier-based baseline stores its node-stacked multipliers in w).
 * If a solver error interrupts the run, the trace is truncated at the
 * failed period and annotated instead of throwing.
 */
struct PcTrace {
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> z;
  std::vector<Eigen::VectorXd> x_hat;
  std::vector<Eigen::VectorXd> w;
  std::vector<std::vector<long>> sends;
  bool failed = false;
  std::string error;

  int steps() const { return static_cast<int>(x.size()); }
};

/**
 * Prediction phase: every node builds its quadratic Taylor surrogate of
 * f_i at (x_{i,k}, t_k) for the next instant, then n_pred distributed
 * sweeps run on the surrogate problem warm-started from the state's z.
 * n_pred = 0 leaves the state untouched.
 */
void predict_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                   double t_k, AdmmState& s, const PcConfig& cfg, const SolverParams& p,
                   std::vector<long>* sends = nullptr);

/// Correction phase: n_corr distributed sweeps on the observed costs at
/// t_next, warm-started from the predicted state.  n_corr = 0 passes the
/// state through.
void correct_phase(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
                   double t_next, AdmmState& s, const PcConfig& cfg, const SolverParams& p,
                   std::vector<long>* sends = nullptr);

/**
 * Full prediction-correction run from x = x0 (zero when null) and z = 0.
 * The z leaving each prediction enters the correction unchanged, and the
 * corrected z carries over to the next period's prediction.
 */
PcTrace run(const Graph& g, const std::vector<const TimeVaryingCost*>& costs,
            const PcConfig& cfg, const SolverParams& p,
            const Eigen::VectorXd* x0 = nullptr);

/// Validates a PcConfig (positive t_s, non-negative counts with at least
/// one positive, horizon ≥ 0); throws std::invalid_argument otherwise.
void validate(const PcConfig& cfg);

}  // namespace tvdradmm
