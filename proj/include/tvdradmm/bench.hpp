#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tvdradmm/costs.hpp"
#include "tvdradmm/dradmm.hpp"
#include "tvdradmm/graph.hpp"
#include "tvdradmm/pcsched.hpp"

namespace tvdradmm {

/// Parsed `key = value` configuration with [graph], [cost], [algo] and
/// [output] sections.  Loading validates presence of every required key,
/// rejects unknown sections/keys, and range-checks values (ConfigError).
struct RunConfig {
  // [graph]
  int n_nodes = 25;
  double radius = 0.35;
  std::uint64_t graph_seed = 1;
  // [cost]
  double amp = 2.5;
  double nu = 0.039269908169872414;
  std::uint64_t cost_seed = 1;
  // [algo]
  std::string algorithm = "all";  // dradmm | pc_gradient | dual_decomp | all
  double epsilon = 1e-3;
  double rho = 1.06e4;
  int n_pred = 5;
  int n_corr = 5;
  double t_s = 0.1;
  int horizon = 1000;
  double alpha = 0.1;    // gradient baseline penalty (optional key)
  double alpha_d = 0.1;  // multiplier step (optional key)
  // [output]
  std::string output_dir = "out";
};

RunConfig load_config(const std::string& path);

/// The graph and cost realization shared by every algorithm in a config:
/// geometric graph, per-node tracking costs, and the Metropolis mixing
/// matrix the baselines use.
struct Realization {
  Graph graph;
  std::vector<LogisticTrackingCost> costs;
  Eigen::MatrixXd mixing;

  std::vector<const TimeVaryingCost*> cost_ptrs() const;
};

Realization build_realization(const RunConfig& cfg);

/// Instantaneous aggregate minimizers x̄*(t) for t = t_s, 2t_s, …, K·t_s
/// (one per trace entry), shared across algorithm runs.
std::vector<Eigen::VectorXd> consensus_trajectory(
    const std::vector<const TimeVaryingCost*>& costs, int horizon, double t_s,
    double tol = 1e-12);

/// One output row per sampling period.  tracking_error is ‖x_k − x*(t_k)‖/N
/// against the replicated aggregate minimizer; consensus_distance is the
/// norm of x_k minus its node-mean replicated; dual_distance stays NaN for
/// this cost family (no closed-form dual reference exists for it);
/// comm_count is the period's total message count over all nodes.
struct MetricsRow {
  int k;
  double t_k;
  double tracking_error;
  double consensus_distance;
  double dual_distance;
  long comm_count;
};

std::vector<MetricsRow> compute_metrics(const Graph& g, const PcTrace& trace,
                                        const std::vector<Eigen::VectorXd>& x_star,
                                        double t_s);

/// Median of the last 20% of the series (at least one element).
double tail_median(const std::vector<double>& series);

std::vector<double> tracking_series(const std::vector<MetricsRow>& rows);
std::vector<double> consensus_series(const std::vector<MetricsRow>& rows);

/// CSV writers: comma separator, '.' decimal, shortest round-trip doubles,
/// LF endings, header first.  Throw IoError on any stream failure.
void write_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows);
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Minimal native SVG chart: one polyline per series over x = 1..len,
/// y = log10(value); non-finite or non-positive values are skipped.
void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::vector<std::string>& series_names,
                          const std::vector<std::vector<double>>& series);

/// Grid search for one baseline's step parameter over a 10-point log grid
/// in [1e-3, 1]; objective is the tail median of the tracking error, with
/// diverged runs scored +inf.
struct TuneResult {
  double best_alpha = 0.0;
  double best_tail = 0.0;
  std::vector<std::pair<double, double>> grid;  // (alpha, tail error)
};

TuneResult tune_baseline(const std::string& algorithm, const Realization& real,
                         const PcConfig& cfg, const SolverParams& params,
                         const std::vector<Eigen::VectorXd>& x_star);

/// Command bodies behind the CLI.  They throw ConfigError / SolverError /
/// IoError; the executable maps those to exit codes 2 / 3 / 4.
void cmd_run(const std::string& config_path, std::ostream& out);
void cmd_compare(const std::string& config_path, std::ostream& out);
void cmd_bounds(double epsilon, double rho, int n_pred, int n_corr, double t_s, int d_max,
                double mu, double c0, std::ostream& out);
void cmd_sweep(const std::string& param, const std::vector<double>& values,
               const std::string& config_path, std::ostream& out);
void cmd_tune(const std::string& config_path, std::ostream& out);

}  // namespace tvdradmm
