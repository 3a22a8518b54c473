// End-to-end acceptance checks for the tracking solver.  Each criterion
// prints one PASS/FAIL line; the exit code is the number of failures.
//
// Criteria 2-4 read the dual iterate off centralized_sweep, which pairs the
// fresh x with the pre-update z: that pairing satisfies the stationarity
// identity grad f(x) = A^T w the rate and error-link statements are about.
// Criterion 1 establishes that the centralized and distributed forms are
// interchangeable, so the remaining criteria may use either.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "support.hpp"
#include "tvdradmm/baselines.hpp"
#include "tvdradmm/bench.hpp"
#include "tvdradmm/bounds.hpp"
#include "tvdradmm/costs.hpp"
#include "tvdradmm/dradmm.hpp"
#include "tvdradmm/graph.hpp"
#include "tvdradmm/oracle.hpp"
#include "tvdradmm/pcsched.hpp"
#include "tvdradmm/random.hpp"

using namespace tvdradmm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome criterion_equivalence() {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    int nn = 2 + static_cast<int>(rng() % 7);
    int dim = 1 + static_cast<int>(rng() % 3);
    Graph g = make_graph(nn, testutil::random_connected_edges(nn, rng));
    auto costs = testutil::random_quadratics(nn, dim, rng);
    auto ptrs = cost_pointers(costs);
    SolverParams p;
    p.epsilon = uniform(rng, 0.0, 1.0);
    p.rho = uniform(rng, 0.1, 10.0);

    AdmmState sd = make_cold_state(g, dim);
    for (long i = 0; i < sd.z.size(); ++i) sd.z(i) = gauss(rng);
    AdmmState sc = sd;
    for (int it = 0; it < 20; ++it) {
      distributed_sweep(g, ptrs, 0.0, sd, p);
      centralized_sweep(g, ptrs, 0.0, sc, p);
      worst = std::max(worst, (sd.z - sc.z).lpNorm<Eigen::Infinity>());
    }
  }
  Outcome o;
  o.pass = worst < 1e-9;
  o.detail = "50 instances, max z gap " + num(worst);
  return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion_dual_rate() {
  std::mt19937_64 rng(7);
  Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 3}});
  auto costs = testutil::random_quadratics(5, 2, rng);
  auto ptrs = cost_pointers(costs);
  const double eps = 0.5, rho = 0.8;
  double mu = costs[0].mu();
  for (const auto& c : costs) mu = std::min(mu, c.mu());

  OracleSolution sol = solve_regularized_saddle(g, ptrs, 0.0, eps, rho);
  double lambda = prs_rate(rho, dual_constants(g.max_degree(), mu, 0.0, eps)).lambda;

  SolverParams p;
  p.epsilon = eps;
  p.rho = rho;
  AdmmState s = make_cold_state(g, 2);
  double prev = sol.w_star_reg.norm();  // cold start carries w = 0
  double worst_ratio = 0.0;
  int measured = 0;
  for (int l = 0; l < 400 && prev >= 1e-10; ++l) {
    CentralizedSweepResult r = centralized_sweep(g, ptrs, 0.0, s, p);
    double err = (r.w - sol.w_star_reg).norm();
    if (prev >= 1e-13) {
      worst_ratio = std::max(worst_ratio, err / prev);
      ++measured;
    }
    prev = err;
  }
  Outcome o;
  o.pass = measured >= 20 && worst_ratio <= lambda + 1e-6;
  o.detail = "worst dual contraction ratio " + num(worst_ratio) + " vs rate " +
             num(lambda) + " over " + std::to_string(measured) + " iterations";
  return o;
}

// ------------------------------------------------------- criteria 3 and 4

struct TrackData {
  bool feasible = false;
  double eta1 = 0.0, radius = 0.0, tail = 0.0;
  double link_const = 0.0;
  double worst_excess = -1.0;  // max of primal error minus its dual-side bound
  int steps = 0;
};

TrackData build_track_data() {
  std::mt19937_64 rng(19);
  Graph g = make_graph(3, {{0, 1}, {1, 2}});
  const int dim = 2;

  std::vector<QuadraticTrackingCost> costs;
  double mu = std::numeric_limits<double>::infinity();
  double c0_sq = 0.0;
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = gauss(rng);
    Eigen::MatrixXd h = m * m.transpose() + (1.0 + uniform01(rng)) *
                                                Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd center(dim), amp(dim), phase(dim);
    for (int r = 0; r < dim; ++r) {
      center(r) = gauss(rng);
      amp(r) = uniform(rng, 0.5, 1.5);
      phase(r) = uniform(rng, 0.0, 6.28318530717958648);
    }
    costs.emplace_back(h, center, amp, phase, 0.8 + 0.2 * i);
    mu = std::min(mu, costs.back().mu());
    c0_sq += costs.back().c0() * costs.back().c0();
  }
  auto ptrs = cost_pointers(costs);

  // a bound on the drift of the node-stacked gradient
  const double c0 = std::sqrt(c0_sq);
  const double eps = 1.0, t_s = 0.1;
  const int n_pred = 5, n_corr = 5, horizon = 200;
  DualConstants dc = dual_constants(g.max_degree(), mu, c0, eps);
  const double rho = optimal_rho(dc);
  TrackingRadius tr = tracking_radius(n_pred, n_corr, t_s, dc, rho);

  SolverParams p;
  p.epsilon = eps;
  p.rho = rho;
  AdmmState s = make_cold_state(g, dim);

  TrackData d;
  d.feasible = tr.feasible;
  d.eta1 = tr.eta1;
  d.radius = tr.radius;
  d.link_const = dc.norm_A / mu;
  d.steps = horizon;

  std::vector<double> dual_err;
  for (int k = 0; k < horizon; ++k) {
    double t_k = k * t_s, t_next = (k + 1) * t_s;

    std::vector<QuadraticCost> surrogates;
    for (int i = 0; i < 3; ++i)
      surrogates.push_back(
          build_prediction(costs[i], s.x.segment(i * dim, dim), t_k, t_s));
    auto sur_ptrs = cost_pointers(surrogates);
    for (int sweep = 0; sweep < n_pred; ++sweep)
      centralized_sweep(g, sur_ptrs, t_k, s, p);

    CentralizedSweepResult last;
    for (int sweep = 0; sweep < n_corr; ++sweep)
      last = centralized_sweep(g, ptrs, t_next, s, p);

    OracleSolution sol = solve_regularized_saddle(g, ptrs, t_next, eps, rho);
    double we = (last.w - sol.w_star_reg).norm();
    double xe = (s.x - sol.x_star_reg).norm();
    dual_err.push_back(we);
    d.worst_excess = std::max(d.worst_excess, xe - (d.link_const * we + 1e-8));
  }
  d.tail = tail_median(dual_err);
  return d;
}

const TrackData& track_data() {
  static TrackData d = build_track_data();
  return d;
}

Outcome criterion_tracking_radius() {
  const TrackData& d = track_data();
  Outcome o;
  o.pass = d.feasible && d.eta1 < 1.0 && d.tail <= d.radius;
  o.detail = "tail dual error " + num(d.tail) + " vs radius " + num(d.radius) +
             " (eta1 " + num(d.eta1) + ")";
  return o;
}

Outcome criterion_primal_link() {
  const TrackData& d = track_data();
  Outcome o;
  o.pass = d.worst_excess <= 0.0;
  o.detail = "per-step primal error within " + num(d.link_const) +
             " x dual error across " + std::to_string(d.steps) +
             " steps (worst slack excess " + num(d.worst_excess) + ")";
  return o;
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion_vanishing_regularization() {
  std::mt19937_64 rng(23);
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  auto costs = testutil::random_quadratics(4, 2, rng);
  auto ptrs = cost_pointers(costs);

  const std::vector<double> grid = {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  OracleSolution base = solve_regularized_saddle(g, ptrs, 0.0, 0.0, 1.0);

  Outcome o;
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double eps : grid) {
    OracleSolution sol = solve_regularized_saddle(g, ptrs, 0.0, eps, 1.0);
    double gap = (sol.x_star_reg - base.x_star_reg).norm();
    if (gap > prev_gap + 1e-10) {
      o.pass = false;
      o.detail = "primal gap grew from " + num(prev_gap) + " to " + num(gap) +
                 " at eps " + num(eps);
    }
    prev_gap = gap;
  }

  GapTable table = regularization_gap(g, ptrs, 0.0, grid);
  bool certified = std::isfinite(table.psi_hat) && table.psi_hat >= 0.0;
  for (const GapRow& row : table.rows)
    certified = certified &&
                row.gap <= (1.0 + table.psi_hat * row.epsilon) * row.w_norm + 1e-12;
  if (!certified) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ");
    o.detail += "no non-negative psi certifies the dual gap rows";
  }
  if (o.pass)
    o.detail = "primal gap non-increasing down to " + num(prev_gap) + ", psi " +
               num(table.psi_hat);
  return o;
}

// ------------------------------------------------------- criteria 6 and 7

struct BenchData {
  bool bounded = false;
  double admm_track = 0.0, admm_cons = 0.0;
  double pg_track = 0.0, pg_cons = 0.0;
  double dd_track = 0.0, dd_cons = 0.0;
  double pg_alpha = 0.0, dd_alpha = 0.0;
  PcTrace admm;
  std::vector<int> degree;
  int n_pred = 0, n_corr = 0;
};

BenchData build_bench_data() {
  RunConfig cfg;  // defaults give the 25-node benchmark cost family
  cfg.radius = 0.24;
  cfg.graph_seed = 1;
  cfg.cost_seed = 1;
  Realization real = build_realization(cfg);
  auto ptrs = real.cost_ptrs();

  PcConfig pc;
  pc.n_pred = 5;
  pc.n_corr = 5;
  pc.t_s = 1.0;
  pc.horizon = 1000;
  SolverParams sp;
  sp.epsilon = 1e-3;
  sp.rho = 1.06e4;

  auto x_star = consensus_trajectory(ptrs, pc.horizon, pc.t_s);

  BenchData d;
  d.degree = real.graph.degree;
  d.n_pred = pc.n_pred;
  d.n_corr = pc.n_corr;

  d.admm = run(real.graph, ptrs, pc, sp);
  auto admm_rows = compute_metrics(real.graph, d.admm, x_star, pc.t_s);
  d.admm_track = tail_median(tracking_series(admm_rows));
  d.admm_cons = tail_median(consensus_series(admm_rows));

  TuneResult pg = tune_baseline("pc_gradient", real, pc, sp, x_star);
  d.pg_alpha = pg.best_alpha;
  PcTrace pg_trace = run_pc_gradient(real.graph, ptrs, real.mixing, pg.best_alpha, pc);
  auto pg_rows = compute_metrics(real.graph, pg_trace, x_star, pc.t_s);
  d.pg_track = tail_median(tracking_series(pg_rows));
  d.pg_cons = tail_median(consensus_series(pg_rows));

  TuneResult dd = tune_baseline("dual_decomp", real, pc, sp, x_star);
  d.dd_alpha = dd.best_alpha;
  PcTrace dd_trace = run_dual_decomp(real.graph, ptrs, real.mixing, dd.best_alpha, pc, sp);
  auto dd_rows = compute_metrics(real.graph, dd_trace, x_star, pc.t_s);
  d.dd_track = tail_median(tracking_series(dd_rows));
  d.dd_cons = tail_median(consensus_series(dd_rows));

  bool finite = true;
  for (const auto& rows : {admm_rows, pg_rows, dd_rows})
    for (const auto& r : rows)
      finite = finite && std::isfinite(r.tracking_error) &&
               std::isfinite(r.consensus_distance);
  d.bounded = finite && !d.admm.failed && !pg_trace.failed && !dd_trace.failed &&
              d.admm.steps() == pc.horizon && pg_trace.steps() == pc.horizon &&
              dd_trace.steps() == pc.horizon;
  return d;
}

const BenchData& bench_data() {
  static BenchData d = build_bench_data();
  return d;
}

Outcome criterion_benchmark_ordering() {
  const BenchData& d = bench_data();
  Outcome o;
  bool track_best = d.admm_track < d.pg_track && d.admm_track < d.dd_track;
  bool cons_best = d.admm_cons < d.pg_cons && d.admm_cons < d.dd_cons;
  o.pass = d.bounded && track_best && cons_best;
  o.detail = "tail tracking " + num(d.admm_track) + " vs " + num(d.pg_track) +
             " (gradient, alpha " + num(d.pg_alpha) + ") and " + num(d.dd_track) +
             " (multipliers, alpha " + num(d.dd_alpha) + "); tail consensus " +
             num(d.admm_cons) + " vs " + num(d.pg_cons) + " and " + num(d.dd_cons);
  if (!d.bounded) o.detail += "; a run diverged or truncated";
  return o;
}

Outcome criterion_comm_counts() {
  Outcome o;

  const BenchData& d = bench_data();
  long per_sweep = d.n_pred + d.n_corr;
  for (const auto& step : d.admm.sends)
    for (size_t i = 0; i < step.size(); ++i)
      if (step[i] != per_sweep * d.degree[i]) {
        o.pass = false;
        o.detail = "benchmark node " + std::to_string(i) + " sent " +
                   std::to_string(step[i]) + " instead of " +
                   std::to_string(per_sweep * d.degree[i]);
        return o;
      }

  // a second, degree-asymmetric instance with unequal phase counts
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  auto costs = sample_experiment_costs(4, 3);
  auto ptrs = cost_pointers(costs);
  PcConfig pc;
  pc.n_pred = 3;
  pc.n_corr = 4;
  pc.t_s = 0.5;
  pc.horizon = 6;
  SolverParams sp;
  sp.epsilon = 0.1;
  sp.rho = 2.0;
  PcTrace trace = run(g, ptrs, pc, sp);
  for (const auto& step : trace.sends)
    for (size_t i = 0; i < step.size(); ++i)
      if (step[i] != 7 * g.degree[i]) {
        o.pass = false;
        o.detail = "path node " + std::to_string(i) + " sent " +
                   std::to_string(step[i]) + " instead of " +
                   std::to_string(7 * g.degree[i]);
        return o;
      }

  o.detail = "every node sent (sweeps) x (degree) messages at every step";
  return o;
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion_curvature_interval() {
  std::mt19937_64 rng(31);
  Outcome o;
  double worst_low = 0.0, worst_high = 0.0, worst_norm = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    int nn = 3 + static_cast<int>(rng() % 5);
    int dim = 1 + static_cast<int>(rng() % 2);
    Graph g = make_graph(nn, testutil::random_connected_edges(nn, rng));
    auto costs = testutil::random_quadratics(nn, dim, rng);
    double eps = uniform(rng, 0.05, 1.0);

    double mu = costs[0].mu();
    Eigen::MatrixXd hinv =
        Eigen::MatrixXd::Zero(static_cast<long>(nn) * dim, static_cast<long>(nn) * dim);
    for (int i = 0; i < nn; ++i) {
      mu = std::min(mu, costs[i].mu());
      hinv.block(static_cast<long>(i) * dim, static_cast<long>(i) * dim, dim, dim) =
          costs[i].H().inverse();
    }

    Eigen::MatrixXd a = testutil::edge_matrix(nn, g.edges, dim);
    Eigen::MatrixXd curv = a * hinv * a.transpose();
    curv.diagonal().array() += eps;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(curv);
    double lo = eig.eigenvalues().minCoeff();
    double hi = eig.eigenvalues().maxCoeff();
    double cap = eps + g.max_degree() / mu;
    worst_low = std::max(worst_low, eps - lo);
    worst_high = std::max(worst_high, hi - cap);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    worst_norm = std::max(
        worst_norm,
        std::abs(svd.singularValues()(0) - std::sqrt(double(g.max_degree()))));
  }
  o.pass = worst_low <= 1e-10 && worst_high <= 1e-10 && worst_norm <= 1e-10;
  o.detail = "20 instances: spectrum low/high overshoot " + num(worst_low) + "/" +
             num(worst_high) + ", operator norm deviation " + num(worst_norm);
  return o;
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion_monotone_constants() {
  const int d_max = 7;
  const double mu = 1.0;
  const double c0 = 2.5 * std::abs(0.039269908169872414 - 1.0);
  const int n_pred = 5, n_corr = 5;
  const double t_s = 1.0;
  const std::vector<int> zeta_depths = {1, 5, 10};

  Outcome o;
  std::vector<double> prev;  // kappa, zeta(1), zeta(5), zeta(10), eta0, eta1
  for (int j = 0; j < 20; ++j) {
    double eps = std::pow(10.0, -4.0 + 4.0 * j / 19.0);  // ascending 1e-4 .. 1
    DualConstants dc = dual_constants(d_max, mu, c0, eps);
    double rho = optimal_rho(dc);
    RateConstants rc = prs_rate(rho, dc);
    TrackingRadius tr = tracking_radius(n_pred, n_corr, t_s, dc, rho);

    std::vector<double> cur = {dc.kappa_bar};
    for (int depth : zeta_depths) cur.push_back(rc.zeta(depth));
    cur.push_back(tr.eta0);
    cur.push_back(tr.eta1);

    if (!prev.empty()) {
      static const char* names[] = {"kappa", "zeta(1)", "zeta(5)", "zeta(10)",
                                    "eta0", "eta1"};
      for (size_t q = 0; q < cur.size(); ++q)
        if (cur[q] > prev[q] * (1.0 + 1e-12)) {
          o.pass = false;
          o.detail = std::string(names[q]) + " grew from " + num(prev[q]) + " to " +
                     num(cur[q]) + " at eps " + num(eps);
          return o;
        }
    }
    prev = cur;
  }
  o.detail = "kappa, zeta, eta0, eta1 all non-increasing across the 20-point grid";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    double budget_s;  // 0: no wall-clock limit
    std::function<Outcome()> fn;
  };
  const std::vector<Entry> entries = {
      {1, 10.0, criterion_equivalence},
      {2, 5.0, criterion_dual_rate},
      {3, 30.0, criterion_tracking_radius},
      {4, 0.0, criterion_primal_link},
      {5, 0.0, criterion_vanishing_regularization},
      {6, 120.0, criterion_benchmark_ordering},
      {7, 0.0, criterion_comm_counts},
      {8, 0.0, criterion_curvature_interval},
      {9, 0.0, criterion_monotone_constants},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget_s > 0.0 && secs >= e.budget_s) {
      o.pass = false;
      o.detail += "; exceeded the " + num(e.budget_s) + " s budget";
    }
    std::printf("CRITERION %d: %s — %s [%.1fs]\n", e.id, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures;
}
