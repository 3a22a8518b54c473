#include "tvdradmm/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tvdradmm/baselines.hpp"
#include "tvdradmm/bounds.hpp"
#include "tvdradmm/errors.hpp"
#include "tvdradmm/oracle.hpp"
#include "tvdradmm/parallel.hpp"

namespace tvdradmm {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string fmt_fixed(double v, int prec) {
  char buf[48];
  auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, prec);
  return std::string(buf, r.ptr);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void config_fail(const std::string& path, int line, const std::string& what) {
  throw ConfigError(path + ":" + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& path, int line, const std::string& v) {
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    config_fail(path, line, "not a number: '" + v + "'");
  }
}

long parse_int(const std::string& path, int line, const std::string& v) {
  try {
    size_t used = 0;
    long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    config_fail(path, line, "not an integer: '" + v + "'");
  }
}

std::uint64_t parse_seed(const std::string& path, int line, const std::string& v) {
  try {
    size_t used = 0;
    unsigned long long d = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    config_fail(path, line, "not a seed value: '" + v + "'");
  }
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);

  // section -> key -> required; anything outside this table is rejected
  const std::map<std::string, std::map<std::string, bool>> schema = {
      {"graph", {{"n_nodes", true}, {"radius", true}, {"seed", true}}},
      {"cost", {{"amp", true}, {"nu", true}, {"seed", true}}},
      {"algo",
       {{"algorithm", true},
        {"epsilon", true},
        {"rho", true},
        {"n_pred", true},
        {"n_corr", true},
        {"t_s", true},
        {"horizon", true},
        {"alpha", false},
        {"alpha_d", false}}},
      {"output", {{"dir", true}}},
  };

  RunConfig cfg;
  std::set<std::string> seen;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_fail(path, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema.count(section)) config_fail(path, lineno, "unknown section [" + section + "]");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) config_fail(path, lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (section.empty()) config_fail(path, lineno, "key outside any section");
    auto sec_it = schema.find(section);
    if (!sec_it->second.count(key))
      config_fail(path, lineno, "unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second)
      config_fail(path, lineno, "duplicate key '" + key + "'");

    if (section == "graph") {
      if (key == "n_nodes") cfg.n_nodes = static_cast<int>(parse_int(path, lineno, val));
      else if (key == "radius") cfg.radius = parse_real(path, lineno, val);
      else cfg.graph_seed = parse_seed(path, lineno, val);
    } else if (section == "cost") {
      if (key == "amp") cfg.amp = parse_real(path, lineno, val);
      else if (key == "nu") cfg.nu = parse_real(path, lineno, val);
      else cfg.cost_seed = parse_seed(path, lineno, val);
    } else if (section == "algo") {
      if (key == "algorithm") cfg.algorithm = val;
      else if (key == "epsilon") cfg.epsilon = parse_real(path, lineno, val);
      else if (key == "rho") cfg.rho = parse_real(path, lineno, val);
      else if (key == "n_pred") cfg.n_pred = static_cast<int>(parse_int(path, lineno, val));
      else if (key == "n_corr") cfg.n_corr = static_cast<int>(parse_int(path, lineno, val));
      else if (key == "t_s") cfg.t_s = parse_real(path, lineno, val);
      else if (key == "horizon") cfg.horizon = static_cast<int>(parse_int(path, lineno, val));
      else if (key == "alpha") cfg.alpha = parse_real(path, lineno, val);
      else cfg.alpha_d = parse_real(path, lineno, val);
    } else {  // output
      cfg.output_dir = val;
    }
  }

  for (const auto& [sec, keys] : schema)
    for (const auto& [key, required] : keys)
      if (required && !seen.count(sec + "." + key))
        throw ConfigError(path + ": missing required key '" + key + "' in [" + sec + "]");

  if (cfg.n_nodes < 2) throw ConfigError("n_nodes must be >= 2");
  if (!(cfg.radius > 0.0) || cfg.radius > std::sqrt(2.0))
    throw ConfigError("radius must lie in (0, sqrt(2)]");
  static const std::set<std::string> algos = {"dradmm", "pc_gradient", "dual_decomp", "all"};
  if (!algos.count(cfg.algorithm))
    throw ConfigError("algorithm must be one of dradmm, pc_gradient, dual_decomp, all");
  if (cfg.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  if (!(cfg.rho > 0.0)) throw ConfigError("rho must be > 0");
  if (cfg.n_pred < 0 || cfg.n_corr < 0) throw ConfigError("sweep counts must be >= 0");
  if (cfg.n_pred == 0 && cfg.n_corr == 0)
    throw ConfigError("n_pred and n_corr cannot both be zero");
  if (!(cfg.t_s > 0.0)) throw ConfigError("t_s must be > 0");
  if (cfg.horizon < 0) throw ConfigError("horizon must be >= 0");
  if (!(cfg.alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(cfg.alpha_d > 0.0)) throw ConfigError("alpha_d must be > 0");
  if (cfg.output_dir.empty()) throw ConfigError("output dir must not be empty");
  return cfg;
}

std::vector<const TimeVaryingCost*> Realization::cost_ptrs() const {
  std::vector<const TimeVaryingCost*> p;
  p.reserve(costs.size());
  for (const auto& c : costs) p.push_back(&c);
  return p;
}

Realization build_realization(const RunConfig& cfg) {
  Realization real;
  real.graph = build_random_geometric(cfg.n_nodes, cfg.radius, cfg.graph_seed);
  real.costs = sample_experiment_costs(cfg.n_nodes, cfg.cost_seed, cfg.amp, cfg.nu);
  real.mixing = metropolis_weights(real.graph);
  return real;
}

std::vector<Eigen::VectorXd> consensus_trajectory(
    const std::vector<const TimeVaryingCost*>& costs, int horizon, double t_s, double tol) {
  std::vector<Eigen::VectorXd> traj(horizon);
  parallel_for(horizon,
               [&](int k) { traj[k] = solve_consensus(costs, (k + 1) * t_s, tol); });
  return traj;
}

std::vector<MetricsRow> compute_metrics(const Graph& g, const PcTrace& trace,
                                        const std::vector<Eigen::VectorXd>& x_star,
                                        double t_s) {
  const int nn = g.n_nodes;
  std::vector<MetricsRow> rows;
  rows.reserve(trace.steps());
  for (int i = 0; i < trace.steps(); ++i) {
    const Eigen::VectorXd& x = trace.x[i];
    const int n = static_cast<int>(x.size()) / nn;
    MetricsRow row;
    row.k = i + 1;
    row.t_k = (i + 1) * t_s;

    double track = 0.0;
    const Eigen::VectorXd& ref = x_star.at(i);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    for (int node = 0; node < nn; ++node) mean += x.segment(static_cast<long>(node) * n, n);
    mean /= nn;
    double cons = 0.0;
    for (int node = 0; node < nn; ++node) {
      auto block = x.segment(static_cast<long>(node) * n, n);
      track += (block - ref).squaredNorm();
      cons += (block - mean).squaredNorm();
    }
    row.tracking_error = std::sqrt(track) / nn;
    row.consensus_distance = std::sqrt(cons);
    row.dual_distance = kNan;
    long comm = 0;
    if (i < static_cast<int>(trace.sends.size()))
      for (long s : trace.sends[i]) comm += s;
    row.comm_count = comm;
    rows.push_back(row);
  }
  return rows;
}

double tail_median(const std::vector<double>& series) {
  if (series.empty()) return kNan;
  size_t count = std::max<size_t>(1, series.size() / 5);
  std::vector<double> tail(series.end() - count, series.end());
  std::sort(tail.begin(), tail.end());
  size_t m = tail.size() / 2;
  return tail.size() % 2 ? tail[m] : 0.5 * (tail[m - 1] + tail[m]);
}

std::vector<double> tracking_series(const std::vector<MetricsRow>& rows) {
  std::vector<double> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r.tracking_error);
  return s;
}

std::vector<double> consensus_series(const std::vector<MetricsRow>& rows) {
  std::vector<double> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r.consensus_distance);
  return s;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void close_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void write_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows) {
  std::ofstream out = open_out(path);
  out << "k,t_k,tracking_error,consensus_distance,dual_distance,comm_count\n";
  for (const auto& r : rows)
    out << r.k << ',' << fmt(r.t_k) << ',' << fmt(r.tracking_error) << ','
        << fmt(r.consensus_distance) << ',' << fmt(r.dual_distance) << ',' << r.comm_count
        << '\n';
  close_out(out, path);
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
  close_out(out, path);
}

void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::vector<std::string>& series_names,
                          const std::vector<std::vector<double>>& series) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  const double pl = 70, pr = 600, pt = 45, pb = 470;  // plot rectangle

  size_t len = 0;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& s : series) {
    len = std::max(len, s.size());
    for (double v : s)
      if (std::isfinite(v) && v > 0.0) {
        double ly = std::log10(v);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
      }
  }
  if (!(ymin < ymax)) {
    ymin = std::isfinite(ymin) ? ymin - 1.0 : -1.0;
    ymax = ymin + 2.0;
  }
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  double xmax = std::max<size_t>(len, 2);

  auto xpix = [&](double k) { return pl + (k - 1.0) / (xmax - 1.0) * (pr - pl); };
  auto ypix = [&](double ly) { return pb - (ly - ymin) / (ymax - ymin) * (pb - pt); };

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"780\" height=\"520\" "
         "font-family=\"sans-serif\">\n";
  out << "<rect width=\"780\" height=\"520\" fill=\"white\"/>\n";
  out << "<text x=\"335\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";

  // axes
  out << "<line x1=\"" << fmt_fixed(pl, 1) << "\" y1=\"" << fmt_fixed(pt, 1) << "\" x2=\""
      << fmt_fixed(pl, 1) << "\" y2=\"" << fmt_fixed(pb, 1) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt_fixed(pl, 1) << "\" y1=\"" << fmt_fixed(pb, 1) << "\" x2=\""
      << fmt_fixed(pr, 1) << "\" y2=\"" << fmt_fixed(pb, 1) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"335\" y=\"508\" text-anchor=\"middle\" font-size=\"12\">k</text>\n";
  out << "<text transform=\"rotate(-90 16 260)\" x=\"16\" y=\"260\" text-anchor=\"middle\" "
         "font-size=\"12\">log10 error</text>\n";

  for (int i = 0; i <= 5; ++i) {
    double k = 1.0 + i * (xmax - 1.0) / 5.0;
    double px = xpix(k);
    out << "<line x1=\"" << fmt_fixed(px, 1) << "\" y1=\"" << fmt_fixed(pb, 1) << "\" x2=\""
        << fmt_fixed(px, 1) << "\" y2=\"" << fmt_fixed(pb + 5, 1) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt_fixed(px, 1) << "\" y=\"" << fmt_fixed(pb + 18, 1)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << static_cast<long>(k + 0.5)
        << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    double ly = ymin + i * (ymax - ymin) / 5.0;
    double py = ypix(ly);
    out << "<line x1=\"" << fmt_fixed(pl - 5, 1) << "\" y1=\"" << fmt_fixed(py, 1)
        << "\" x2=\"" << fmt_fixed(pl, 1) << "\" y2=\"" << fmt_fixed(py, 1)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt_fixed(pl - 8, 1) << "\" y=\"" << fmt_fixed(py + 3, 1)
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt_fixed(ly, 2) << "</text>\n";
  }

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 5];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\" points=\"";
    bool first = true;
    for (size_t i = 0; i < series[s].size(); ++i) {
      double v = series[s][i];
      if (!std::isfinite(v) || v <= 0.0) continue;
      if (!first) out << ' ';
      out << fmt_fixed(xpix(static_cast<double>(i + 1)), 2) << ','
          << fmt_fixed(ypix(std::log10(v)), 2);
      first = false;
    }
    out << "\"/>\n";
    double ly = pt + 18.0 * s;
    out << "<line x1=\"615\" y1=\"" << fmt_fixed(ly, 1) << "\" x2=\"645\" y2=\""
        << fmt_fixed(ly, 1) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"650\" y=\"" << fmt_fixed(ly + 4, 1) << "\" font-size=\"11\">"
        << (s < series_names.size() ? series_names[s] : "") << "</text>\n";
  }
  out << "</svg>\n";
  close_out(out, path);
}

namespace {

std::vector<std::string> algo_list(const std::string& algorithm) {
  if (algorithm == "all") return {"dradmm", "pc_gradient", "dual_decomp"};
  return {algorithm};
}

PcTrace run_algorithm(const std::string& algo, const Realization& real, const PcConfig& pc,
                      const SolverParams& sp, double alpha, double alpha_d) {
  auto ptrs = real.cost_ptrs();
  if (algo == "dradmm") return run(real.graph, ptrs, pc, sp);
  if (algo == "pc_gradient")
    return run_pc_gradient(real.graph, ptrs, real.mixing, alpha, pc);
  return run_dual_decomp(real.graph, ptrs, real.mixing, alpha_d, pc, sp);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void write_meta(const std::string& path, const RunConfig& cfg, const Realization& real) {
  std::ofstream out = open_out(path);
  out << "n_nodes = " << cfg.n_nodes << "\n";
  out << "radius = " << fmt(cfg.radius) << "\n";
  out << "graph_seed = " << cfg.graph_seed << "\n";
  out << "edges = " << real.graph.num_edges() << "\n";
  out << "max_degree = " << real.graph.max_degree() << "\n";
  out << "amp = " << fmt(cfg.amp) << "\n";
  out << "nu = " << fmt(cfg.nu) << "\n";
  out << "cost_seed = " << cfg.cost_seed << "\n";
  out << "algorithm = " << cfg.algorithm << "\n";
  out << "epsilon = " << fmt(cfg.epsilon) << "\n";
  out << "rho = " << fmt(cfg.rho) << "\n";
  out << "n_pred = " << cfg.n_pred << "\n";
  out << "n_corr = " << cfg.n_corr << "\n";
  out << "t_s = " << fmt(cfg.t_s) << "\n";
  out << "horizon = " << cfg.horizon << "\n";
  out << "alpha = " << fmt(cfg.alpha) << "\n";
  out << "alpha_d = " << fmt(cfg.alpha_d) << "\n";
  out << "workers = " << worker_count() << "\n";
  close_out(out, path);
}

void require_success(const PcTrace& trace, const std::string& algo) {
  if (trace.failed)
    throw SolverError(algo + " run aborted: " + trace.error, -1, 0.0);
}

}  // namespace

void cmd_run(const std::string& config_path, std::ostream& out) {
  RunConfig cfg = load_config(config_path);
  Realization real = build_realization(cfg);
  PcConfig pc{cfg.n_pred, cfg.n_corr, cfg.t_s, cfg.horizon};
  SolverParams sp;
  sp.epsilon = cfg.epsilon;
  sp.rho = cfg.rho;
  auto ptrs = real.cost_ptrs();
  auto x_star = consensus_trajectory(ptrs, cfg.horizon, cfg.t_s);
  ensure_dir(cfg.output_dir);

  for (const std::string& algo : algo_list(cfg.algorithm)) {
    PcTrace trace = run_algorithm(algo, real, pc, sp, cfg.alpha, cfg.alpha_d);
    require_success(trace, algo);
    auto rows = compute_metrics(real.graph, trace, x_star, cfg.t_s);
    std::string csv = cfg.output_dir + "/metrics_" + algo + ".csv";
    write_metrics_csv(csv, rows);
    out << algo << ": tail tracking error = " << fmt(tail_median(tracking_series(rows)))
        << ", tail consensus distance = " << fmt(tail_median(consensus_series(rows)))
        << " -> " << csv << "\n";
  }
  write_meta(cfg.output_dir + "/run_meta.txt", cfg, real);
}

void cmd_compare(const std::string& config_path, std::ostream& out) {
  RunConfig cfg = load_config(config_path);
  Realization real = build_realization(cfg);
  PcConfig pc{cfg.n_pred, cfg.n_corr, cfg.t_s, cfg.horizon};
  SolverParams sp;
  sp.epsilon = cfg.epsilon;
  sp.rho = cfg.rho;
  auto ptrs = real.cost_ptrs();
  auto x_star = consensus_trajectory(ptrs, cfg.horizon, cfg.t_s);
  ensure_dir(cfg.output_dir);

  const std::vector<std::string> algos = {"dradmm", "pc_gradient", "dual_decomp"};
  std::vector<std::vector<double>> err, cons;
  for (const std::string& algo : algos) {
    PcTrace trace = run_algorithm(algo, real, pc, sp, cfg.alpha, cfg.alpha_d);
    require_success(trace, algo);
    auto rows = compute_metrics(real.graph, trace, x_star, cfg.t_s);
    err.push_back(tracking_series(rows));
    cons.push_back(consensus_series(rows));
    out << algo << ": tail tracking error = " << fmt(tail_median(err.back()))
        << ", tail consensus distance = " << fmt(tail_median(cons.back())) << "\n";
  }

  std::vector<std::vector<double>> err_rows, cons_rows;
  for (int k = 0; k < cfg.horizon; ++k) {
    err_rows.push_back({static_cast<double>(k + 1), err[0][k], err[1][k], err[2][k]});
    cons_rows.push_back({static_cast<double>(k + 1), cons[0][k], cons[1][k], cons[2][k]});
  }
  const std::vector<std::string> header = {"k", "dradmm", "pc_gradient", "dual_decomp"};
  write_table_csv(cfg.output_dir + "/compare_error.csv", header, err_rows);
  write_table_csv(cfg.output_dir + "/compare_consensus.csv", header, cons_rows);
  write_line_chart_svg(cfg.output_dir + "/compare_error.svg", "Tracking error", algos, err);
  write_line_chart_svg(cfg.output_dir + "/compare_consensus.svg", "Distance from consensus",
                       algos, cons);
  write_meta(cfg.output_dir + "/run_meta.txt", cfg, real);
}

void cmd_bounds(double epsilon, double rho, int n_pred, int n_corr, double t_s, int d_max,
                double mu, double c0, std::ostream& out) {
  if (!(epsilon > 0.0)) throw ConfigError("bounds report requires epsilon > 0");
  if (d_max <= 0) {
    RunConfig defaults;
    Graph g = build_random_geometric(defaults.n_nodes, defaults.radius, defaults.graph_seed);
    d_max = g.max_degree();
    out << "d_max = " << d_max << " (from default graph: n_nodes=" << defaults.n_nodes
        << ", radius=" << fmt(defaults.radius) << ", seed=" << defaults.graph_seed << ")\n";
  } else {
    out << "d_max = " << d_max << "\n";
  }

  DualConstants dc = dual_constants(d_max, mu, c0, epsilon);
  bool rho_given = rho > 0.0;
  double rho_eff = rho_given ? rho : optimal_rho(dc);
  RateConstants rc = prs_rate(rho_eff, dc);
  TrackingRadius tr = tracking_radius(n_pred, n_corr, t_s, dc, rho_eff);

  out << "mu = " << fmt(mu) << "\n";
  out << "c0 = " << fmt(c0) << "\n";
  out << "epsilon = " << fmt(epsilon) << "\n";
  out << "mu_bar = " << fmt(dc.mu_bar) << "\n";
  out << "ell_bar = " << fmt(dc.ell_bar) << "\n";
  out << "kappa_bar = " << fmt(dc.kappa_bar) << "\n";
  out << "c0_bar = " << fmt(dc.c0_bar) << "\n";
  out << "norm_A = " << fmt(dc.norm_A) << "\n";
  out << "rho = " << fmt(rho_eff) << (rho_given ? "" : " (optimal)") << "\n";
  out << "lambda = " << fmt(rc.lambda) << "\n";
  out << "omega = " << fmt(rc.omega) << "\n";
  out << "n_pred = " << n_pred << "\n";
  out << "n_corr = " << n_corr << "\n";
  out << "t_s = " << fmt(t_s) << "\n";
  out << "eta0 = " << fmt(tr.eta0) << "\n";
  out << "eta1 = " << fmt(tr.eta1) << "\n";
  out << "feasible = " << (tr.feasible ? "yes" : "no") << "\n";
  out << "radius = " << fmt(tr.radius) << "\n";
}

void cmd_sweep(const std::string& param, const std::vector<double>& values,
               const std::string& config_path, std::ostream& out) {
  static const std::set<std::string> params = {"epsilon", "rho", "n_pred", "n_corr", "t_s"};
  if (!params.count(param))
    throw ConfigError("sweep parameter must be one of epsilon, rho, n_pred, n_corr, t_s");
  if (values.empty()) throw ConfigError("sweep needs at least one value");

  RunConfig cfg = load_config(config_path);
  if (cfg.algorithm == "all")
    throw ConfigError("sweep requires a single algorithm in the config");
  Realization real = build_realization(cfg);
  auto ptrs = real.cost_ptrs();
  double mu = ptrs[0]->mu(), c0 = ptrs[0]->c0();
  for (const auto* c : ptrs) {
    mu = std::min(mu, c->mu());
    c0 = std::max(c0, c->c0());
  }
  ensure_dir(cfg.output_dir);

  // the consensus trajectory depends only on t_s, so it is shared unless
  // t_s itself is swept
  std::vector<Eigen::VectorXd> x_star;
  if (param != "t_s") x_star = consensus_trajectory(ptrs, cfg.horizon, cfg.t_s);

  std::vector<std::vector<double>> rows;
  for (double v : values) {
    RunConfig c = cfg;
    if (param == "epsilon") {
      if (v < 0.0) throw ConfigError("epsilon sweep values must be >= 0");
      c.epsilon = v;
    } else if (param == "rho") {
      if (!(v > 0.0)) throw ConfigError("rho sweep values must be > 0");
      c.rho = v;
    } else if (param == "t_s") {
      if (!(v > 0.0)) throw ConfigError("t_s sweep values must be > 0");
      c.t_s = v;
    } else {
      if (v < 0.0 || v != std::floor(v))
        throw ConfigError(param + " sweep values must be non-negative integers");
      (param == "n_pred" ? c.n_pred : c.n_corr) = static_cast<int>(v);
      if (c.n_pred == 0 && c.n_corr == 0)
        throw ConfigError("sweep value makes both n_pred and n_corr zero");
    }

    PcConfig pc{c.n_pred, c.n_corr, c.t_s, c.horizon};
    SolverParams sp;
    sp.epsilon = c.epsilon;
    sp.rho = c.rho;
    if (param == "t_s") x_star = consensus_trajectory(ptrs, c.horizon, c.t_s);
    PcTrace trace = run_algorithm(c.algorithm, real, pc, sp, c.alpha, c.alpha_d);
    require_success(trace, c.algorithm);
    auto metrics = compute_metrics(real.graph, trace, x_star, c.t_s);

    DualConstants dc = dual_constants(real.graph.max_degree(), mu, c0, c.epsilon);
    TrackingRadius tr = tracking_radius(c.n_pred, c.n_corr, c.t_s, dc, c.rho);
    rows.push_back({v, tail_median(tracking_series(metrics)),
                    tail_median(consensus_series(metrics)), tr.eta1, tr.radius});
  }

  std::string csv = cfg.output_dir + "/sweep_" + param + ".csv";
  write_table_csv(csv, {"value", "tail_tracking_error", "tail_consensus", "eta1",
                        "theory_radius"},
                  rows);
  out << "wrote " << csv << " (" << rows.size() << " points)\n";
}

TuneResult tune_baseline(const std::string& algorithm, const Realization& real,
                         const PcConfig& cfg, const SolverParams& params,
                         const std::vector<Eigen::VectorXd>& x_star) {
  if (algorithm != "pc_gradient" && algorithm != "dual_decomp")
    throw std::invalid_argument("tune_baseline: unknown baseline " + algorithm);
  TuneResult result;
  result.best_tail = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    double alpha = std::pow(10.0, -3.0 + 3.0 * i / 9.0);
    PcTrace trace = run_algorithm(algorithm, real, cfg, params, alpha, alpha);
    double tail = std::numeric_limits<double>::infinity();
    if (!trace.failed && trace.steps() == cfg.horizon) {
      auto rows = compute_metrics(real.graph, trace, x_star, cfg.t_s);
      tail = tail_median(tracking_series(rows));
    }
    result.grid.emplace_back(alpha, tail);
    if (tail < result.best_tail) {
      result.best_tail = tail;
      result.best_alpha = alpha;
    }
  }
  if (!std::isfinite(result.best_tail))
    throw SolverError("tune_baseline: every " + algorithm + " grid point diverged", -1, 0.0);
  return result;
}

void cmd_tune(const std::string& config_path, std::ostream& out) {
  RunConfig cfg = load_config(config_path);
  Realization real = build_realization(cfg);
  PcConfig pc{cfg.n_pred, cfg.n_corr, cfg.t_s, cfg.horizon};
  SolverParams sp;
  sp.epsilon = cfg.epsilon;
  sp.rho = cfg.rho;
  auto ptrs = real.cost_ptrs();
  auto x_star = consensus_trajectory(ptrs, cfg.horizon, cfg.t_s);
  ensure_dir(cfg.output_dir);

  std::vector<std::vector<double>> rows;
  std::ofstream meta = open_out(cfg.output_dir + "/tune_meta.txt");
  for (const std::string& algo : {std::string("pc_gradient"), std::string("dual_decomp")}) {
    TuneResult r = tune_baseline(algo, real, pc, sp, x_star);
    for (const auto& [alpha, tail] : r.grid)
      rows.push_back({algo == "pc_gradient" ? 0.0 : 1.0, alpha, tail});
    out << algo << ": best alpha = " << fmt(r.best_alpha)
        << ", tail tracking error = " << fmt(r.best_tail) << "\n";
    meta << (algo == "pc_gradient" ? "alpha" : "alpha_d") << " = " << fmt(r.best_alpha)
         << "\n";
  }
  close_out(meta, cfg.output_dir + "/tune_meta.txt");
  write_table_csv(cfg.output_dir + "/tune_results.csv",
                  {"baseline_index", "alpha", "tail_tracking_error"}, rows);
}

}  // namespace tvdradmm
