#include "tvdradmm/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tvdradmm/errors.hpp"
#include "tvdradmm/random.hpp"

namespace tvdradmm {

int Graph::max_degree() const {
  int d = 0;
  for (int di : degree) d = std::max(d, di);
  return d;
}

int Graph::slot(int i, int j) const {
  const auto& nb = neighbors[i];
  auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it == nb.end() || *it != j)
    throw std::invalid_argument("slot(i,j): j is not a neighbor of i");
  return slot_offset[i] + static_cast<int>(it - nb.begin());
}

namespace {

bool connected(int n, const std::vector<std::vector<int>>& adj) {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace

Graph make_graph(int n_nodes, std::vector<std::pair<int, int>> edge_list) {
  if (n_nodes < 1) throw TopologyError("graph needs at least one node");
  std::set<std::pair<int, int>> dedup;
  for (auto& [a, b] : edge_list) {
    if (a == b) throw TopologyError("self-loop on node " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes)
      throw TopologyError("edge endpoint out of range");
    auto e = std::minmax(a, b);
    if (!dedup.insert({e.first, e.second}).second)
      throw TopologyError("duplicate edge " + std::to_string(e.first) + "-" +
                          std::to_string(e.second));
  }

  Graph g;
  g.n_nodes = n_nodes;
  g.edges.assign(dedup.begin(), dedup.end());
  g.neighbors.assign(n_nodes, {});
  for (auto& [i, j] : g.edges) {
    g.neighbors[i].push_back(j);
    g.neighbors[j].push_back(i);
  }
  for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
  g.degree.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) g.degree[i] = static_cast<int>(g.neighbors[i].size());

  if (!connected(n_nodes, g.neighbors)) throw TopologyError("graph is not connected");

  g.slot_offset.resize(n_nodes + 1);
  g.slot_offset[0] = 0;
  for (int i = 0; i < n_nodes; ++i) g.slot_offset[i + 1] = g.slot_offset[i] + g.degree[i];
  int slots = g.slot_offset[n_nodes];
  g.slot_src.resize(slots);
  g.slot_dst.resize(slots);
  for (int i = 0; i < n_nodes; ++i)
    for (int k = 0; k < g.degree[i]; ++k) {
      g.slot_src[g.slot_offset[i] + k] = i;
      g.slot_dst[g.slot_offset[i] + k] = g.neighbors[i][k];
    }
  g.slot_reverse.resize(slots);
  for (int s = 0; s < slots; ++s) g.slot_reverse[s] = g.slot(g.slot_dst[s], g.slot_src[s]);
  return g;
}

Graph build_random_geometric(int n_nodes, double radius, std::uint64_t seed) {
  if (n_nodes < 2) throw TopologyError("geometric graph needs at least 2 nodes");
  const double r2 = radius * radius;
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 100; ++attempt, ++s) {
    std::mt19937_64 rng(s);
    std::vector<double> px(n_nodes), py(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
      px[i] = uniform01(rng);
      py[i] = uniform01(rng);
    }
    std::vector<std::pair<int, int>> edge_list;
    for (int i = 0; i < n_nodes; ++i)
      for (int j = i + 1; j < n_nodes; ++j) {
        double dx = px[i] - px[j], dy = py[i] - py[j];
        if (dx * dx + dy * dy <= r2) edge_list.push_back({i, j});
      }
    try {
      return make_graph(n_nodes, std::move(edge_list));
    } catch (const TopologyError&) {
      // disconnected draw: redraw with the next seed
    }
  }
  throw TopologyError("no connected geometric graph after 100 redraws (last seed " +
                      std::to_string(s - 1) + ")");
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.n_nodes << ' ' << g.num_edges() << '\n';
  for (auto& [i, j] : g.edges) out << i << ' ' << j << '\n';
}

Graph load_edge_list(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw TopologyError("edge list: malformed header");
  std::vector<std::pair<int, int>> edge_list(m);
  for (auto& [i, j] : edge_list)
    if (!(in >> i >> j)) throw TopologyError("edge list: truncated");
  return make_graph(n, std::move(edge_list));
}

Eigen::MatrixXd metropolis_weights(const Graph& g) {
  const int n = g.n_nodes;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (auto& [i, j] : g.edges) {
    double w = 1.0 / (1.0 + std::max(g.degree[i], g.degree[j]));
    W(i, j) = W(j, i) = w;
  }
  for (int i = 0; i < n; ++i) W(i, i) = 1.0 - W.row(i).sum();
  return W;
}

void apply_A(const Graph& g, int n, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
  if (x.size() != static_cast<long>(g.n_nodes) * n)
    throw std::invalid_argument("apply_A: x has wrong dimension");
  out.resize(static_cast<long>(g.num_slots()) * n);
  for (int s = 0; s < g.num_slots(); ++s)
    out.segment(static_cast<long>(s) * n, n) = x.segment(static_cast<long>(g.slot_src[s]) * n, n);
}

void apply_A_transpose(const Graph& g, int n, const Eigen::VectorXd& v, Eigen::VectorXd& out) {
  if (v.size() != static_cast<long>(g.num_slots()) * n)
    throw std::invalid_argument("apply_A_transpose: v has wrong dimension");
  out = Eigen::VectorXd::Zero(static_cast<long>(g.n_nodes) * n);
  for (int s = 0; s < g.num_slots(); ++s)
    out.segment(static_cast<long>(g.slot_src[s]) * n, n) += v.segment(static_cast<long>(s) * n, n);
}

void apply_P(const Graph& g, int n, const Eigen::VectorXd& v, Eigen::VectorXd& out) {
  if (v.size() != static_cast<long>(g.num_slots()) * n)
    throw std::invalid_argument("apply_P: v has wrong dimension");
  out.resize(v.size());
  for (int s = 0; s < g.num_slots(); ++s)
    out.segment(static_cast<long>(s) * n, n) =
        v.segment(static_cast<long>(g.slot_reverse[s]) * n, n);
}

Eigen::VectorXd apply_A(const Graph& g, int n, const Eigen::VectorXd& x) {
  Eigen::VectorXd out;
  apply_A(g, n, x, out);
  return out;
}

Eigen::VectorXd apply_A_transpose(const Graph& g, int n, const Eigen::VectorXd& v) {
  Eigen::VectorXd out;
  apply_A_transpose(g, n, v, out);
  return out;
}

Eigen::VectorXd apply_P(const Graph& g, int n, const Eigen::VectorXd& v) {
  Eigen::VectorXd out;
  apply_P(g, n, v, out);
  return out;
}

Eigen::VectorXd apply_mixing(const Eigen::MatrixXd& W, int n, const Eigen::VectorXd& x) {
  const int N = static_cast<int>(W.rows());
  if (x.size() != static_cast<long>(N) * n)
    throw std::invalid_argument("apply_mixing: x has wrong dimension");
  if (n == 1) return W * x;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (W(i, j) != 0.0)
        out.segment(static_cast<long>(i) * n, n) += W(i, j) * x.segment(static_cast<long>(j) * n, n);
  return out;
}

}  // namespace tvdradmm
