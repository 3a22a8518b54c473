#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tvdradmm/random.hpp"

namespace testutil {

std::vector<std::pair<int, int>> directed_pairs(const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(2 * edges.size());
  for (auto [i, j] : edges) {
    pairs.emplace_back(i, j);
    pairs.emplace_back(j, i);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Eigen::MatrixXd edge_matrix(int n_nodes, const std::vector<std::pair<int, int>>& edges,
                            int dim) {
  auto pairs = directed_pairs(edges);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim * pairs.size(), dim * n_nodes);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    A.block(dim * k, dim * pairs[k].first, dim, dim).setIdentity();
  return A;
}

Eigen::MatrixXd exchange_matrix(const std::vector<std::pair<int, int>>& edges, int dim) {
  auto pairs = directed_pairs(edges);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim * pairs.size(), dim * pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto rev = std::find(pairs.begin(), pairs.end(),
                         std::make_pair(pairs[k].second, pairs[k].first));
    std::size_t r = static_cast<std::size_t>(rev - pairs.begin());
    P.block(dim * k, dim * r, dim, dim).setIdentity();
  }
  return P;
}

Eigen::MatrixXd laplacian_matrix(int n_nodes, const std::vector<std::pair<int, int>>& edges) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (auto [i, j] : edges) {
    L(i, i) += 1.0;
    L(j, j) += 1.0;
    L(i, j) -= 1.0;
    L(j, i) -= 1.0;
  }
  return L;
}

Eigen::VectorXd fd_gradient(const tvdradmm::TimeVaryingCost& f, const Eigen::VectorXd& x,
                            double t, double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd e = x;
  for (int i = 0; i < x.size(); ++i) {
    e(i) = x(i) + h;
    double up = f.value(e, t);
    e(i) = x(i) - h;
    double dn = f.value(e, t);
    e(i) = x(i);
    g(i) = (up - dn) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const tvdradmm::TimeVaryingCost& f, const Eigen::VectorXd& x,
                           double t, double h) {
  Eigen::MatrixXd H(x.size(), x.size());
  Eigen::VectorXd e = x;
  for (int i = 0; i < x.size(); ++i) {
    e(i) = x(i) + h;
    Eigen::VectorXd up = f.gradient(e, t);
    e(i) = x(i) - h;
    Eigen::VectorXd dn = f.gradient(e, t);
    e(i) = x(i);
    H.col(i) = (up - dn) / (2.0 * h);
  }
  return H;
}

Eigen::VectorXd fd_time_grad(const tvdradmm::TimeVaryingCost& f, const Eigen::VectorXd& x,
                             double t, double h) {
  return (f.gradient(x, t + h) - f.gradient(x, t - h)) / (2.0 * h);
}

namespace {

bool edges_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
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

std::vector<std::vector<std::pair<int, int>>> all_connected_graphs(int n_nodes) {
  std::vector<std::pair<int, int>> all_pairs;
  for (int i = 0; i < n_nodes; ++i)
    for (int j = i + 1; j < n_nodes; ++j) all_pairs.emplace_back(i, j);
  std::vector<std::vector<std::pair<int, int>>> out;
  for (unsigned mask = 0; mask < (1u << all_pairs.size()); ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t b = 0; b < all_pairs.size(); ++b)
      if (mask & (1u << b)) edges.push_back(all_pairs[b]);
    if (edges_connected(n_nodes, edges)) out.push_back(std::move(edges));
  }
  return out;
}

std::vector<std::pair<int, int>> random_connected_edges(int n_nodes, std::mt19937_64& rng,
                                                        double extra_p) {
  std::vector<std::pair<int, int>> edges;
  // Spanning tree: attach node i to a uniformly random earlier node.
  for (int i = 1; i < n_nodes; ++i) {
    int j = static_cast<int>(tvdradmm::uniform01(rng) * i);
    edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges.begin(), edges.end());
  const size_t n_tree = edges.size();  // appended extras would break the sort
  for (int i = 0; i < n_nodes; ++i)
    for (int j = i + 1; j < n_nodes; ++j) {
      if (std::binary_search(edges.begin(), edges.begin() + n_tree, std::make_pair(i, j)))
        continue;
      if (tvdradmm::uniform01(rng) < extra_p) edges.emplace_back(i, j);
    }
  std::sort(edges.begin(), edges.end());
  return edges;
}

tvdradmm::QuadraticCost random_quadratic(int dim, std::mt19937_64& rng) {
  Eigen::MatrixXd M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) M(i, j) = tvdradmm::gauss(rng);
  Eigen::MatrixXd H = M * M.transpose() +
                      tvdradmm::uniform(rng, 0.5, 1.5) * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd g(dim);
  for (int i = 0; i < dim; ++i) g(i) = tvdradmm::gauss(rng);
  return tvdradmm::QuadraticCost(std::move(H), std::move(g));
}

std::vector<tvdradmm::QuadraticCost> random_quadratics(int n_nodes, int dim,
                                                       std::mt19937_64& rng) {
  std::vector<tvdradmm::QuadraticCost> out;
  out.reserve(n_nodes);
  for (int i = 0; i < n_nodes; ++i) out.push_back(random_quadratic(dim, rng));
  return out;
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  auto base = std::filesystem::temp_directory_path();
  path_ = base / ("tvdradmm_test_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);  // best effort; never throw in a dtor
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace testutil
