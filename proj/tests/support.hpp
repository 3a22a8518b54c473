#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tvdradmm/costs.hpp"

// Shared helpers for the unit and acceptance tests.  The dense operator
// assemblies here are deliberately written from first principles (directed
// edge pairs, explicit Kronecker blocks) rather than through the library's
// slot index, so that agreement between the two is a genuine cross-check.
namespace testutil {

// All directed pairs (i,j), (j,i) of an undirected edge list, sorted
// lexicographically.  Because the library groups slots by source node with
// neighbors ascending, this ordering coincides with the slot order while
// being derived independently of it.
std::vector<std::pair<int, int>> directed_pairs(const std::vector<std::pair<int, int>>& edges);

// Dense stacked edge map: one dim-sized block row per directed pair (i,j),
// holding the identity in node i's block column.
Eigen::MatrixXd edge_matrix(int n_nodes, const std::vector<std::pair<int, int>>& edges, int dim);

// Dense swap of each directed pair with its reverse.
Eigen::MatrixXd exchange_matrix(const std::vector<std::pair<int, int>>& edges, int dim);

// Degree-minus-adjacency matrix (one row/column per node, scalar blocks).
Eigen::MatrixXd laplacian_matrix(int n_nodes, const std::vector<std::pair<int, int>>& edges);

// Central finite differences, step 1e-6 unless overridden.
Eigen::VectorXd fd_gradient(const tvdradmm::TimeVaryingCost& f, const Eigen::VectorXd& x,
                            double t, double h = 1e-6);
Eigen::MatrixXd fd_hessian(const tvdradmm::TimeVaryingCost& f, const Eigen::VectorXd& x,
                           double t, double h = 1e-6);
Eigen::VectorXd fd_time_grad(const tvdradmm::TimeVaryingCost& f, const Eigen::VectorXd& x,
                             double t, double h = 1e-6);

// Every connected graph on n_nodes labelled vertices, as edge lists.
// Enumerates all 2^(n(n-1)/2) edge subsets; intended for n_nodes <= 5.
std::vector<std::vector<std::pair<int, int>>> all_connected_graphs(int n_nodes);

// A random connected edge set: random spanning tree plus each remaining
// pair independently with probability extra_p.
std::vector<std::pair<int, int>> random_connected_edges(int n_nodes, std::mt19937_64& rng,
                                                        double extra_p = 0.4);

// f(x;t) = ½‖x − c − v·t‖²: the target moves linearly in t, so the
// one-step Taylor surrogate of this cost is exact — handy for isolating
// prediction behavior from extrapolation error.
class LinearTargetCost final : public tvdradmm::TimeVaryingCost {
 public:
  LinearTargetCost(Eigen::VectorXd c, Eigen::VectorXd v)
      : c_(std::move(c)), v_(std::move(v)) {}

  int dim() const override { return static_cast<int>(c_.size()); }
  double value(const Eigen::VectorXd& x, double t) const override {
    return 0.5 * (x - c_ - v_ * t).squaredNorm();
  }
  void gradient(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override {
    out = x - c_ - v_ * t;
  }
  void hessian(const Eigen::VectorXd& x, double t, Eigen::MatrixXd& out) const override {
    out = Eigen::MatrixXd::Identity(dim(), dim());
  }
  void time_grad(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override {
    out = -v_;
  }
  double mu() const override { return 1.0; }
  double ell() const override { return 1.0; }
  double c0() const override { return v_.norm(); }
  using TimeVaryingCost::gradient;
  using TimeVaryingCost::hessian;
  using TimeVaryingCost::time_grad;

 private:
  Eigen::VectorXd c_, v_;
};

// Strongly convex quadratic with H = M Mᵀ + c·I, c in [0.5, 1.5), and a
// standard-normal linear term.
tvdradmm::QuadraticCost random_quadratic(int dim, std::mt19937_64& rng);
std::vector<tvdradmm::QuadraticCost> random_quadratics(int n_nodes, int dim,
                                                       std::mt19937_64& rng);

// Unique scratch directory, removed recursively on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace testutil
