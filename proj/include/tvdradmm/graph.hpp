#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace tvdradmm {

/**
 * Undirected connected communication topology.
 *
 * Every undirected edge {i,j} owns two directed slots (i,j) and (j,i).
 * Slots are grouped by source node, neighbors in ascending order, so the
 * slot layout matches the block structure of the consensus matrix A
 * (node i's rows appear consecutively, one block per neighbor).  The
 * linear operators A, Aᵀ and the slot-swap P are applied matrix-free
 * through this index; dense assemblies exist only in the oracle and in
 * the tests.
 */
struct Graph {
  int n_nodes = 0;
  std::vector<std::pair<int, int>> edges;    // unordered pairs, i < j, sorted
  std::vector<std::vector<int>> neighbors;   // sorted adjacency lists
  std::vector<int> degree;
  std::vector<int> slot_offset;              // slot_offset[i] = sum of degrees < i
  std::vector<int> slot_src, slot_dst;       // per slot: source / destination node
  std::vector<int> slot_reverse;             // per slot: index of the (j,i) twin

  int num_slots() const { return static_cast<int>(slot_src.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int max_degree() const;

  /// Slot index of the directed pair (i,j); j must be a neighbor of i.
  int slot(int i, int j) const;
};

/// Validates (no self-loops, no duplicates, connected) and builds the slot
/// index.  Throws TopologyError on an invalid edge set.
Graph make_graph(int n_nodes, std::vector<std::pair<int, int>> edge_list);

/**
 * Random geometric graph: n_nodes points uniform in the unit square, an edge
 * whenever the Euclidean distance is at most radius.  Disconnected draws are
 * retried with the seed incremented, up to 100 redraws; exhausting the cap
 * throws TopologyError naming the final seed tried.
 */
Graph build_random_geometric(int n_nodes, double radius, std::uint64_t seed);

/// Edge-list serialization: first line "N |E|", then one "i j" pair per line.
void save_edge_list(const Graph& g, std::ostream& out);
/// Parses the edge-list format and validates connectivity.
Graph load_edge_list(std::istream& in);

/// Metropolis-Hastings mixing weights: W_ij = 1/(1+max(d_i,d_j)) on edges,
/// diagonal absorbs the remainder.  Symmetric, doubly stochastic.
Eigen::MatrixXd metropolis_weights(const Graph& g);

// --- matrix-free consensus operators (block dimension n per node/slot) ---

/// (Ax): slot (i,j) receives x_i.
void apply_A(const Graph& g, int n, const Eigen::VectorXd& x, Eigen::VectorXd& out);
/// (Aᵀv): node i receives the sum of v over its outgoing slots (i,j).
void apply_A_transpose(const Graph& g, int n, const Eigen::VectorXd& v, Eigen::VectorXd& out);
/// (Pv): slot (i,j) receives v_(j,i).  Involution.
void apply_P(const Graph& g, int n, const Eigen::VectorXd& v, Eigen::VectorXd& out);

Eigen::VectorXd apply_A(const Graph& g, int n, const Eigen::VectorXd& x);
Eigen::VectorXd apply_A_transpose(const Graph& g, int n, const Eigen::VectorXd& v);
Eigen::VectorXd apply_P(const Graph& g, int n, const Eigen::VectorXd& v);

/// Applies the block mixing matrix W ⊗ I_n to a stacked node vector.
Eigen::VectorXd apply_mixing(const Eigen::MatrixXd& W, int n, const Eigen::VectorXd& x);

}  // namespace tvdradmm
