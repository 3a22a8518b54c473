#pragma once

#include <stdexcept>
#include <string>

namespace tvdradmm {

// Malformed or inconsistent user-facing configuration (files, CLI values).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Graph construction or validation failure (disconnected, self-loops, ...).
class TopologyError : public std::runtime_error {
 public:
  explicit TopologyError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver failed to reach its tolerance; carries the node that
// failed (-1 for aggregate solves) and the final residual norm.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int node, double residual)
      : std::runtime_error(what), node(node), residual(residual) {}
  int node;
  double residual;
};

// Filesystem failure while writing results.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tvdradmm
