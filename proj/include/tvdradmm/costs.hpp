#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

namespace tvdradmm {

/**
 * A node's local cost f(x; t), twice differentiable in x and once in t,
 * with the derivative oracles needed by the Taylor prediction step and the
 * constants entering the theoretical rate bounds:
 *   mu  — strong-convexity modulus (Hessian ≥ mu·I uniformly in t),
 *   ell — smoothness (Hessian ≤ ell·I),
 *   c0  — uniform bound on ‖∂t ∇f(x,t)‖.
 * Implementations are immutable and reentrant.
 */
class TimeVaryingCost {
 public:
  virtual ~TimeVaryingCost() = default;
  virtual int dim() const = 0;
  virtual double value(const Eigen::VectorXd& x, double t) const = 0;
  virtual void gradient(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const = 0;
  virtual void hessian(const Eigen::VectorXd& x, double t, Eigen::MatrixXd& out) const = 0;
  /// Mixed derivative ∂t ∇x f(x, t).
  virtual void time_grad(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const = 0;
  virtual double mu() const = 0;
  virtual double ell() const = 0;
  virtual double c0() const = 0;

  Eigen::VectorXd gradient(const Eigen::VectorXd& x, double t) const {
    Eigen::VectorXd g;
    gradient(x, t, g);
    return g;
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x, double t) const {
    Eigen::MatrixXd H;
    hessian(x, t, H);
    return H;
  }
  Eigen::VectorXd time_grad(const Eigen::VectorXd& x, double t) const {
    Eigen::VectorXd g;
    time_grad(x, t, g);
    return g;
  }
};

/// Static quadratic ½xᵀHx + gᵀx + c.  Also the type of the per-step
/// prediction surrogate.  mu/ell are the extreme eigenvalues of H.
class QuadraticCost final : public TimeVaryingCost {
 public:
  QuadraticCost(Eigen::MatrixXd H, Eigen::VectorXd g, double c = 0.0);

  int dim() const override { return static_cast<int>(g_.size()); }
  double value(const Eigen::VectorXd& x, double t) const override;
  void gradient(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override;
  void hessian(const Eigen::VectorXd& x, double t, Eigen::MatrixXd& out) const override;
  void time_grad(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override;
  double mu() const override { return mu_; }
  double ell() const override { return ell_; }
  double c0() const override { return 0.0; }
  using TimeVaryingCost::gradient;
  using TimeVaryingCost::hessian;
  using TimeVaryingCost::time_grad;

  const Eigen::MatrixXd& H() const { return H_; }
  const Eigen::VectorXd& g() const { return g_; }

 private:
  Eigen::MatrixXd H_;
  Eigen::VectorXd g_;
  double c_;
  double mu_, ell_;
};

/// Quadratic pursuit of a sinusoidal target:
///   f(x;t) = ½ (x − b(t))ᵀ H (x − b(t)),  b(t) = center + amp ⊙ sin(omega·t + phase).
/// The closed-form trajectory makes this the instance family for the
/// tracking-bound checks, where the regularized optimum is exactly computable.
class QuadraticTrackingCost final : public TimeVaryingCost {
 public:
  QuadraticTrackingCost(Eigen::MatrixXd H, Eigen::VectorXd center, Eigen::VectorXd amp,
                        Eigen::VectorXd phase, double omega);

  int dim() const override { return static_cast<int>(center_.size()); }
  double value(const Eigen::VectorXd& x, double t) const override;
  void gradient(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override;
  void hessian(const Eigen::VectorXd& x, double t, Eigen::MatrixXd& out) const override;
  void time_grad(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override;
  double mu() const override { return mu_; }
  double ell() const override { return ell_; }
  double c0() const override { return c0_; }
  using TimeVaryingCost::gradient;
  using TimeVaryingCost::hessian;
  using TimeVaryingCost::time_grad;

  Eigen::VectorXd target(double t) const;
  const Eigen::MatrixXd& H() const { return H_; }

 private:
  Eigen::MatrixXd H_;
  Eigen::VectorXd center_, amp_, phase_;
  double omega_;
  double mu_, ell_, c0_;
};

/**
 * The benchmark's scalar cost:
 *   f(x;t) = ½ (x − b(t))² + log(1 + exp(x − a)),  b(t) = amp·cos((nu−1)t + phi).
 * Strong convexity 1, smoothness 1.25 (quadratic plus peak logistic
 * curvature ¼), drift bound c0 = amp·|nu−1|.  The softplus and its
 * derivatives are evaluated overflow-free for any argument.
 */
class LogisticTrackingCost final : public TimeVaryingCost {
 public:
  LogisticTrackingCost(double a, double phi, double amp = 2.5,
                       double nu = 0.039269908169872414);  // pi/80

  int dim() const override { return 1; }
  double value(const Eigen::VectorXd& x, double t) const override;
  void gradient(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override;
  void hessian(const Eigen::VectorXd& x, double t, Eigen::MatrixXd& out) const override;
  void time_grad(const Eigen::VectorXd& x, double t, Eigen::VectorXd& out) const override;
  double mu() const override { return 1.0; }
  double ell() const override { return 1.25; }
  double c0() const override;
  using TimeVaryingCost::gradient;
  using TimeVaryingCost::hessian;
  using TimeVaryingCost::time_grad;

  double target(double t) const;  // b(t)
  double a() const { return a_; }
  double phi() const { return phi_; }
  double amp() const { return amp_; }
  double nu() const { return nu_; }

 private:
  double a_, phi_, amp_, nu_;
};

/**
 * Taylor model of f one sampling period ahead, built at the current iterate:
 * the quadratic with H = ∇²f(x_k,t_k) and gradient
 *   ∇f̂(x) = ∇f(x_k,t_k) + H (x − x_k) + T_s ∂t∇f(x_k,t_k).
 * Exact when f is quadratic with a target linear in t.
 */
QuadraticCost build_prediction(const TimeVaryingCost& f, const Eigen::VectorXd& x_k,
                               double t_k, double t_s);

/// The benchmark's cost draw: a ~ U[−10,10], phi ~ U[0,2π), one cost per
/// node, interleaved per node from a single seeded generator.
std::vector<LogisticTrackingCost> sample_experiment_costs(int n_nodes, std::uint64_t seed,
                                                          double amp = 2.5,
                                                          double nu = 0.039269908169872414);

/// Convenience view: raw pointers over any concrete cost container.
template <class Cost>
std::vector<const TimeVaryingCost*> cost_pointers(const std::vector<Cost>& costs) {
  std::vector<const TimeVaryingCost*> out;
  out.reserve(costs.size());
  for (const auto& c : costs) out.push_back(&c);
  return out;
}

}  // namespace tvdradmm
