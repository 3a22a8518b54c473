#include "tvdradmm/costs.hpp"

#include <cmath>
#include <stdexcept>

#include "tvdradmm/random.hpp"

namespace tvdradmm {

namespace {

// log(1 + e^u) without overflow: for u > 0 rewrite as u + log(1 + e^-u).
double softplus(double u) { return u > 0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

// 1/(1 + e^-u); saturates cleanly at the representable extremes.
double sigmoid(double u) {
  if (u >= 0) {
    double e = std::exp(-u);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(u);
  return e / (1.0 + e);
}

void check_dim(const Eigen::VectorXd& x, int n, const char* who) {
  if (x.size() != n) throw std::invalid_argument(std::string(who) + ": x has wrong dimension");
}

}  // namespace

QuadraticCost::QuadraticCost(Eigen::MatrixXd H, Eigen::VectorXd g, double c)
    : H_(std::move(H)), g_(std::move(g)), c_(c) {
  if (H_.rows() != H_.cols() || H_.rows() != g_.size())
    throw std::invalid_argument("QuadraticCost: H/g dimensions disagree");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H_, Eigen::EigenvaluesOnly);
  mu_ = es.eigenvalues().minCoeff();
  ell_ = es.eigenvalues().maxCoeff();
}

double QuadraticCost::value(const Eigen::VectorXd& x, double) const {
  check_dim(x, dim(), "QuadraticCost::value");
  return 0.5 * x.dot(H_ * x) + g_.dot(x) + c_;
}

void QuadraticCost::gradient(const Eigen::VectorXd& x, double, Eigen::VectorXd& out) const {
  check_dim(x, dim(), "QuadraticCost::gradient");
  out = H_ * x + g_;
}

void QuadraticCost::hessian(const Eigen::VectorXd&, double, Eigen::MatrixXd& out) const {
  out = H_;
}

void QuadraticCost::time_grad(const Eigen::VectorXd&, double, Eigen::VectorXd& out) const {
  out = Eigen::VectorXd::Zero(dim());
}

QuadraticTrackingCost::QuadraticTrackingCost(Eigen::MatrixXd H, Eigen::VectorXd center,
                                             Eigen::VectorXd amp, Eigen::VectorXd phase,
                                             double omega)
    : H_(std::move(H)),
      center_(std::move(center)),
      amp_(std::move(amp)),
      phase_(std::move(phase)),
      omega_(omega) {
  const long n = center_.size();
  if (H_.rows() != n || H_.cols() != n || amp_.size() != n || phase_.size() != n)
    throw std::invalid_argument("QuadraticTrackingCost: dimensions disagree");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H_, Eigen::EigenvaluesOnly);
  mu_ = es.eigenvalues().minCoeff();
  ell_ = es.eigenvalues().maxCoeff();
  // ∂t∇f = −H ḃ, ‖ḃ(t)‖ ≤ |omega|·‖amp‖, so ell·|omega|·‖amp‖ bounds the drift.
  c0_ = ell_ * std::abs(omega_) * amp_.norm();
}

Eigen::VectorXd QuadraticTrackingCost::target(double t) const {
  return center_ + amp_.cwiseProduct((omega_ * t + phase_.array()).sin().matrix());
}

double QuadraticTrackingCost::value(const Eigen::VectorXd& x, double t) const {
  check_dim(x, dim(), "QuadraticTrackingCost::value");
  Eigen::VectorXd d = x - target(t);
  return 0.5 * d.dot(H_ * d);
}

void QuadraticTrackingCost::gradient(const Eigen::VectorXd& x, double t,
                                     Eigen::VectorXd& out) const {
  check_dim(x, dim(), "QuadraticTrackingCost::gradient");
  out = H_ * (x - target(t));
}

void QuadraticTrackingCost::hessian(const Eigen::VectorXd&, double, Eigen::MatrixXd& out) const {
  out = H_;
}

void QuadraticTrackingCost::time_grad(const Eigen::VectorXd&, double t,
                                      Eigen::VectorXd& out) const {
  Eigen::VectorXd bdot =
      amp_.cwiseProduct((omega_ * t + phase_.array()).cos().matrix()) * omega_;
  out = -(H_ * bdot);
}

LogisticTrackingCost::LogisticTrackingCost(double a, double phi, double amp, double nu)
    : a_(a), phi_(phi), amp_(amp), nu_(nu) {}

double LogisticTrackingCost::target(double t) const {
  return amp_ * std::cos((nu_ - 1.0) * t + phi_);
}

double LogisticTrackingCost::c0() const { return amp_ * std::abs(nu_ - 1.0); }

double LogisticTrackingCost::value(const Eigen::VectorXd& x, double t) const {
  check_dim(x, 1, "LogisticTrackingCost::value");
  double d = x[0] - target(t);
  return 0.5 * d * d + softplus(x[0] - a_);
}

void LogisticTrackingCost::gradient(const Eigen::VectorXd& x, double t,
                                    Eigen::VectorXd& out) const {
  check_dim(x, 1, "LogisticTrackingCost::gradient");
  out.resize(1);
  out[0] = (x[0] - target(t)) + sigmoid(x[0] - a_);
}

void LogisticTrackingCost::hessian(const Eigen::VectorXd& x, double, Eigen::MatrixXd& out) const {
  check_dim(x, 1, "LogisticTrackingCost::hessian");
  double s = sigmoid(x[0] - a_);
  out.resize(1, 1);
  out(0, 0) = 1.0 + s * (1.0 - s);
}

void LogisticTrackingCost::time_grad(const Eigen::VectorXd& x, double t,
                                     Eigen::VectorXd& out) const {
  check_dim(x, 1, "LogisticTrackingCost::time_grad");
  // ∂t gradient = −ḃ(t)
  out.resize(1);
  out[0] = amp_ * (nu_ - 1.0) * std::sin((nu_ - 1.0) * t + phi_);
}

QuadraticCost build_prediction(const TimeVaryingCost& f, const Eigen::VectorXd& x_k, double t_k,
                               double t_s) {
  Eigen::MatrixXd H = f.hessian(x_k, t_k);
  Eigen::VectorXd grad = f.gradient(x_k, t_k);
  Eigen::VectorXd tg = f.time_grad(x_k, t_k);
  Eigen::VectorXd g = grad - H * x_k + t_s * tg;
  // offset chosen so the surrogate matches f's value at the expansion point
  double c = f.value(x_k, t_k) - (0.5 * x_k.dot(H * x_k) + g.dot(x_k));
  return QuadraticCost(std::move(H), std::move(g), c);
}

std::vector<LogisticTrackingCost> sample_experiment_costs(int n_nodes, std::uint64_t seed,
                                                          double amp, double nu) {
  std::mt19937_64 rng(seed);
  std::vector<LogisticTrackingCost> costs;
  costs.reserve(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    double a = uniform(rng, -10.0, 10.0);
    double phi = uniform(rng, 0.0, 2.0 * 3.14159265358979323846);
    costs.emplace_back(a, phi, amp, nu);
  }
  return costs;
}

}  // namespace tvdradmm
