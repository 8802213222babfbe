#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdiff {

struct LaguerreValue {
  double value;
  double derivative;
};

/// L_n(x) and L_n'(x) with the normalization L_n(0) = 1, by the three-term recurrence.
///
/// Large n and x overflow double precision (L_n grows roughly like e^{x/2}); rule
/// generation uses an internally rescaled recurrence instead.
LaguerreValue laguerre_eval(int n, double x);

/// K-point Gauss-Laguerre rule for the weight e^{-u} on [0, inf).
///
/// Weights are kept in log form as well: for K beyond roughly 180 the trailing
/// weights fall below the smallest subnormal double and `weights()` reports 0 for
/// them, while `log_weights()` stays exact. `scaled_weights()` holds a_k e^{x_k},
/// formed in log space, which is what the diffusive evaluator sums against.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> log_weights);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> log_weights() const noexcept { return log_weights_; }
  std::span<const double> scaled_weights() const noexcept { return scaled_weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> log_weights_;
  std::vector<double> weights_;
  std::vector<double> scaled_weights_;
};

inline constexpr int kMaxLaguerreNodes = 500;

/// Nodes by Newton iteration on L_K, weights a_k = x_k / ((K+1)^2 L_{K+1}(x_k)^2).
/// Throws Error(NonConvergence) if a root does not converge or the weight sum drifts.
QuadratureRule gauss_laguerre_rule(int K);

/// Sum_k a_k f(x_k). Throws Error(NonFinite) if f is not finite at a node.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

LegendreRule gauss_legendre_rule(int n);

}  // namespace fracdiff
