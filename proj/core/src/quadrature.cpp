#include "fracdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracdiff/error.hpp"

namespace fracdiff {

namespace {

constexpr double kNewtonRelTol = 1e-14;
// Per-node stall tolerance, scaled by K in gauss_laguerre_rule.
constexpr double kNewtonStallTol = 2e-14;
constexpr int kNewtonMaxIter = 100;
constexpr double kRescaleThreshold = 1e150;

// L_n(x) and L_{n-1}(x), both equal to `value * exp(log_scale)` (resp. `previous`).
// Extended precision: near the smallest nodes L_{K+1} is O(1e-3) and the
// double recurrence loses too many digits for the weights at large K.
struct ScaledLaguerre {
  long double value;
  long double previous;
  double log_scale;
};

ScaledLaguerre laguerre_scaled(int n, long double x) {
  if (n == 0) return {1.0L, 0.0L, 0.0};
  long double prev = 1.0L;
  long double cur = 1.0L - x;
  double log_scale = 0.0;
  for (int j = 1; j < n; ++j) {
    const long double next = ((2.0L * j + 1.0L - x) * cur - j * prev) / (j + 1.0L);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleThreshold) {
      cur /= kRescaleThreshold;
      prev /= kRescaleThreshold;
      log_scale += std::log(kRescaleThreshold);
    }
  }
  return {cur, prev, log_scale};
}

}  // namespace

LaguerreValue laguerre_eval(int n, double x) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "laguerre_eval: n must be nonnegative");
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "laguerre_eval: x must be >= 0");
  if (n == 0) return {1.0, 0.0};
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  // x L_n' = n (L_n - L_{n-1}); at the origin L_n'(0) = -n.
  const double derivative = x == 0.0 ? -static_cast<double>(n) : n * (cur - prev) / x;
  return {cur, derivative};
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> log_weights)
    : nodes_(std::move(nodes)), log_weights_(std::move(log_weights)) {
  if (nodes_.size() != log_weights_.size() || nodes_.empty()) {
    throw Error(ErrorCode::MismatchedSizes, "QuadratureRule: nodes and weights must be nonempty and equal length");
  }
  weights_.reserve(nodes_.size());
  scaled_weights_.reserve(nodes_.size());
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    weights_.push_back(std::exp(log_weights_[k]));
    scaled_weights_.push_back(std::exp(nodes_[k] + log_weights_[k]));
  }
}

QuadratureRule gauss_laguerre_rule(int K) {
  if (K < 1 || K > kMaxLaguerreNodes) {
    throw Error(ErrorCode::InvalidArgument,
                "gauss_laguerre_rule: K must be in [1, " + std::to_string(kMaxLaguerreNodes) + "]");
  }
  const double n = K;
  std::vector<double> nodes(K);
  std::vector<double> log_weights(K);

  long double z = 0.0L;
  long double z_prev = 0.0L;
  long double z_prev2 = 0.0L;
  for (int i = 0; i < K; ++i) {
    if (i == 0) {
      z = 2.89L / (2.0L * n + 1.0L);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const long double ai = i - 1;
      z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - z_prev2);
    }

    // Converged at relative 1e-14, or once the step stalls at the rounding
    // level of the recurrence (which grows with K).
    bool converged = false;
    long double last_step = std::numeric_limits<long double>::infinity();
    const long double stall_tol = std::max(1e-12, kNewtonStallTol * n);
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
      const ScaledLaguerre l = laguerre_scaled(K, z);
      const long double derivative = n * (l.value - l.previous) / z;
      const long double dz = l.value / derivative;
      z -= dz;
      const long double step = std::abs(dz);
      if (step <= kNewtonRelTol * std::abs(z) ||
          (step <= stall_tol * std::abs(z) && step >= 0.5L * last_step)) {
        converged = true;
        break;
      }
      last_step = step;
    }
    if (!converged || !std::isfinite(z) || z <= 0.0L || (i > 0 && z <= z_prev)) {
      throw Error(ErrorCode::NonConvergence,
                  "gauss_laguerre_rule: Newton iteration failed for node " + std::to_string(i + 1) +
                      " of K=" + std::to_string(K));
    }
    nodes[i] = static_cast<double>(z);
    z_prev2 = z_prev;
    z_prev = z;

    const ScaledLaguerre next = laguerre_scaled(K + 1, z);
    const long double log_abs_next = std::log(std::abs(next.value)) + next.log_scale;
    log_weights[i] = static_cast<double>(std::log(z) - 2.0L * std::log(n + 1.0L) - 2.0L * log_abs_next);
  }

  QuadratureRule rule(std::move(nodes), std::move(log_weights));
  double sum = 0.0;
  for (double a : rule.weights()) sum += a;
  if (!(std::abs(sum - 1.0) <= 1e-13 * n)) {
    throw Error(ErrorCode::NonConvergence,
                "gauss_laguerre_rule: weight sum deviates from 1 for K=" + std::to_string(K));
  }
  return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double fx = f(nodes[k]);
    if (!std::isfinite(fx)) {
      throw Error(ErrorCode::NonFinite, "integrate: integrand is not finite at node " + std::to_string(k + 1));
    }
    sum += weights[k] * fx;
  }
  return sum;
}

LegendreRule gauss_legendre_rule(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "gauss_legendre_rule: n must be positive");
  LegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 1; j < n; ++j) {
        const double p2 = ((2.0 * j + 1.0) * z * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = z;
    for (int j = 1; j < n; ++j) {
      const double p2 = ((2.0 * j + 1.0) * z * p1 - j * p0) / (j + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace fracdiff
