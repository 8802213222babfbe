#pragma once

// Test-only reference computations, independent of the library code paths.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Gauss-Laguerre nodes and weights from the eigen-decomposition of the Jacobi matrix.
inline std::pair<std::vector<double>, std::vector<double>> golub_welsch_laguerre(int K) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < K; ++i) {
    J(i, i) = 2.0 * i + 1.0;
    if (i + 1 < K) {
      J(i, i + 1) = i + 1.0;
      J(i + 1, i) = i + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  std::vector<double> nodes(K);
  std::vector<double> weights(K);
  for (int k = 0; k < K; ++k) {
    nodes[k] = solver.eigenvalues()(k);
    const double v = solver.eigenvectors()(0, k);
    weights[k] = v * v;
  }
  return {nodes, weights};
}

/// Composite 5-point Gauss-Legendre on [lo, hi] with `panels` equal panels.
inline double gauss5(const std::function<double(double)>& f, double lo, double hi, int panels) {
  static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                              0.9061798459386640};
  static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                              0.2369268850561891};
  const double width = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (int i = 0; i < 5; ++i) sum += w[i] * f(mid + 0.5 * width * x[i]);
  }
  return 0.5 * width * sum;
}

/// Caputo derivative of order alpha in (0, 1) from a = 0 by direct quadrature:
/// 1/Gamma(1-alpha) int_0^t y'(tau) (t - tau)^{-alpha} dtau, after the substitution
/// t - tau = r^{1/(1-alpha)} that removes the kernel singularity. The remaining
/// endpoint r_max (tau = 0) is resolved by geometric grading.
inline double caputo_by_quadrature(double alpha, const std::function<double(double)>& dy, double t) {
  const double beta = 1.0 / (1.0 - alpha);
  const double r_max = std::pow(t, 1.0 - alpha);
  auto g = [&](double r) { return dy(std::max(0.0, t - std::pow(r, beta))); };
  double sum = gauss5(g, 0.0, 0.5 * r_max, 400);
  double lo = 0.5 * r_max;
  for (int level = 2; level <= 45; ++level) {
    const double hi = r_max - r_max * std::ldexp(1.0, -level);
    sum += gauss5(g, lo, hi, 8);
    lo = hi;
  }
  sum += gauss5(g, lo, r_max, 8);
  return beta * sum / std::tgamma(1.0 - alpha);
}

}  // namespace oracle
