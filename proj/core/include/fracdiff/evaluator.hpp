#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "fracdiff/kernel.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/stepper.hpp"

namespace fracdiff {

/// Strictly increasing time points t_0 < t_1 < ... < t_N. Nonuniform spacing is fine.
class Grid {
 public:
  /// Throws Error(InvalidArgument) for fewer than two points and
  /// Error(NonMonotoneTime) if the points are not strictly increasing.
  explicit Grid(std::vector<double> points);

  static Grid uniform(double a, double t_end, int N);
  /// N steps whose lengths grow geometrically by `ratio` from a to t_end.
  static Grid geometric(double a, double t_end, int N, double ratio);

  const std::vector<double>& points() const noexcept { return points_; }
  int steps() const noexcept { return static_cast<int>(points_.size()) - 1; }
  double max_step() const;

 private:
  std::vector<double> points_;
};

/// Approximations of the Caputo derivative at t_1 .. t_N (t_0 = a is omitted).
struct EvaluationResult {
  std::vector<double> times;
  std::vector<double> values;
};

enum class Stepper { BackwardEuler, Trapezoidal };

std::string_view to_string(Stepper stepper);

/// Sum_k a_k e^{x_k} (phi_k / q_d + phi_tilde_k / (1 - q_d)).
/// Throws Error(MismatchedSizes) if the state was built from a rule of another size.
double evaluate_derivative(const DiffusiveState& state, const QuadratureRule& rule, const KernelParams& params);

/// Runs the full scheme: build the K-node rule, initialize, then step along the
/// grid recording the approximation after every step. O(N K) work, O(K) memory.
EvaluationResult compute_caputo_on_grid(const KernelParams& params, const Grid& grid,
                                        const std::function<double(double)>& y_m, int K, Stepper stepper);

/// Streaming variant: `sink(t_j, value_j)` is called after every step and
/// nothing is stored. The rule is supplied by the caller.
void compute_caputo_streaming(const KernelParams& params, const Grid& grid, const std::function<double(double)>& y_m,
                              const QuadratureRule& rule, Stepper stepper,
                              const std::function<void(double, double)>& sink);

/// max_j |values_j - exact(times_j)|.
double max_error(const EvaluationResult& result, const std::function<double(double)>& exact);

}  // namespace fracdiff
