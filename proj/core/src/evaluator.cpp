#include "fracdiff/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracdiff/error.hpp"

namespace fracdiff {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorCode::InvalidArgument, "Grid: need at least two points");
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (!std::isfinite(points_[j])) throw Error(ErrorCode::NonFinite, "Grid: points must be finite");
    if (j > 0 && !(points_[j] > points_[j - 1])) {
      throw Error(ErrorCode::NonMonotoneTime, "Grid: points must be strictly increasing");
    }
  }
}

Grid Grid::uniform(double a, double t_end, int N) {
  if (N < 1 || !(t_end > a)) throw Error(ErrorCode::InvalidArgument, "Grid::uniform: need N >= 1 and t_end > a");
  std::vector<double> points(N + 1);
  const double h = (t_end - a) / N;
  for (int j = 0; j < N; ++j) points[j] = a + j * h;
  points[N] = t_end;
  return Grid(std::move(points));
}

Grid Grid::geometric(double a, double t_end, int N, double ratio) {
  if (N < 1 || !(t_end > a) || !(ratio > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Grid::geometric: need N >= 1, t_end > a, ratio > 0");
  }
  // Step lengths h_0 r^j, j = 0..N-1, summing to t_end - a.
  const double total = ratio == 1.0 ? N : (std::pow(ratio, N) - 1.0) / (ratio - 1.0);
  const double h0 = (t_end - a) / total;
  std::vector<double> points(N + 1);
  points[0] = a;
  double h = h0;
  for (int j = 1; j < N; ++j) {
    points[j] = points[j - 1] + h;
    h *= ratio;
  }
  points[N] = t_end;
  return Grid(std::move(points));
}

double Grid::max_step() const {
  double h = 0.0;
  for (std::size_t j = 1; j < points_.size(); ++j) h = std::max(h, points_[j] - points_[j - 1]);
  return h;
}

std::string_view to_string(Stepper stepper) {
  return stepper == Stepper::BackwardEuler ? "euler" : "trapezoid";
}

double evaluate_derivative(const DiffusiveState& state, const QuadratureRule& rule, const KernelParams& params) {
  if (state.phi.size() != rule.size() || state.phi_tilde.size() != rule.size()) {
    throw Error(ErrorCode::MismatchedSizes, "evaluate_derivative: state and rule disagree on K");
  }
  const auto scaled = rule.scaled_weights();
  const double inv_q = 1.0 / params.q_d;
  const double inv_qc = 1.0 / (1.0 - params.q_d);
  double sum = 0.0;
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    sum += scaled[k] * (state.phi[k] * inv_q + state.phi_tilde[k] * inv_qc);
  }
  return sum;
}

void compute_caputo_streaming(const KernelParams& params, const Grid& grid, const std::function<double(double)>& y_m,
                              const QuadratureRule& rule, Stepper stepper,
                              const std::function<void(double, double)>& sink) {
  const auto& t = grid.points();
  const double slack = 1e-12 * std::max({1.0, std::abs(params.a), std::abs(params.a + params.T)});
  if (std::abs(t.front() - params.a) > slack) {
    throw Error(ErrorCode::InvalidArgument, "grid must start at the starting point a");
  }
  if (t.back() > params.a + params.T + slack) {
    throw Error(ErrorCode::InvalidArgument, "grid must end at or before a + T");
  }
  DiffusiveState state = init_state(rule, params);
  double previous = stepper == Stepper::Trapezoidal ? y_m(t.front()) : 0.0;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double current = y_m(t[j]);
    if (stepper == Stepper::BackwardEuler) {
      step_backward_euler(state, t[j], current, params);
    } else {
      step_trapezoidal(state, t[j], current, previous, params);
      previous = current;
    }
    sink(t[j], evaluate_derivative(state, rule, params));
  }
}

EvaluationResult compute_caputo_on_grid(const KernelParams& params, const Grid& grid,
                                        const std::function<double(double)>& y_m, int K, Stepper stepper) {
  const QuadratureRule rule = gauss_laguerre_rule(K);
  EvaluationResult result;
  result.times.reserve(grid.steps());
  result.values.reserve(grid.steps());
  compute_caputo_streaming(params, grid, y_m, rule, stepper, [&](double t, double value) {
    result.times.push_back(t);
    result.values.push_back(value);
  });
  return result;
}

double max_error(const EvaluationResult& result, const std::function<double(double)>& exact) {
  if (result.values.empty() || result.values.size() != result.times.size()) {
    throw Error(ErrorCode::MismatchedSizes, "max_error: result must be nonempty with matching lengths");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < result.values.size(); ++j) {
    const double err = std::abs(result.values[j] - exact(result.times[j]));
    if (std::isnan(err)) return err;
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace fracdiff
