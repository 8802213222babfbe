#include "fracdiff/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracdiff/error.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff {

namespace {

constexpr int kPanelPoints = 8;

void check_node(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::DomainError, "baseline: w must be positive and finite");
}

double log_rate(BaselineKind kind, double w, double alpha) {
  return kind == BaselineKind::YuanAgrawal ? 2.0 * std::log(w) : std::log(w) / q_d(alpha);
}

}  // namespace

std::string_view to_string(BaselineKind kind) {
  return kind == BaselineKind::YuanAgrawal ? "ya" : "chatterjee";
}

double baseline_decay_rate(BaselineKind kind, double w, double alpha) {
  check_node(w);
  return kind == BaselineKind::YuanAgrawal ? w * w : std::pow(w, 1.0 / q_d(alpha));
}

double baseline_source_coeff(BaselineKind kind, double w, double alpha) {
  check_node(w);
  const double c = kernel_coefficient(alpha);
  if (kind == BaselineKind::YuanAgrawal) {
    const double exponent = 2.0 * alpha - 2.0 * std::ceil(alpha) + 1.0;
    return 2.0 * c * std::pow(w, exponent);
  }
  return c / q_d(alpha);
}

double baseline_decay_exponent(BaselineKind kind, double alpha) {
  if (kind == BaselineKind::YuanAgrawal) return 2.0 * alpha - 2.0 * std::ceil(alpha) - 1.0;
  return -1.0 / q_d(alpha);
}

BaselineState make_baseline_state(BaselineKind kind, int K, const KernelParams& params) {
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "make_baseline_state: K must be positive");
  BaselineState state{kind, params.alpha, {}, {}, {}, {}, {}, params.a};
  state.nodes.reserve(K);
  state.weights.reserve(K);

  // Panels of up to kPanelPoints nodes on uniform subintervals of (0, 1).
  const int panels = (K + kPanelPoints - 1) / kPanelPoints;
  for (int p = 0; p < panels; ++p) {
    const int points = K / panels + (p < K % panels ? 1 : 0);
    const LegendreRule gl = gauss_legendre_rule(points);
    const double lo = static_cast<double>(p) / panels;
    const double half = 0.5 / panels;
    for (int i = 0; i < points; ++i) {
      const double u = lo + half * (1.0 + gl.nodes[i]);
      const double one_minus_u = 1.0 - u;
      state.nodes.push_back(u / one_minus_u);
      state.weights.push_back(gl.weights[i] * half / (one_minus_u * one_minus_u));
    }
  }
  state.values.assign(K, 0.0);
  state.rates.reserve(K);
  state.coeffs.reserve(K);
  for (double w : state.nodes) {
    state.rates.push_back(baseline_decay_rate(kind, w, params.alpha));
    state.coeffs.push_back(baseline_source_coeff(kind, w, params.alpha));
  }
  return state;
}

void baseline_step(BaselineState& state, double t_next, double y_m_next) {
  if (!(t_next > state.t_current)) {
    throw Error(ErrorCode::NonMonotoneTime, "baseline_step: t_next must exceed the current time");
  }
  if (!std::isfinite(y_m_next)) throw Error(ErrorCode::NonFinite, "baseline_step: source value is not finite");
  const double h = t_next - state.t_current;
  for (std::size_t k = 0; k < state.values.size(); ++k) {
    state.values[k] = (state.values[k] + h * state.coeffs[k] * y_m_next) / (1.0 + h * state.rates[k]);
  }
  state.t_current = t_next;
}

double baseline_evaluate(const BaselineState& state) {
  if (state.values.size() != state.weights.size()) {
    throw Error(ErrorCode::MismatchedSizes, "baseline_evaluate: values and weights differ in length");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < state.values.size(); ++k) sum += state.weights[k] * state.values[k];
  return sum;
}

double baseline_phi_direct(BaselineKind kind, const KernelParams& params, const SampledFunction& y, double w,
                           double t) {
  check_node(w);
  if (!y.deriv_m) throw Error(ErrorCode::InvalidArgument, "baseline_phi_direct: deriv_m is required");
  const double lr = log_rate(kind, w, params.alpha);
  // coeff * int f e^{-(t - tau) rate} = coeff / rate * (rate * int ...)
  const double scaled = scaled_relaxation_integral(y.deriv_m, params.a, t, lr);
  return baseline_source_coeff(kind, w, params.alpha) * std::exp(-lr) * scaled;
}

double baseline_phi_closed_form_linear(BaselineKind kind, const KernelParams& params, double w, double t) {
  check_node(w);
  const double length = t - params.a;
  if (length <= 0.0) return 0.0;
  const double rate = baseline_decay_rate(kind, w, params.alpha);
  return baseline_source_coeff(kind, w, params.alpha) * -std::expm1(-length * rate) / rate;
}

EvaluationResult compute_baseline_on_grid(BaselineKind kind, const KernelParams& params, const Grid& grid,
                                          const std::function<double(double)>& y_m, int K) {
  const auto& t = grid.points();
  if (std::abs(t.front() - params.a) > 1e-12 * std::max(1.0, std::abs(params.a))) {
    throw Error(ErrorCode::InvalidArgument, "grid must start at the starting point a");
  }
  BaselineState state = make_baseline_state(kind, K, params);
  EvaluationResult result;
  result.times.reserve(grid.steps());
  result.values.reserve(grid.steps());
  for (std::size_t j = 1; j < t.size(); ++j) {
    baseline_step(state, t[j], y_m(t[j]));
    result.times.push_back(t[j]);
    result.values.push_back(baseline_evaluate(state));
  }
  return result;
}

}  // namespace fracdiff
