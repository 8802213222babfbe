#include "fracdiff/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracdiff/error.hpp"

namespace fracdiff {

namespace {

// exp(x) for x <= 0, with results that would be subnormal flushed to 0.
double exp_nonpositive(double x) {
  static const double kUnderflow = std::log(std::numeric_limits<double>::min());
  return x < kUnderflow ? 0.0 : std::exp(x);
}

void check_step(const DiffusiveState& state, double t_next, double y_m_next) {
  if (!(t_next > state.t_current)) {
    throw Error(ErrorCode::NonMonotoneTime, "step: t_next must exceed the current time");
  }
  if (!std::isfinite(y_m_next)) {
    throw Error(ErrorCode::NonFinite, "step: source value y^(m) is not finite");
  }
}

}  // namespace

DiffusiveState init_state(const QuadratureRule& rule, const KernelParams& params) {
  const std::size_t K = rule.size();
  const double q = params.q_d;
  DiffusiveState state;
  state.phi.assign(K, 0.0);
  state.phi_tilde.assign(K, 0.0);
  state.w.resize(K);
  state.w_tilde.resize(K);
  state.exp_w.resize(K);
  state.exp_w_q.resize(K);
  state.exp_neg_w_tilde.resize(K);
  state.exp_w_tilde_qm1.resize(K);
  state.t_current = params.a;

  const auto nodes = rule.nodes();
  for (std::size_t k = 0; k < K; ++k) {
    const double w = -nodes[k] / q;
    const double wt = nodes[k] / (1.0 - q);
    state.w[k] = w;
    state.w_tilde[k] = wt;
    state.exp_w[k] = exp_nonpositive(w);
    state.exp_w_q[k] = exp_nonpositive(w * q);
    state.exp_neg_w_tilde[k] = exp_nonpositive(-wt);
    state.exp_w_tilde_qm1[k] = exp_nonpositive(wt * (q - 1.0));
  }
  return state;
}

void step_backward_euler(DiffusiveState& state, double t_next, double y_m_next, const KernelParams& params) {
  check_step(state, t_next, y_m_next);
  const double h = t_next - state.t_current;
  const double hs = h * params.c_alpha * y_m_next;
  const std::size_t K = state.size();
  for (std::size_t k = 0; k < K; ++k) {
    state.phi[k] = (state.phi[k] + hs * state.exp_w_q[k]) / (1.0 + h * state.exp_w[k]);
    const double denom = state.exp_neg_w_tilde[k] + h;
    state.phi_tilde[k] = state.exp_neg_w_tilde[k] / denom * state.phi_tilde[k] + hs * state.exp_w_tilde_qm1[k] / denom;
  }
  state.t_current = t_next;
}

void step_trapezoidal(DiffusiveState& state, double t_next, double y_m_next, double y_m_prev,
                      const KernelParams& params) {
  check_step(state, t_next, y_m_next);
  if (!std::isfinite(y_m_prev)) {
    throw Error(ErrorCode::NonFinite, "step: source value y^(m) is not finite");
  }
  const double h = t_next - state.t_current;
  const double half_h = 0.5 * h;
  const double hs = half_h * params.c_alpha * (y_m_next + y_m_prev);
  const std::size_t K = state.size();
  for (std::size_t k = 0; k < K; ++k) {
    // Amplification factors are formed first so that |factor| <= 1 survives rounding.
    const double damp = half_h * state.exp_w[k];
    const double den = 1.0 + damp;
    state.phi[k] = (1.0 - damp) / den * state.phi[k] + hs * state.exp_w_q[k] / den;
    const double e = state.exp_neg_w_tilde[k];
    const double den_tilde = e + half_h;
    state.phi_tilde[k] = (e - half_h) / den_tilde * state.phi_tilde[k] + hs * state.exp_w_tilde_qm1[k] / den_tilde;
  }
  state.t_current = t_next;
}

double euler_update_literal(double phi, double w, double q_d, double h, double source) {
  return (phi + h * std::exp(w * q_d) * source) / (1.0 + h * std::exp(w));
}

double euler_update_safe(double phi, double w, double q_d, double h, double source) {
  const double e = std::exp(-w);
  return e / (e + h) * phi + h * std::exp(w * (q_d - 1.0)) / (e + h) * source;
}

double trapezoid_update_literal(double phi, double w, double q_d, double h, double source_sum) {
  const double damp = 0.5 * h * std::exp(w);
  return ((1.0 - damp) * phi + 0.5 * h * std::exp(w * q_d) * source_sum) / (1.0 + damp);
}

double trapezoid_update_safe(double phi, double w, double q_d, double h, double source_sum) {
  const double e = std::exp(-w);
  const double half_h = 0.5 * h;
  return (e - half_h) / (e + half_h) * phi + half_h * std::exp(w * (q_d - 1.0)) / (e + half_h) * source_sum;
}

}  // namespace fracdiff
