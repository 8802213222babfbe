#pragma once

#include <cstddef>
#include <vector>

#include "fracdiff/kernel.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff {

/// Per-node values of the diffusive kernel for the current time.
///
/// Node k carries two ODE solutions: phi[k] at w[k] = -x_k / q_d (a slow, nonstiff
/// mode) and phi_tilde[k] at w_tilde[k] = x_k / (1 - q_d) (a stiff mode whose rate
/// e^{w_tilde} overflows for large nodes). The evolving memory is phi and
/// phi_tilde, 2K reals; everything else is fixed at construction. Stepping never
/// allocates.
struct DiffusiveState {
  std::vector<double> phi;
  std::vector<double> phi_tilde;
  std::vector<double> w;
  std::vector<double> w_tilde;
  double t_current = 0.0;

  // Exponentials of the node parameters, all in [0, 1]:
  // e^{w}, e^{w q_d}, e^{-w_tilde} and e^{w_tilde (q_d - 1)}.
  std::vector<double> exp_w;
  std::vector<double> exp_w_q;
  std::vector<double> exp_neg_w_tilde;
  std::vector<double> exp_w_tilde_qm1;

  std::size_t size() const noexcept { return phi.size(); }
  std::size_t evolving_reals() const noexcept { return phi.size() + phi_tilde.size(); }
};

DiffusiveState init_state(const QuadratureRule& rule, const KernelParams& params);

/// Backward Euler step to t_next. `y_m_next` is y^(m)(t_next).
/// Throws Error(NonMonotoneTime) unless t_next > state.t_current.
void step_backward_euler(DiffusiveState& state, double t_next, double y_m_next, const KernelParams& params);

/// Trapezoidal step to t_next; `y_m_prev` is y^(m)(state.t_current).
void step_trapezoidal(DiffusiveState& state, double t_next, double y_m_next, double y_m_prev,
                      const KernelParams& params);

// Single-node update maps. `source` is c_alpha times the appropriate y^(m)
// value (the sum of both end values for the trapezoidal rule).

/// Backward Euler as written, for a node with exponent w.
double euler_update_literal(double phi, double w, double q_d, double h, double source);
/// Backward Euler multiplied through by e^{-w}; free of positive exponentials.
double euler_update_safe(double phi, double w, double q_d, double h, double source);
/// Trapezoidal rule as written.
double trapezoid_update_literal(double phi, double w, double q_d, double h, double source_sum);
/// Trapezoidal rule multiplied through by e^{-w}.
double trapezoid_update_safe(double phi, double w, double q_d, double h, double source_sum);

}  // namespace fracdiff
