#pragma once

#include <string_view>
#include <vector>

#include "fracdiff/evaluator.hpp"
#include "fracdiff/kernel.hpp"

namespace fracdiff {

/// Earlier diffusive representations over w in (0, inf), kept for comparison.
/// Both integrands decay only algebraically in w.
enum class BaselineKind { YuanAgrawal, Chatterjee };

std::string_view to_string(BaselineKind kind);

/// Relaxation rate of the per-node ODE: w^2 (Yuan-Agrawal) or w^{1/q_d} (Chatterjee).
double baseline_decay_rate(BaselineKind kind, double w, double alpha);

/// Source coefficient multiplying y^(m)(t):
///   Yuan-Agrawal: (-1)^floor(alpha) (2 sin(pi alpha) / pi) w^{2 alpha - 2 ceil(alpha) + 1}
///   Chatterjee:   (-1)^floor(alpha) sin(pi alpha) / (pi q_d)
double baseline_source_coeff(BaselineKind kind, double w, double alpha);

/// Leading exponent of the algebraic decay of phi(w, t) as w -> inf.
double baseline_decay_exponent(BaselineKind kind, double alpha);

struct BaselineState {
  BaselineKind kind;
  double alpha;
  std::vector<double> nodes;    // ascending, positive
  std::vector<double> weights;  // lambda_k
  std::vector<double> values;   // phi(w_k, t_current)
  std::vector<double> rates;
  std::vector<double> coeffs;
  double t_current;
};

/// K nodes from composite Gauss-Legendre on (0, 1) mapped by w = u / (1 - u).
BaselineState make_baseline_state(BaselineKind kind, int K, const KernelParams& params);

/// Backward Euler step of every node ODE to t_next.
void baseline_step(BaselineState& state, double t_next, double y_m_next);

/// Sum_k lambda_k phi(w_k). Throws Error(MismatchedSizes) on inconsistent state.
double baseline_evaluate(const BaselineState& state);

/// Oracle phi(w, t) by adaptive quadrature of the defining integral.
double baseline_phi_direct(BaselineKind kind, const KernelParams& params, const SampledFunction& y, double w,
                           double t);

/// phi(w, t) for y^(m) == 1: coeff(w) (1 - exp(-(t - a) rate(w))) / rate(w).
double baseline_phi_closed_form_linear(BaselineKind kind, const KernelParams& params, double w, double t);

/// Backward Euler over the grid, approximation recorded after each step.
EvaluationResult compute_baseline_on_grid(BaselineKind kind, const KernelParams& params, const Grid& grid,
                                          const std::function<double(double)>& y_m, int K);

}  // namespace fracdiff
