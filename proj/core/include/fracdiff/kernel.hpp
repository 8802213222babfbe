#pragma once

#include <functional>
#include <span>
#include <utility>

namespace fracdiff {

/// Order-dependent constants of the diffusive kernel.
///
/// For a noninteger order alpha > 0 with m = ceil(alpha):
///   q_d     = alpha - m + 1, which lies in (0, 1)
///   c_alpha = (-1)^floor(alpha) sin(alpha pi) / pi
/// The kernel phi(w, t) = c_alpha e^{w q_d} int_a^t y^(m)(tau) exp(-(t - tau) e^w) dtau
/// then decays like e^{w (q_d - 1)} as w -> +inf and like e^{w q_d} as w -> -inf.
struct KernelParams {
  double alpha;
  double a;
  double T;
  double q_d;
  double c_alpha;
  int m;

  /// Throws Error(IntegerOrder) for alpha within 1e-12 of an integer and
  /// Error(InvalidArgument) for alpha <= 0 or T <= 0.
  static KernelParams make(double alpha, double a = 0.0, double T = 1.0);
};

/// alpha - ceil(alpha) + 1. Throws Error(IntegerOrder) near integers.
double q_d(double alpha);

/// c_alpha = (-1)^floor(alpha) sin(alpha pi) / pi.
double kernel_coefficient(double alpha);

/// The caller supplies derivatives of y; nothing is differentiated internally.
struct SampledFunction {
  std::function<double(double)> deriv_m;
  std::function<double(double)> deriv_m_minus_1;  // optional, decay diagnostics only
};

/// rate * int_a^t f(tau) exp(-(t - tau) rate) dtau with rate = e^{log_rate}.
///
/// Evaluated after the substitution s = (t - tau) rate on a graded partition
/// (geometric toward the boundary layer at tau = t and toward tau = a), then
/// composite 10-point Gauss-Legendre with panel doubling until two successive
/// estimates agree to relative 1e-12. Throws Error(ToleranceNotMet) once the
/// refinement passes 2^20 panels.
double scaled_relaxation_integral(const std::function<double(double)>& f, double a, double t, double log_rate);

/// Oracle evaluation of phi(w, t) by adaptive quadrature. Requires a <= t <= a + T.
double phi_direct(const KernelParams& params, const SampledFunction& y, double w, double t);

/// Closed form of phi for y^(m) == 1:
/// c_alpha e^{w (q_d - 1)} (1 - exp(-(t - a) e^w)), overflow-free for any w.
double phi_closed_form_linear(const KernelParams& params, double w, double t);

/// Least-squares slope of ln(value) against the abscissa.
/// Requires at least two samples with positive values; throws
/// Error(DegenerateFit) when every abscissa is equal.
double decay_slope(std::span<const std::pair<double, double>> samples);

}  // namespace fracdiff
