#include "fracdiff/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracdiff/error.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff {

namespace {

constexpr double kIntegerOrderTol = 1e-12;
constexpr double kOracleRelTol = 1e-12;
constexpr long kOracleMaxPanels = 1L << 20;
constexpr int kOracleGaussPoints = 10;
// Beyond s = 64 the weight e^{-s} is below 1.7e-28 and the remainder is dropped.
constexpr double kLayerCutoff = 64.0;

const LegendreRule& oracle_rule() {
  static const LegendreRule rule = gauss_legendre_rule(kOracleGaussPoints);
  return rule;
}

// J = exp(log_scale) * value.
struct ScaledValue {
  double log_scale;
  double value;
};

// Composite Gauss-Legendre over the base partition `breaks`, each base panel
// split into 2^level equal pieces, doubling until successive sums agree.
template <typename Integrand>
double doubling_quadrature(const std::vector<double>& breaks, Integrand&& g) {
  const LegendreRule& gl = oracle_rule();
  const long base = static_cast<long>(breaks.size()) - 1;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (long pieces = 1; base * pieces <= kOracleMaxPanels; pieces *= 2) {
    double sum = 0.0;
    double abs_sum = 0.0;
    for (long b = 0; b < base; ++b) {
      const double lo = breaks[b];
      const double width = (breaks[b + 1] - lo) / static_cast<double>(pieces);
      for (long p = 0; p < pieces; ++p) {
        const double left = lo + width * static_cast<double>(p);
        const double half = 0.5 * width;
        const double mid = left + half;
        for (int i = 0; i < kOracleGaussPoints; ++i) {
          const double contribution = gl.weights[i] * half * g(mid + half * gl.nodes[i]);
          sum += contribution;
          abs_sum += std::abs(contribution);
        }
      }
    }
    if (!std::isfinite(sum)) {
      throw Error(ErrorCode::NonFinite, "oracle quadrature: integrand is not finite");
    }
    if (!std::isnan(previous) && std::abs(sum - previous) <= kOracleRelTol * abs_sum) {
      return sum;
    }
    previous = sum;
  }
  throw Error(ErrorCode::ToleranceNotMet, "oracle quadrature: panel budget exhausted");
}

ScaledValue relaxation_parts(const std::function<double(double)>& f, double a, double t, double log_rate) {
  const double length = t - a;
  if (length <= 0.0) return {0.0, 0.0};
  const double log_length = std::log(length);
  const double log_s_max = log_length + log_rate;

  if (log_s_max <= std::log(kLayerCutoff)) {
    // tau = t - length * v, v in [0, 1]; J = S * int_0^1 f(t - length v) e^{-S v} dv.
    const double s_max = std::exp(log_s_max);
    std::vector<double> breaks{0.0};
    const int toward_layer = std::clamp(static_cast<int>(std::ceil(log_s_max / std::numbers::ln2)) + 4, 1, 60);
    for (int j = toward_layer; j >= 2; --j) breaks.push_back(std::ldexp(1.0, -j));
    breaks.push_back(0.5);
    for (int j = 2; j <= 40; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -j));
    breaks.push_back(1.0);
    const double integral = doubling_quadrature(breaks, [&](double v) {
      return f(t - length * v) * std::exp(-s_max * v);
    });
    return {log_s_max, integral};
  }

  // s = (t - tau) rate, s in [0, kLayerCutoff].
  const double inv_rate = std::exp(-log_rate);
  std::vector<double> breaks{0.0, 0.0625, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, kLayerCutoff};
  const double integral = doubling_quadrature(breaks, [&](double s) {
    return f(t - s * inv_rate) * std::exp(-s);
  });
  return {0.0, integral};
}

void check_time(const KernelParams& params, double t) {
  const double slack = 1e-12 * std::max({1.0, std::abs(params.a), std::abs(params.a + params.T)});
  if (!(t >= params.a - slack && t <= params.a + params.T + slack)) {
    throw Error(ErrorCode::DomainError, "kernel: t must lie in [a, a + T]");
  }
}

}  // namespace

double q_d(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "order alpha must be positive and finite");
  }
  if (std::abs(alpha - std::round(alpha)) <= kIntegerOrderTol) {
    throw Error(ErrorCode::IntegerOrder, "order alpha must not be an integer");
  }
  return alpha - std::ceil(alpha) + 1.0;
}

double kernel_coefficient(double alpha) {
  const double sign = static_cast<long long>(std::floor(alpha)) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::sin(alpha * std::numbers::pi) / std::numbers::pi;
}

KernelParams KernelParams::make(double alpha, double a, double T) {
  const double q = fracdiff::q_d(alpha);
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "starting point a must be finite");
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorCode::InvalidArgument, "horizon T must be positive");
  return KernelParams{alpha, a, T, q, kernel_coefficient(alpha), static_cast<int>(std::ceil(alpha))};
}

double scaled_relaxation_integral(const std::function<double(double)>& f, double a, double t, double log_rate) {
  const ScaledValue parts = relaxation_parts(f, a, t, log_rate);
  return parts.value == 0.0 ? 0.0 : std::exp(parts.log_scale) * parts.value;
}

double phi_direct(const KernelParams& params, const SampledFunction& y, double w, double t) {
  check_time(params, t);
  if (!y.deriv_m) throw Error(ErrorCode::InvalidArgument, "phi_direct: deriv_m is required");
  const ScaledValue parts = relaxation_parts(y.deriv_m, params.a, t, w);
  if (parts.value == 0.0) return 0.0;
  // c e^{w q} * (J / rate) = c e^{w (q - 1)} J
  return params.c_alpha * std::exp(w * (params.q_d - 1.0) + parts.log_scale) * parts.value;
}

double phi_closed_form_linear(const KernelParams& params, double w, double t) {
  check_time(params, t);
  const double length = t - params.a;
  if (length <= 0.0) return 0.0;
  const double log_s = w + std::log(length);
  if (log_s < std::log(1e-8)) {
    // 1 - e^{-s} = s (1 - s/2 + O(s^2)), folded into the exponent to avoid overflow.
    const double s = std::exp(log_s);
    return params.c_alpha * std::exp(w * params.q_d + std::log(length)) * (1.0 - 0.5 * s + s * s / 6.0);
  }
  return params.c_alpha * std::exp(w * (params.q_d - 1.0)) * -std::expm1(-std::exp(log_s));
}

double decay_slope(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "decay_slope: need at least two samples");
  double mean_w = 0.0;
  double mean_y = 0.0;
  for (const auto& [w, value] : samples) {
    if (!(value > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay_slope: values must be positive");
    mean_w += w;
    mean_y += std::log(value);
  }
  const double n = static_cast<double>(samples.size());
  mean_w /= n;
  mean_y /= n;
  double sww = 0.0;
  double swy = 0.0;
  for (const auto& [w, value] : samples) {
    sww += (w - mean_w) * (w - mean_w);
    swy += (w - mean_w) * (std::log(value) - mean_y);
  }
  if (sww == 0.0) throw Error(ErrorCode::DegenerateFit, "decay_slope: all abscissae are equal");
  return swy / sww;
}

}  // namespace fracdiff
