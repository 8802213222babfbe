#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracdiff/error.hpp"
#include "fracdiff/evaluator.hpp"
#include "fracdiff/stepper.hpp"
#include "oracles.hpp"

using namespace fracdiff;

TEST_CASE("init_state node exponents") {
  const auto p04 = KernelParams::make(0.4);
  const auto s1 = init_state(gauss_laguerre_rule(1), p04);
  REQUIRE(s1.size() == 1);
  CHECK(s1.w[0] == doctest::Approx(-2.5));
  CHECK(s1.w_tilde[0] == doctest::Approx(1.0 / 0.6));
  CHECK(s1.phi[0] == 0.0);
  CHECK(s1.phi_tilde[0] == 0.0);
  CHECK(s1.t_current == 0.0);

  const auto p05 = KernelParams::make(0.5, 2.0, 1.0);
  const auto s2 = init_state(gauss_laguerre_rule(2), p05);
  const double r2 = std::numbers::sqrt2;
  CHECK(s2.w[0] == doctest::Approx(-2.0 * (2.0 - r2)));
  CHECK(s2.w[1] == doctest::Approx(-2.0 * (2.0 + r2)));
  CHECK(s2.w_tilde[0] == doctest::Approx(2.0 * (2.0 - r2)));
  CHECK(s2.w_tilde[1] == doctest::Approx(2.0 * (2.0 + r2)));
  CHECK(s2.t_current == 2.0);
  CHECK(evaluate_derivative(s2, gauss_laguerre_rule(2), p05) == 0.0);

  for (double alpha : {0.1, 0.5, 0.9}) {
    const auto s = init_state(gauss_laguerre_rule(50), KernelParams::make(alpha));
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s.w[k] < 0.0);
      CHECK(s.w_tilde[k] > 0.0);
    }
    CHECK(s.evolving_reals() == 100);
  }
}

TEST_CASE("zero source keeps the state at zero") {
  const auto p = KernelParams::make(0.4, 0.0, 1.0);
  const auto rule = gauss_laguerre_rule(20);
  auto euler = init_state(rule, p);
  auto trap = init_state(rule, p);
  for (int j = 1; j <= 50; ++j) {
    step_backward_euler(euler, j / 50.0, 0.0, p);
    step_trapezoidal(trap, j / 50.0, 0.0, 0.0, p);
  }
  for (std::size_t k = 0; k < rule.size(); ++k) {
    CHECK(euler.phi[k] == 0.0);
    CHECK(euler.phi_tilde[k] == 0.0);
    CHECK(trap.phi[k] == 0.0);
    CHECK(trap.phi_tilde[k] == 0.0);
  }
}

TEST_CASE("single backward Euler step, K = 1, by hand") {
  const auto p = KernelParams::make(0.4, 0.0, 1.0);
  auto s = init_state(gauss_laguerre_rule(1), p);
  step_backward_euler(s, 1.0, 1.0, p);
  const double c = std::sin(0.4 * std::numbers::pi) / std::numbers::pi;
  // w = -2.5: phi = c e^{-1} / (1 + e^{-2.5})
  const double phi = c * std::exp(-1.0) / (1.0 + std::exp(-2.5));
  // w~ = 1/0.6: phi~ = c e^{w~ q} / (1 + e^{w~})
  const double wt = 1.0 / 0.6;
  const double phi_tilde = c * std::exp(wt * 0.4) / (1.0 + std::exp(wt));
  CHECK(oracle::rel_diff(s.phi[0], phi) < 1e-15);
  CHECK(oracle::rel_diff(s.phi_tilde[0], phi_tilde) < 1e-15);
  CHECK(s.t_current == 1.0);
}

TEST_CASE("non-monotone time is rejected") {
  const auto p = KernelParams::make(0.4, 0.0, 1.0);
  auto s = init_state(gauss_laguerre_rule(4), p);
  step_backward_euler(s, 0.5, 1.0, p);
  for (double t : {0.5, 0.25}) {
    try {
      step_backward_euler(s, t, 1.0, p);
      FAIL("expected NonMonotoneTime");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonMonotoneTime);
    }
    CHECK_THROWS_AS(step_trapezoidal(s, t, 1.0, 1.0, p), Error);
  }
  CHECK_THROWS_AS(step_backward_euler(s, 0.75, std::nan(""), p), Error);
}

TEST_CASE("largest stiff node stays finite where e^{w~} overflows") {
  const auto p = KernelParams::make(0.9, 0.0, 1.0);
  const auto rule = gauss_laguerre_rule(200);
  auto s = init_state(rule, p);
  REQUIRE(std::isinf(std::exp(s.w_tilde.back())));
  for (int j = 1; j <= 100; ++j) step_backward_euler(s, j / 100.0, 1.0, p);
  CHECK(std::isfinite(s.phi_tilde.back()));
  CHECK(std::isfinite(s.phi.back()));
}

TEST_CASE("safe and literal single-node updates agree") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> w_dist(-50.0, 690.0);
  std::uniform_real_distribution<double> q_dist(0.05, 0.95);
  std::uniform_real_distribution<double> h_dist(1e-6, 0.5);
  std::uniform_real_distribution<double> v_dist(0.0, 2.0);
  for (int i = 0; i < 5000; ++i) {
    const double w = w_dist(rng);
    const double q = q_dist(rng);
    const double h = h_dist(rng);
    const double phi = v_dist(rng) * std::exp(w * (q - 1.0));
    const double src = v_dist(rng);
    if (std::exp(w) > 1e300) continue;
    CHECK(oracle::rel_diff(euler_update_literal(phi, w, q, h, src), euler_update_safe(phi, w, q, h, src)) < 1e-13);
    // The trapezoidal map subtracts (e^{-w} - h/2); compare against the magnitude of its terms.
    const double lit = trapezoid_update_literal(phi, w, q, h, src);
    const double safe = trapezoid_update_safe(phi, w, q, h, src);
    const double scale = std::abs(phi) + 0.5 * h * std::exp(w * (q - 1.0)) * src / (std::exp(-w) + 0.5 * h);
    CHECK(std::abs(lit - safe) <= 1e-13 * std::max(scale, std::abs(lit)));
  }
}

TEST_CASE("state stepping matches the literal updates") {
  const auto p = KernelParams::make(0.6, 0.0, 1.0);
  const auto rule = gauss_laguerre_rule(30);
  auto euler = init_state(rule, p);
  auto trap = init_state(rule, p);
  std::vector<double> phi_e(rule.size(), 0.0), tilde_e(rule.size(), 0.0);
  std::vector<double> phi_t(rule.size(), 0.0), tilde_t(rule.size(), 0.0);
  double prev = 0.0;
  for (int j = 1; j <= 64; ++j) {
    const double t = j / 64.0;
    const double y = std::cos(3.0 * t);
    step_backward_euler(euler, t, y, p);
    step_trapezoidal(trap, t, y, prev, p);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      if (std::exp(euler.w_tilde[k]) > 1e300) continue;
      phi_e[k] = euler_update_literal(phi_e[k], euler.w[k], p.q_d, 1.0 / 64, p.c_alpha * y);
      tilde_e[k] = euler_update_literal(tilde_e[k], euler.w_tilde[k], p.q_d, 1.0 / 64, p.c_alpha * y);
      phi_t[k] = trapezoid_update_literal(phi_t[k], trap.w[k], p.q_d, 1.0 / 64, p.c_alpha * (y + prev));
      tilde_t[k] = trapezoid_update_literal(tilde_t[k], trap.w_tilde[k], p.q_d, 1.0 / 64, p.c_alpha * (y + prev));
    }
    prev = y;
  }
  for (std::size_t k = 0; k < rule.size(); ++k) {
    if (std::exp(euler.w_tilde[k]) > 1e300) continue;
    CHECK(std::abs(euler.phi[k] - phi_e[k]) <= 1e-12 * std::abs(phi_e[k]) + 1e-300);
    CHECK(std::abs(euler.phi_tilde[k] - tilde_e[k]) <= 1e-12 * std::abs(tilde_e[k]) + 1e-300);
    CHECK(std::abs(trap.phi[k] - phi_t[k]) <= 1e-11 * std::abs(phi_t[k]) + 1e-300);
    CHECK(std::abs(trap.phi_tilde[k] - tilde_t[k]) <= 1e-11 * std::abs(tilde_t[k]) + 1e-16);
  }
}

TEST_CASE("homogeneous updates never grow the state") {
  const auto p = KernelParams::make(0.3, 0.0, 10.0);
  const auto rule = gauss_laguerre_rule(40);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> h_dist(1e-5, 0.3);
  for (int variant = 0; variant < 2; ++variant) {
    auto s = init_state(rule, p);
    step_backward_euler(s, 0.1, 1.0, p);  // nonzero start
    double t = 0.1;
    for (int j = 0; j < 200; ++j) {
      const auto before_phi = s.phi;
      const auto before_tilde = s.phi_tilde;
      t += h_dist(rng);
      if (variant == 0) {
        step_backward_euler(s, t, 0.0, p);
      } else {
        step_trapezoidal(s, t, 0.0, 0.0, p);
      }
      for (std::size_t k = 0; k < rule.size(); ++k) {
        CHECK(std::abs(s.phi[k]) <= std::abs(before_phi[k]));
        CHECK(std::abs(s.phi_tilde[k]) <= std::abs(before_tilde[k]));
      }
    }
  }
}

TEST_CASE("stepped nodes converge to the closed-form kernel at first order") {
  const auto p = KernelParams::make(0.4, 0.0, 1.0);
  const auto rule = gauss_laguerre_rule(20);
  auto run = [&](int N) {
    auto s = init_state(rule, p);
    for (int j = 1; j <= N; ++j) step_backward_euler(s, static_cast<double>(j) / N, 1.0, p);
    double worst = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      worst = std::max(worst, std::abs(s.phi[k] - phi_closed_form_linear(p, s.w[k], 1.0)));
      worst = std::max(worst, std::abs(s.phi_tilde[k] - phi_closed_form_linear(p, s.w_tilde[k], 1.0)));
    }
    return worst;
  };
  const double e1 = run(1 << 12);
  const double e2 = run(1 << 13);
  CHECK(e1 < 5e-4);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("state stays finite for extreme K and alpha") {
  for (double alpha : {0.1, 0.5, 0.9}) {
    for (int K : {10, 100, 200, 500}) {
      const auto p = KernelParams::make(alpha, 0.0, 1.0);
      const auto rule = gauss_laguerre_rule(K);
      auto e = init_state(rule, p);
      auto t = init_state(rule, p);
      double prev = 0.0;
      for (int j = 1; j <= 200; ++j) {
        const double tj = j / 200.0;
        const double y = 1.6 * std::pow(tj, 0.6);
        step_backward_euler(e, tj, y, p);
        step_trapezoidal(t, tj, y, prev, p);
        prev = y;
      }
      bool finite = true;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        finite = finite && std::isfinite(e.phi[k]) && std::isfinite(e.phi_tilde[k]) && std::isfinite(t.phi[k]) &&
                 std::isfinite(t.phi_tilde[k]);
      }
      INFO("alpha=" << alpha << " K=" << K);
      CHECK(finite);
      CHECK(std::isfinite(evaluate_derivative(e, rule, p)));
      CHECK(std::isfinite(evaluate_derivative(t, rule, p)));
    }
  }
}
