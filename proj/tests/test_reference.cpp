#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracdiff/error.hpp"
#include "fracdiff/reference.hpp"
#include "oracles.hpp"

using namespace fracdiff;

TEST_CASE("caputo_power examples") {
  // Gamma(2.6) / Gamma(2.2) and 1 / Gamma(1.6)
  CHECK(oracle::rel_diff(caputo_power(0.4, 1.6, 1.0), 1.2975325166662568) < 1e-14);
  CHECK(oracle::rel_diff(caputo_power(0.4, 1.0, 1.0), 1.1191749540701221) < 1e-14);
  CHECK(caputo_power(0.4, 1.6, 0.0) == 0.0);
  CHECK_THROWS_AS(caputo_power(0.4, 0.0, 2.0), Error);
  // Second-order case: D^{1.5} t^2 = 2 / Gamma(1.5) t^{0.5}
  CHECK(oracle::rel_diff(caputo_power(1.5, 2.0, 4.0), 2.0 / std::tgamma(1.5) * 2.0) < 1e-14);
}

TEST_CASE("caputo_power domain errors") {
  try {
    caputo_power(0.4, -0.5, 1.0);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
  CHECK_THROWS_AS(caputo_power(1.4, 0.5, 1.0), Error);
  CHECK_THROWS_AS(caputo_power(0.4, 1.6, -1.0), Error);
}

TEST_CASE("homogeneity in t") {
  for (double p : {0.7, 1.6, 3.0}) {
    for (double lambda : {0.5, 2.0, 7.0}) {
      const double lhs = caputo_power(0.4, p, lambda * 1.3);
      const double rhs = std::pow(lambda, p - 0.4) * caputo_power(0.4, p, 1.3);
      CHECK(oracle::rel_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("std::tgamma sanity") {
  CHECK(std::tgamma(1.0) == 1.0);
  CHECK(oracle::rel_diff(std::tgamma(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(oracle::rel_diff(std::tgamma(5.0), 24.0) < 1e-15);
}

TEST_CASE("TestFunction parsing and derivatives") {
  const auto p = TestFunction::parse("power:1.6");
  CHECK(p.tag() == "power:1.6");
  CHECK(p.value(2.0) == doctest::Approx(std::pow(2.0, 1.6)));
  CHECK(p.derivative(1, 2.0) == doctest::Approx(1.6 * std::pow(2.0, 0.6)));
  CHECK(p.derivative(2, 2.0) == doctest::Approx(1.6 * 0.6 * std::pow(2.0, -0.4)));

  const auto l = TestFunction::parse("linear");
  CHECK(l.value(3.0) == 3.0);
  CHECK(l.derivative(1, 3.0) == 1.0);
  CHECK(l.derivative(2, 3.0) == 0.0);

  const auto c = TestFunction::parse("constant");
  CHECK(c.value(3.0) == 1.0);
  CHECK(c.derivative(1, 3.0) == 0.0);
  CHECK(c.caputo(0.4, 3.0) == 0.0);

  CHECK_THROWS_AS(TestFunction::parse("cubic"), Error);
  CHECK_THROWS_AS(TestFunction::parse("power:x"), Error);

  // Integer powers below ceil(alpha) have zero derivative.
  CHECK(TestFunction::power(1.0).caputo(1.5, 2.0) == 0.0);
}

TEST_CASE("combinations are linear") {
  const auto f = TestFunction::combination({{2.0, TestFunction::power(1.6)}, {-0.5, TestFunction::linear()},
                                            {3.0, TestFunction::constant()}});
  const double t = 1.7;
  CHECK(f.value(t) == doctest::Approx(2.0 * std::pow(t, 1.6) - 0.5 * t + 3.0));
  CHECK(f.derivative(1, t) == doctest::Approx(3.2 * std::pow(t, 0.6) - 0.5));
  CHECK(f.caputo(0.4, t) ==
        doctest::Approx(2.0 * caputo_power(0.4, 1.6, t) - 0.5 * caputo_power(0.4, 1.0, t)));
}

TEST_CASE("closed forms agree with direct quadrature of the Caputo integral") {
  for (double alpha : {0.2, 0.4, 0.8}) {
    for (double p : {1.0, 1.6, 2.5}) {
      for (double t : {0.5, 1.0, 3.0}) {
        const auto f = TestFunction::power(p);
        const double q = oracle::caputo_by_quadrature(alpha, [&](double s) { return f.derivative(1, s); }, t);
        INFO("alpha=" << alpha << " p=" << p << " t=" << t);
        CHECK(oracle::rel_diff(f.caputo(alpha, t), q) < 1e-9);
      }
    }
  }
}
