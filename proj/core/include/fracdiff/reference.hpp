#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fracdiff {

/// Gamma(p+1) / Gamma(p+1-alpha) t^{p-alpha}, the Caputo derivative of t^p with a = 0.
/// Throws Error(DomainError) if p <= ceil(alpha) - 1 or t < 0.
double caputo_power(double alpha, double p, double t);

/// Test functions with known Caputo derivatives (starting point a = 0).
class TestFunction {
 public:
  struct Power {
    double p;
  };
  struct Linear {};
  struct Constant {};
  struct Combination {
    std::vector<std::pair<double, TestFunction>> terms;
  };

  static TestFunction power(double p);
  static TestFunction linear();
  static TestFunction constant();
  static TestFunction combination(std::vector<std::pair<double, TestFunction>> terms);

  /// Parses `power:<p>`, `linear` or `constant`.
  static TestFunction parse(std::string_view tag);

  double value(double t) const;
  /// k-th derivative at t.
  double derivative(int k, double t) const;
  /// Exact Caputo derivative of order alpha at t >= 0.
  double caputo(double alpha, double t) const;

  std::string tag() const;

 private:
  using Variant = std::variant<Power, Linear, Constant, Combination>;
  explicit TestFunction(Variant v);
  std::shared_ptr<const Variant> node_;
};

}  // namespace fracdiff
