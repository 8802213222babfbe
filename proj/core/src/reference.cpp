#include "fracdiff/reference.hpp"

#include <cmath>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/kernel.hpp"

namespace fracdiff {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_nonnegative_integer(double p) { return p >= 0.0 && p == std::floor(p); }

double power_derivative(double p, int k, double t) {
  double coeff = 1.0;
  for (int i = 0; i < k; ++i) coeff *= p - i;
  if (coeff == 0.0) return 0.0;
  return coeff * std::pow(t, p - k);
}

double power_caputo(double alpha, double p, double t) {
  const int m = static_cast<int>(std::ceil(alpha));
  // Polynomials of degree below m are annihilated.
  if (is_nonnegative_integer(p) && p <= m - 1) return 0.0;
  return caputo_power(alpha, p, t);
}

}  // namespace

double caputo_power(double alpha, double p, double t) {
  q_d(alpha);
  if (!(p > std::ceil(alpha) - 1.0)) {
    throw Error(ErrorCode::DomainError, "caputo_power: p must exceed ceil(alpha) - 1");
  }
  if (!(t >= 0.0)) throw Error(ErrorCode::DomainError, "caputo_power: t must be nonnegative");
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - alpha) * std::pow(t, p - alpha);
}

TestFunction::TestFunction(Variant v) : node_(std::make_shared<const Variant>(std::move(v))) {}

TestFunction TestFunction::power(double p) {
  if (!std::isfinite(p) || p < 0.0) throw Error(ErrorCode::InvalidArgument, "power exponent must be >= 0");
  return TestFunction(Power{p});
}
TestFunction TestFunction::linear() { return TestFunction(Linear{}); }
TestFunction TestFunction::constant() { return TestFunction(Constant{}); }
TestFunction TestFunction::combination(std::vector<std::pair<double, TestFunction>> terms) {
  return TestFunction(Combination{std::move(terms)});
}

TestFunction TestFunction::parse(std::string_view tag) {
  if (tag == "linear") return linear();
  if (tag == "constant") return constant();
  constexpr std::string_view prefix = "power:";
  if (tag.starts_with(prefix)) {
    const std::string number(tag.substr(prefix.size()));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) {
      throw Error(ErrorCode::InvalidArgument, "malformed power exponent in '" + std::string(tag) + "'");
    }
    return power(p);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function tag '" + std::string(tag) + "'");
}

double TestFunction::value(double t) const { return derivative(0, t); }

double TestFunction::derivative(int k, double t) const {
  return std::visit(Overloaded{
                        [&](const Power& f) { return power_derivative(f.p, k, t); },
                        [&](const Linear&) { return power_derivative(1.0, k, t); },
                        [&](const Constant&) { return k == 0 ? 1.0 : 0.0; },
                        [&](const Combination& f) {
                          double sum = 0.0;
                          for (const auto& [c, g] : f.terms) sum += c * g.derivative(k, t);
                          return sum;
                        },
                    },
                    *node_);
}

double TestFunction::caputo(double alpha, double t) const {
  return std::visit(Overloaded{
                        [&](const Power& f) { return power_caputo(alpha, f.p, t); },
                        [&](const Linear&) { return power_caputo(alpha, 1.0, t); },
                        [&](const Constant&) {
                          q_d(alpha);
                          return 0.0;
                        },
                        [&](const Combination& f) {
                          double sum = 0.0;
                          for (const auto& [c, g] : f.terms) sum += c * g.caputo(alpha, t);
                          return sum;
                        },
                    },
                    *node_);
}

std::string TestFunction::tag() const {
  return std::visit(Overloaded{
                        [](const Power& f) {
                          std::ostringstream out;
                          out << "power:" << f.p;
                          return out.str();
                        },
                        [](const Linear&) { return std::string("linear"); },
                        [](const Constant&) { return std::string("constant"); },
                        [](const Combination& f) {
                          std::ostringstream out;
                          out << "combination(";
                          for (std::size_t i = 0; i < f.terms.size(); ++i) {
                            out << (i ? "," : "") << f.terms[i].first << "*" << f.terms[i].second.tag();
                          }
                          out << ")";
                          return out.str();
                        },
                    },
                    *node_);
}

}  // namespace fracdiff
