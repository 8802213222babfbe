#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/reference.hpp"

namespace fracdiff {

/// Approximation schemes offered by the sweep harness.
enum class Method { Euler, Trapezoid, YuanAgrawal, Chatterjee };

std::string_view to_string(Method method);
/// Accepts `euler`, `trapezoid`, `ya` and `chatterjee`.
Method parse_method(std::string_view name);

/// Error study on uniform grids: every method x K x N cell is run against the
/// exact derivative of `function`, shifted so that it starts at `a`.
struct SweepConfig {
  double alpha = 0.4;
  double a = 0.0;
  double tend = 3.0;
  TestFunction function = TestFunction::power(1.6);
  std::vector<Method> methods{Method::Euler, Method::Trapezoid};
  std::vector<int> K_list{10, 20, 40, 70};
  std::vector<int> N_list{512, 1024, 2048, 4096, 8192, 16384, 32768};
};

struct ErrorRecord {
  std::string method;
  int K = 0;
  int N = 0;
  double h = 0.0;
  double max_abs_error = 0.0;
  double wall_time_ms = 0.0;
};

/// One cell of the sweep.
ErrorRecord run_cell(const SweepConfig& config, Method method, int K, int N);

/// Full cross product in methods, K_list, N_list order. When `csv` is given the
/// header and each row are written and flushed as soon as they are available,
/// so an error part way through leaves the completed rows behind.
std::vector<ErrorRecord> run_sweep(const SweepConfig& config, std::ostream* csv = nullptr);

inline constexpr std::string_view kSweepCsvHeader = "method,K,N,h,max_abs_error,wall_time_ms";

void write_csv_header(std::ostream& out);
/// Reals are written with 17 significant digits so that reading them back is exact.
void write_csv_row(std::ostream& out, const ErrorRecord& record);
std::vector<ErrorRecord> read_csv(std::istream& in);

/// log2(e(h) / e(h/2)) for two records of the same method and K with N doubled.
/// Throws Error(DegenerateErrors) if either error is zero.
double estimate_order(const ErrorRecord& coarse, const ErrorRecord& fine);
double estimate_order(double error_h, double error_half_h);

}  // namespace fracdiff
