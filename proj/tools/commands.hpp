#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracdiff::cli {

/// Runs the `fracdiff` command line (`args[0]` is the program name).
/// Returns the process exit code; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Samples (t_i, y_i) read from a two-column CSV; a header line is optional.
struct Samples {
  std::vector<double> t;
  std::vector<double> y;
};

Samples read_samples(const std::string& path);

/// Approximate `order`-th derivative at every sample point by finite differences
/// on the (possibly nonuniform) sample grid. Second order in the interior.
std::vector<double> finite_difference_derivative(const Samples& samples, int order);

}  // namespace fracdiff::cli
