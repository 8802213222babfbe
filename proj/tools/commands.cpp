#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string_view>

#include "fracdiff/fracdiff.hpp"

namespace fracdiff::cli {

namespace {

std::string real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

void print_nodes(int K, std::ostream& out) {
  const QuadratureRule rule = gauss_laguerre_rule(K);
  out << "k,x_k,a_k\n";
  for (std::size_t k = 0; k < rule.size(); ++k) {
    out << (k + 1) << ',' << real(rule.nodes()[k]) << ',' << real(rule.weights()[k]) << '\n';
  }
}

struct DecayOptions {
  double alpha = 0.4;
  double a = 0.0;
  double t = 1.0;
  double wmin = -30.0;
  double wmax = 20.0;
  int n = 26;
  std::string function = "linear";
};

void print_decay(const DecayOptions& o, std::ostream& out) {
  if (o.n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be positive");
  if (!(o.t >= o.a)) throw Error(ErrorCode::InvalidArgument, "--t must not precede --a");
  const KernelParams params = KernelParams::make(o.alpha, o.a, std::max(o.t - o.a, 1.0));
  const TestFunction f = TestFunction::parse(o.function);
  const SampledFunction y{[&](double tau) { return f.derivative(params.m, tau - o.a); },
                          [&](double tau) { return f.derivative(params.m - 1, tau - o.a); }};
  out << "w,phi\n";
  for (int i = 0; i < o.n; ++i) {
    const double w = o.n == 1 ? o.wmin : o.wmin + (o.wmax - o.wmin) * i / (o.n - 1);
    out << real(w) << ',' << real(phi_direct(params, y, w, o.t)) << '\n';
  }
}

struct DerivativeOptions {
  double alpha = 0.4;
  double a = 0.0;
  double tend = 1.0;
  int n = 1024;
  int K = 40;
  std::string method = "trapezoid";
  std::string function = "power:1.6";
};

EvaluationResult evaluate(Method method, const KernelParams& params, const Grid& grid,
                          const std::function<double(double)>& y_m, int K) {
  switch (method) {
    case Method::Euler: return compute_caputo_on_grid(params, grid, y_m, K, Stepper::BackwardEuler);
    case Method::Trapezoid: return compute_caputo_on_grid(params, grid, y_m, K, Stepper::Trapezoidal);
    case Method::YuanAgrawal: return compute_baseline_on_grid(BaselineKind::YuanAgrawal, params, grid, y_m, K);
    case Method::Chatterjee: return compute_baseline_on_grid(BaselineKind::Chatterjee, params, grid, y_m, K);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

void print_derivative(const DerivativeOptions& o, bool a_given, std::ostream& out) {
  const Method method = parse_method(o.method);
  EvaluationResult result;
  std::function<double(double)> exact;

  constexpr std::string_view csv_prefix = "csv:";
  if (std::string_view(o.function).starts_with(csv_prefix)) {
    // Approximate path: y^(m) from finite differences of the samples, no exact values.
    const Samples samples = read_samples(o.function.substr(csv_prefix.size()));
    const double a = samples.t.front();
    if (a_given && std::abs(a - o.a) > 1e-12 * std::max(1.0, std::abs(a))) {
      throw Error(ErrorCode::InvalidArgument, "--a must match the first sample time");
    }
    const KernelParams params = KernelParams::make(o.alpha, a, samples.t.back() - a);
    const std::vector<double> derivative = finite_difference_derivative(samples, params.m);
    const std::vector<double>& times = samples.t;
    auto y_m = [&](double t) {
      const auto it = std::lower_bound(times.begin(), times.end(), t);
      return derivative[static_cast<std::size_t>(it - times.begin())];
    };
    result = evaluate(method, params, Grid(samples.t), y_m, o.K);
    exact = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  } else {
    const TestFunction f = TestFunction::parse(o.function);
    const KernelParams params = KernelParams::make(o.alpha, o.a, o.tend - o.a);
    const Grid grid = Grid::uniform(o.a, o.tend, o.n);
    const int m = params.m;
    const double a = o.a;
    result = evaluate(method, params, grid, [&](double t) { return f.derivative(m, t - a); }, o.K);
    exact = [f, a, alpha = o.alpha](double t) { return f.caputo(alpha, t - a); };
  }

  out << "t,approx,exact,abs_error\n";
  for (std::size_t j = 0; j < result.times.size(); ++j) {
    const double e = exact(result.times[j]);
    out << real(result.times[j]) << ',' << real(result.values[j]) << ',' << real(e) << ','
        << real(std::abs(result.values[j] - e)) << '\n';
  }
}

struct SweepOptions {
  double alpha = 0.4;
  double a = 0.0;
  double tend = 3.0;
  std::string function = "power:1.6";
  std::vector<std::string> methods{"euler", "trapezoid"};
  std::vector<int> K{10, 20, 40, 70};
  std::vector<int> N{512, 1024, 2048, 4096, 8192, 16384, 32768};
  std::string output = "-";
};

void run_sweep_command(const SweepOptions& o, std::ostream& out) {
  SweepConfig config;
  config.alpha = o.alpha;
  config.a = o.a;
  config.tend = o.tend;
  config.function = TestFunction::parse(o.function);
  config.methods.clear();
  for (const auto& name : o.methods) config.methods.push_back(parse_method(name));
  config.K_list = o.K;
  config.N_list = o.N;
  if (o.output == "-") {
    run_sweep(config, &out);
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + o.output + "'");
  run_sweep(config, &file);
}

}  // namespace

Samples read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open sample file '" + path + "'");
  Samples samples;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    double t = 0.0;
    double y = 0.0;
    try {
      if (fields.size() != 2) throw std::invalid_argument("field count");
      std::size_t used_t = 0;
      std::size_t used_y = 0;
      t = std::stod(fields[0], &used_t);
      y = std::stod(fields[1], &used_y);
      if (used_t != fields[0].size() || used_y != fields[1].size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw Error(ErrorCode::InvalidArgument, "malformed sample line '" + line + "'");
    }
    first = false;
    samples.t.push_back(t);
    samples.y.push_back(y);
  }
  if (samples.t.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least three samples");
  Grid(samples.t);  // validates ordering
  return samples;
}

std::vector<double> finite_difference_derivative(const Samples& samples, int order) {
  const auto& t = samples.t;
  const std::size_t n = t.size();
  if (n < 3 || samples.y.size() != n) throw Error(ErrorCode::InvalidArgument, "need at least three samples");
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be nonnegative");
  std::vector<double> f = samples.y;
  for (int pass = 0; pass < order; ++pass) {
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h1 = t[i] - t[i - 1];
      const double h2 = t[i + 1] - t[i];
      d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
    }
    {
      const double h1 = t[1] - t[0];
      const double h2 = t[2] - t[1];
      d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] - h1 / (h2 * (h1 + h2)) * f[2];
    }
    {
      const double h1 = t[n - 1] - t[n - 2];
      const double h2 = t[n - 2] - t[n - 3];
      d[n - 1] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[n - 1] - (h1 + h2) / (h1 * h2) * f[n - 2] +
                 h1 / (h2 * (h1 + h2)) * f[n - 3];
    }
    f = std::move(d);
  }
  return f;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caputo fractional derivatives by a diffusive representation with Gauss-Laguerre quadrature",
               "fracdiff"};
  app.require_subcommand(1);

  int nodes_K = 10;
  auto* nodes = app.add_subcommand("nodes", "Print the K-point Gauss-Laguerre rule as k,x_k,a_k");
  nodes->add_option("--K", nodes_K, "Number of nodes (1..500)")->required();

  DecayOptions decay_opts;
  auto* decay = app.add_subcommand("decay", "Sample the kernel phi(w, t) on a uniform w grid as w,phi");
  decay->add_option("--alpha", decay_opts.alpha, "Noninteger order")->required();
  decay->add_option("--t", decay_opts.t, "Evaluation time")->required();
  decay->add_option("--wmin", decay_opts.wmin, "Smallest w")->required();
  decay->add_option("--wmax", decay_opts.wmax, "Largest w")->required();
  decay->add_option("--n", decay_opts.n, "Number of samples")->required();
  decay->add_option("--a", decay_opts.a, "Starting point")->capture_default_str();
  decay->add_option("--function", decay_opts.function, "power:<p>|linear|constant")->capture_default_str();

  DerivativeOptions deriv_opts;
  auto* derivative = app.add_subcommand("derivative", "Approximate the Caputo derivative on a uniform grid");
  derivative->add_option("--alpha", deriv_opts.alpha, "Noninteger order")->required();
  auto* a_opt = derivative->add_option("--a", deriv_opts.a, "Starting point")->capture_default_str();
  derivative->add_option("--tend", deriv_opts.tend, "End of the interval")->capture_default_str();
  derivative->add_option("--n", deriv_opts.n, "Number of steps")->capture_default_str();
  derivative->add_option("--K", deriv_opts.K, "Quadrature nodes")->capture_default_str();
  derivative->add_option("--method", deriv_opts.method, "euler|trapezoid|ya|chatterjee")->capture_default_str();
  derivative
      ->add_option("--function", deriv_opts.function,
                   "power:<p>|linear|constant|csv:<path> (csv uses finite differences, approximate)")
      ->capture_default_str();

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Error sweep over methods, K and N; CSV output");
  sweep->add_option("--alpha", sweep_opts.alpha, "Noninteger order")->capture_default_str();
  sweep->add_option("--a", sweep_opts.a, "Starting point")->capture_default_str();
  sweep->add_option("--tend", sweep_opts.tend, "End of the interval")->capture_default_str();
  sweep->add_option("--function", sweep_opts.function, "power:<p>|linear|constant")->capture_default_str();
  sweep->add_option("--methods,--method", sweep_opts.methods, "Comma-separated methods")->delimiter(',');
  sweep->add_option("--K", sweep_opts.K, "Comma-separated node counts")->delimiter(',');
  sweep->add_option("--N", sweep_opts.N, "Comma-separated step counts")->delimiter(',');
  sweep->add_option("--output", sweep_opts.output, "Output path, - for stdout")->capture_default_str();

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    if (*nodes) print_nodes(nodes_K, out);
    if (*decay) print_decay(decay_opts, out);
    if (*derivative) print_derivative(deriv_opts, a_opt->count() > 0, out);
    if (*sweep) run_sweep_command(sweep_opts, out);
  } catch (const std::exception& e) {
    out.flush();
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fracdiff::cli
