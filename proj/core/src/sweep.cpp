#include "fracdiff/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracdiff/baselines.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/evaluator.hpp"
#include "fracdiff/kernel.hpp"

namespace fracdiff {

namespace {

std::string format_real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw Error(ErrorCode::InvalidArgument, "malformed number '" + text + "'");
  return value;
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  const int value = std::stoi(text, &used);
  if (used != text.size()) throw Error(ErrorCode::InvalidArgument, "malformed integer '" + text + "'");
  return value;
}

void validate(const SweepConfig& config) {
  if (config.methods.empty() || config.K_list.empty() || config.N_list.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep: methods, K list and N list must be nonempty");
  }
  if (!(config.tend > config.a)) throw Error(ErrorCode::InvalidArgument, "sweep: tend must exceed a");
  for (int K : config.K_list) {
    if (K < 1) throw Error(ErrorCode::InvalidArgument, "sweep: K must be positive");
  }
  for (int N : config.N_list) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "sweep: N must be positive");
  }
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Euler: return "euler";
    case Method::Trapezoid: return "trapezoid";
    case Method::YuanAgrawal: return "ya";
    case Method::Chatterjee: return "chatterjee";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "euler") return Method::Euler;
  if (name == "trapezoid") return Method::Trapezoid;
  if (name == "ya") return Method::YuanAgrawal;
  if (name == "chatterjee") return Method::Chatterjee;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

ErrorRecord run_cell(const SweepConfig& config, Method method, int K, int N) {
  const KernelParams params = KernelParams::make(config.alpha, config.a, config.tend - config.a);
  const Grid grid = Grid::uniform(config.a, config.tend, N);
  const TestFunction& f = config.function;
  const double a = config.a;
  const int m = params.m;
  auto y_m = [&](double t) { return f.derivative(m, t - a); };
  auto exact = [&](double t) { return f.caputo(config.alpha, t - a); };

  const auto start = std::chrono::steady_clock::now();
  EvaluationResult result;
  switch (method) {
    case Method::Euler: result = compute_caputo_on_grid(params, grid, y_m, K, Stepper::BackwardEuler); break;
    case Method::Trapezoid: result = compute_caputo_on_grid(params, grid, y_m, K, Stepper::Trapezoidal); break;
    case Method::YuanAgrawal:
      result = compute_baseline_on_grid(BaselineKind::YuanAgrawal, params, grid, y_m, K);
      break;
    case Method::Chatterjee:
      result = compute_baseline_on_grid(BaselineKind::Chatterjee, params, grid, y_m, K);
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  ErrorRecord record;
  record.method = std::string(to_string(method));
  record.K = K;
  record.N = N;
  record.h = (config.tend - config.a) / N;
  record.max_abs_error = max_error(result, exact);
  record.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if (!std::isfinite(record.max_abs_error)) {
    throw Error(ErrorCode::NonFinite, "sweep: non-finite error for method " + record.method);
  }
  return record;
}

std::vector<ErrorRecord> run_sweep(const SweepConfig& config, std::ostream* csv) {
  validate(config);
  if (csv) {
    write_csv_header(*csv);
    csv->flush();
  }
  std::vector<ErrorRecord> records;
  for (Method method : config.methods) {
    for (int K : config.K_list) {
      for (int N : config.N_list) {
        records.push_back(run_cell(config, method, K, N));
        if (csv) {
          write_csv_row(*csv, records.back());
          csv->flush();
        }
      }
    }
  }
  return records;
}

void write_csv_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const ErrorRecord& r) {
  out << r.method << ',' << r.K << ',' << r.N << ',' << format_real(r.h) << ',' << format_real(r.max_abs_error) << ','
      << format_real(r.wall_time_ms) << '\n';
}

std::vector<ErrorRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw Error(ErrorCode::InvalidArgument, "read_csv: missing or unexpected header");
  }
  std::vector<ErrorRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw Error(ErrorCode::InvalidArgument, "read_csv: expected 6 fields in '" + line + "'");
    records.push_back(ErrorRecord{fields[0], parse_int(fields[1]), parse_int(fields[2]), parse_real(fields[3]),
                                  parse_real(fields[4]), parse_real(fields[5])});
  }
  return records;
}

double estimate_order(double error_h, double error_half_h) {
  if (error_h == 0.0 || error_half_h == 0.0) {
    throw Error(ErrorCode::DegenerateErrors, "estimate_order: errors must be nonzero");
  }
  return std::log2(error_h / error_half_h);
}

double estimate_order(const ErrorRecord& coarse, const ErrorRecord& fine) {
  if (coarse.method != fine.method || coarse.K != fine.K || fine.N != 2 * coarse.N) {
    throw Error(ErrorCode::InvalidArgument, "estimate_order: need same method and K with N doubled");
  }
  return estimate_order(coarse.max_abs_error, fine.max_abs_error);
}

}  // namespace fracdiff
