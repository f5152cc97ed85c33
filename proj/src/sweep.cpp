#include "abel/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "abel/errors.hpp"
#include "abel/metrics.hpp"

namespace abel {
namespace {

std::string degrees_label(const std::vector<int>& degrees) {
  if (degrees.empty()) return "";
  if (std::all_of(degrees.begin(), degrees.end(), [&](int d) { return d == degrees.front(); })) {
    return std::to_string(degrees.front());
  }
  std::string out;
  for (std::size_t k = 0; k < degrees.size(); ++k) out += (k ? ";" : "") + std::to_string(degrees[k]);
  return out;
}

std::string fixed(double value, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string format_error(double value) {
  if (!std::isfinite(value)) return "nan";
  return fixed(value, "%.2e");
}

bool BenchReport::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.failed; });
}

std::optional<double> BenchReport::mean_rho() const {
  double sum = 0.0;
  int count = 0;
  for (const BenchRow& r : rows) {
    if (r.rho_N) {
      sum += *r.rho_N;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "N,M,L,E1,E2,rho_N,delta,runtime_s\n";
  for (const BenchRow& r : rows) {
    out << r.N << ',' << degrees_label(r.degrees) << ',' << r.L << ',';
    if (r.failed) {
      out << "nan,nan,";
    } else {
      out << format_error(r.E1) << ',' << format_error(r.E2) << ',';
    }
    out << (r.rho_N ? fixed(*r.rho_N, "%.2f") : "") << ',' << (r.delta ? format_error(*r.delta) : "") << ','
        << fixed(r.runtime_s, "%.3f") << '\n';
  }
  return out.str();
}

nlohmann::json BenchReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    const bool uniform = degrees_label(r.degrees).find(';') == std::string::npos && !r.degrees.empty();
    nlohmann::json j = {{"N", r.N},
                        {"M", uniform ? nlohmann::json(r.degrees.front()) : nlohmann::json(r.degrees)},
                        {"L", r.L},
                        {"runtime_s", r.runtime_s},
                        {"failed", r.failed}};
    if (r.failed) {
      j["error"] = r.error;
    } else {
      j["E1"] = number_or_null(r.E1);
      j["E2"] = number_or_null(r.E2);
    }
    j["rho_N"] = r.rho_N ? nlohmann::json(*r.rho_N) : nlohmann::json(nullptr);
    j["delta"] = r.delta ? nlohmann::json(*r.delta) : nlohmann::json(nullptr);
    rows_json.push_back(std::move(j));
  }
  return {{"problem", problem}, {"rows", rows_json}};
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("sweep entry must be an object");
  SweepConfig c;
  if (j.contains("breakpoints")) {
    c.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    c.N = static_cast<int>(c.breakpoints.size()) - 1;
  } else if (j.contains("N")) {
    c.N = j.at("N").get<int>();
  } else {
    throw DomainError("sweep entry needs N or breakpoints");
  }
  if (j.contains("degrees")) {
    c.degrees = j.at("degrees").get<std::vector<int>>();
  } else if (j.contains("M")) {
    c.M = j.at("M").get<int>();
  } else {
    throw DomainError("sweep entry needs M or degrees");
  }
  return c;
}

Mesh benchmark_mesh(const ProblemSpec& problem, const SweepConfig& config) {
  if (!config.breakpoints.empty()) {
    std::vector<int> degrees = config.degrees;
    if (degrees.empty()) degrees.assign(config.breakpoints.size() - 1, config.M);
    Mesh mesh(config.breakpoints, std::move(degrees));
    if (std::abs(mesh.T() - problem.T) > 1e-12 * problem.T) throw DomainError("mesh must end at the problem's T");
    return mesh;
  }
  if (config.N < 1) throw DomainError("N must be >= 1");
  std::vector<double> points(config.N + 1);
  for (int k = 0; k <= config.N; ++k) points[k] = problem.T * k / config.N;
  points.back() = problem.T;
  const double slack = 1e-12 * problem.T;
  for (double b : problem.breaks) {
    const bool present =
        std::any_of(points.begin(), points.end(), [&](double p) { return std::abs(p - b) <= slack; });
    if (!present) points.push_back(b);
  }
  std::sort(points.begin(), points.end());
  const int elements = static_cast<int>(points.size()) - 1;
  std::vector<int> degrees = config.degrees;
  if (degrees.empty()) {
    degrees.assign(elements, config.M);
  } else if (static_cast<int>(degrees.size()) != elements) {
    throw DomainError("degree list length does not match the element count");
  }
  // Snap grid points that landed next to a break onto it.
  for (double b : problem.breaks) {
    for (double& p : points) {
      if (std::abs(p - b) <= slack) p = b;
    }
  }
  return Mesh(std::move(points), std::move(degrees));
}

BenchReport run_sweep(BenchmarkId id, const std::vector<SweepConfig>& sweep, const SweepOptions& options) {
  BenchReport report;
  report.problem = to_string(id);
  if (sweep.empty()) return report;

  const BenchmarkProblem bench = make_benchmark(id, options.benchmark);
  const ExactFn exact = reference_solution(bench);

  for (const SweepConfig& config : sweep) {
    BenchRow row;
    row.N = config.N;
    const auto start = std::chrono::steady_clock::now();
    try {
      Mesh mesh = benchmark_mesh(bench.spec, config);
      ProblemSpec spec = bench.spec;
      if (options.noise_power) {
        row.delta = std::pow(mesh.h_max(), *options.noise_power);
        spec = perturb_rhs(spec, *row.delta);
      }
      std::optional<PiecewiseSolution> solution;
      if (options.adaptive) {
        AdaptiveOptions adaptive = *options.adaptive;
        adaptive.solver = options.solver;
        solution = adaptive_solve(spec, mesh, adaptive, exact).solution;
      } else {
        solution = solve(spec, mesh, options.solver);
      }
      row.N = solution->mesh.size();
      row.degrees = solution->mesh.degrees();
      row.L = solution->mesh.unknowns();
      row.E1 = error_E1(*solution, exact);
      row.E2 = error_E2(*solution, exact, options.e2_samples);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
      if (row.degrees.empty()) row.degrees = config.degrees.empty() ? std::vector<int>{config.M} : config.degrees;
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!row.failed) {
      for (const BenchRow& prev : report.rows) {
        if (prev.failed || 2 * prev.N != row.N) continue;
        // Only uniform-degree rows with the same degree pair up.
        const std::string label = degrees_label(row.degrees);
        if (label.find(';') != std::string::npos || degrees_label(prev.degrees) != label) continue;
        const double coarse = options.rho_metric == RhoMetric::E1 ? prev.E1 : prev.E2;
        const double fine = options.rho_metric == RhoMetric::E1 ? row.E1 : row.E2;
        if (coarse > 0.0 && fine > 0.0) row.rho_N = convergence_order(coarse, fine);
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace abel
