#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "abel/adaptive.hpp"
#include "abel/benchmarks.hpp"
#include "abel/solver.hpp"

namespace abel {

/// One sweep configuration: N uniform elements of degree M. Non-empty
/// `breakpoints` replace the uniform partition, non-empty `degrees` replace M.
struct SweepConfig {
  int N = 1;
  int M = 1;
  std::vector<int> degrees;
  std::vector<double> breakpoints;
};

/// Reads {"N": n} or {"breakpoints": [...]} with {"M": m} or {"degrees": [...]}.
SweepConfig sweep_config_from_json(const nlohmann::json& j);

enum class RhoMetric { E1, E2 };

struct SweepOptions {
  BenchmarkOptions benchmark;
  /// delta = h^noise_power added to f when set.
  std::optional<double> noise_power;
  RhoMetric rho_metric = RhoMetric::E1;
  int e2_samples = 65;
  SolverOptions solver;
  /// Run the adaptive loop from each configuration instead of a single solve.
  std::optional<AdaptiveOptions> adaptive;
};

struct BenchRow {
  int N = 0;
  std::vector<int> degrees;
  int L = 0;
  double E1 = 0.0;
  double E2 = 0.0;
  std::optional<double> rho_N;
  std::optional<double> delta;
  double runtime_s = 0.0;
  bool failed = false;
  std::string error;
};

struct BenchReport {
  std::string problem;
  std::vector<BenchRow> rows;

  bool any_failed() const;
  /// Mean of the rho_N values present; nullopt if there are none.
  std::optional<double> mean_rho() const;
  /// Columns N,M,L,E1,E2,rho_N,delta,runtime_s. Mixed degrees print as 9;4.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Uniform mesh on [0, T] with the problem's breaks added as extra breakpoints
/// when they do not already fall on the grid.
Mesh benchmark_mesh(const ProblemSpec& problem, const SweepConfig& config);

/// One row per configuration. Solver errors mark the row failed and the
/// sweep goes on. rho_N is filled when an earlier row has half the N and the
/// same degrees.
BenchReport run_sweep(BenchmarkId id, const std::vector<SweepConfig>& sweep, const SweepOptions& options = {});

/// Scientific notation with 3 significant digits, as in 9.42e-05.
std::string format_error(double value);

}  // namespace abel
