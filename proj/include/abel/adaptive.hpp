#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "abel/metrics.hpp"
#include "abel/solver.hpp"

namespace abel {

enum class RefineStrategy { p_first, h_first, alternate };
enum class ErrorMetric { E1_vs_reference, E2_vs_reference, successive_diff };

struct AdaptiveOptions {
  double tol = 1e-10;
  RefineStrategy strategy = RefineStrategy::p_first;
  /// Cap on the unknown count L; a refinement past it ends the loop.
  int max_L = 400;
  /// Falls back to successive_diff when no reference is passed.
  ErrorMetric error_metric = ErrorMetric::E2_vs_reference;
  SolverOptions solver;
};

struct AdaptiveStep {
  Mesh mesh;
  int L;
  double estimate;
  double elapsed_s;
};

struct AdaptiveTrace {
  std::vector<AdaptiveStep> steps;

  nlohmann::json to_json() const;
  /// Header step,N,L,estimate,elapsed_s,degrees; degrees are ';'-separated.
  std::string to_csv() const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double final_estimate, AdaptiveTrace trace);
  double final_estimate() const noexcept { return final_estimate_; }
  const AdaptiveTrace& trace() const noexcept { return trace_; }

 private:
  double final_estimate_;
  AdaptiveTrace trace_;
};

struct AdaptiveResult {
  PiecewiseSolution solution;
  AdaptiveTrace trace;
};

/// Solve, estimate, refine until the estimate is <= tol.
///
/// p_first raises every degree by one. h_first bisects the element with the
/// largest spectral tail. alternate raises the degree of that element on even
/// steps and bisects it on odd ones.
AdaptiveResult adaptive_solve(const ProblemSpec& problem, const Mesh& initial_mesh, const AdaptiveOptions& options,
                              const std::optional<ExactFn>& reference = std::nullopt);

/// Per-element L2 norm of u_n minus its degree M_n - 1 truncation.
std::vector<double> tail_indicators(const PiecewiseSolution& solution);

/// Max |a - b| over 33 points per element of `a`'s mesh.
double successive_difference(const PiecewiseSolution& a, const PiecewiseSolution& b);

RefineStrategy parse_strategy(const std::string& name);
std::string to_string(RefineStrategy strategy);

}  // namespace abel
