#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abel/metrics.hpp"
#include "abel/problem.hpp"

namespace abel {

enum class BenchmarkId { ex1_singular, ex2_plato, ex3_branca, ex4_liu, ex5_discontinuous, ex6_unknown };

struct BenchmarkOptions {
  /// Only ex1 uses it; required there.
  std::optional<double> alpha;
  /// ex1: use the 1F1 closed form for f instead of the manufactured one.
  bool closed_form_rhs = false;
};

struct BenchmarkProblem {
  BenchmarkId id;
  ProblemSpec spec;
  /// Empty for ex6.
  std::optional<ExactFn> exact;
  bool alpha_parameterized = false;
  std::string description;
};

BenchmarkProblem make_benchmark(BenchmarkId id, const BenchmarkOptions& options = {});
BenchmarkProblem make_benchmark(const std::string& name, const BenchmarkOptions& options = {});

BenchmarkId parse_benchmark(const std::string& name);
std::string to_string(BenchmarkId id);
std::vector<BenchmarkId> all_benchmarks();

/// exact when present; otherwise the stored high-resolution solution of ex6
/// (three elements aligned at 0.5 and 1, degree 12), solved on first use.
ExactFn reference_solution(const BenchmarkProblem& problem);

/// Same problem with f replaced by f + delta.
ProblemSpec perturb_rhs(const ProblemSpec& problem, double delta);

}  // namespace abel
