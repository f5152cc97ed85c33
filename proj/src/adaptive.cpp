#include "abel/adaptive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "abel/errors.hpp"

namespace abel {
namespace {

constexpr int kDiffSamples = 33;

double estimate_error(const PiecewiseSolution& current, const PiecewiseSolution* previous,
                      const AdaptiveOptions& options, const std::optional<ExactFn>& reference) {
  if (reference && options.error_metric == ErrorMetric::E1_vs_reference) return error_E1(current, *reference);
  if (reference && options.error_metric == ErrorMetric::E2_vs_reference) return error_E2(current, *reference);
  if (!previous) return std::numeric_limits<double>::infinity();
  return successive_difference(current, *previous);
}

int worst_element(const PiecewiseSolution& solution) {
  const std::vector<double> tails = tail_indicators(solution);
  return static_cast<int>(std::max_element(tails.begin(), tails.end()) - tails.begin());
}

Mesh refine(const Mesh& mesh, const PiecewiseSolution& solution, RefineStrategy strategy, int step) {
  switch (strategy) {
    case RefineStrategy::p_first:
      return mesh.raised(1);
    case RefineStrategy::h_first:
      return mesh.bisected(worst_element(solution));
    case RefineStrategy::alternate: {
      const int n = worst_element(solution);
      if (step % 2 == 1) return mesh.bisected(n);
      std::vector<int> degrees = mesh.degrees();
      ++degrees[n];
      return mesh.with_degrees(std::move(degrees));
    }
  }
  throw DomainError("unknown refinement strategy");
}

}  // namespace

BudgetExceeded::BudgetExceeded(double final_estimate, AdaptiveTrace trace)
    : std::runtime_error("adaptive refinement hit the unknown budget with estimate " + std::to_string(final_estimate)),
      final_estimate_(final_estimate),
      trace_(std::move(trace)) {}

nlohmann::json AdaptiveTrace::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const AdaptiveStep& s : steps) {
    steps_json.push_back({{"mesh", abel::to_json(s.mesh)},
                          {"L", s.L},
                          {"estimate", std::isfinite(s.estimate) ? nlohmann::json(s.estimate) : nlohmann::json(nullptr)},
                          {"elapsed_s", s.elapsed_s}});
  }
  return {{"steps", steps_json}};
}

std::string AdaptiveTrace::to_csv() const {
  std::ostringstream out;
  out << "step,N,L,estimate,elapsed_s,degrees\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const AdaptiveStep& s = steps[i];
    out << i << ',' << s.mesh.size() << ',' << s.L << ',' << s.estimate << ',' << s.elapsed_s << ',';
    const auto& degrees = s.mesh.degrees();
    for (std::size_t k = 0; k < degrees.size(); ++k) out << (k ? ";" : "") << degrees[k];
    out << '\n';
  }
  return out.str();
}

std::vector<double> tail_indicators(const PiecewiseSolution& solution) {
  std::vector<double> tails(solution.elements.size());
  for (std::size_t n = 0; n < tails.size(); ++n) {
    const auto& c = solution.elements[n].coeffs;
    const int M = static_cast<int>(c.size()) - 1;
    const double h = solution.mesh.h(static_cast<int>(n));
    // ||c_M L_M||^2 = (h/2) c_M^2 2/(2M+1)
    tails[n] = std::abs(c[M]) * std::sqrt(h / (2.0 * M + 1.0));
  }
  return tails;
}

double successive_difference(const PiecewiseSolution& a, const PiecewiseSolution& b) {
  const Mesh& mesh = a.mesh;
  const int last = kDiffSamples - 1;
  double worst = 0.0;
  for (int n = 0; n < mesh.size(); ++n) {
    const Element elem = mesh.element(n);
    const double step = elem.width() / last;
    for (int k = 0; k <= last; ++k) {
      const double t = k == 0 ? elem.left + 0.5 * step : (k == last ? elem.right : elem.left + k * step);
      worst = std::max(worst, std::abs(a(t) - b(t)));
    }
  }
  return worst;
}

RefineStrategy parse_strategy(const std::string& name) {
  if (name == "p_first") return RefineStrategy::p_first;
  if (name == "h_first") return RefineStrategy::h_first;
  if (name == "alternate") return RefineStrategy::alternate;
  throw DomainError("unknown refinement strategy '" + name + "'");
}

std::string to_string(RefineStrategy strategy) {
  switch (strategy) {
    case RefineStrategy::p_first:
      return "p_first";
    case RefineStrategy::h_first:
      return "h_first";
    case RefineStrategy::alternate:
      return "alternate";
  }
  return "?";
}

AdaptiveResult adaptive_solve(const ProblemSpec& problem, const Mesh& initial_mesh, const AdaptiveOptions& options,
                              const std::optional<ExactFn>& reference) {
  if (!(options.tol > 0.0)) throw DomainError("adaptive tol must be positive");
  if (options.max_L < initial_mesh.unknowns()) throw DomainError("max_L is below the initial unknown count");

  const auto start = std::chrono::steady_clock::now();
  AdaptiveTrace trace;
  Mesh mesh = initial_mesh;
  std::optional<PiecewiseSolution> previous;
  for (int step = 0;; ++step) {
    PiecewiseSolution current = solve(problem, mesh, options.solver);
    const double estimate = estimate_error(current, previous ? &*previous : nullptr, options, reference);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    trace.steps.push_back({mesh, mesh.unknowns(), estimate, elapsed});
    if (estimate <= options.tol) return {std::move(current), std::move(trace)};

    Mesh next = refine(mesh, current, options.strategy, step);
    if (next.unknowns() > options.max_L) throw BudgetExceeded(estimate, std::move(trace));
    mesh = std::move(next);
    previous = std::move(current);
  }
}

}  // namespace abel
