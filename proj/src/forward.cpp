#include <cmath>
#include <vector>

#include "abel/errors.hpp"
#include "abel/quadrature.hpp"
#include "abel/solver.hpp"

namespace abel {
namespace {

constexpr int kMaxLevel = 14;

double composite_estimate(const ProblemSpec& problem, const std::function<double(double)>& u, double t,
                          const std::vector<double>& edges, int panels_per_piece, const QuadRule& gauss,
                          const QuadRule& jacobi) {
  const double alpha = problem.alpha;
  double total = 0.0;
  for (std::size_t piece = 0; piece + 1 < edges.size(); ++piece) {
    const double a = edges[piece];
    const double b = edges[piece + 1];
    const double width = (b - a) / panels_per_piece;
    for (int k = 0; k < panels_per_piece; ++k) {
      const double left = a + k * width;
      const bool last = piece + 2 == edges.size() && k + 1 == panels_per_piece;
      if (last) {
        // Weight (t - s)^(alpha-1) carried by the rule.
        const double span = t - left;
        double sum = 0.0;
        for (std::size_t j = 0; j < jacobi.size(); ++j) {
          const double s = left + 0.5 * span * (1.0 + jacobi.nodes[j]);
          sum += jacobi.weights[j] * problem.integrand(t, s, u(s));
        }
        total += std::pow(0.5 * span, alpha) * sum;
      } else {
        const double right = k + 1 == panels_per_piece ? b : left + width;
        const double half = 0.5 * (right - left);
        double sum = 0.0;
        for (std::size_t j = 0; j < gauss.size(); ++j) {
          const double s = left + half * (1.0 + gauss.nodes[j]);
          sum += gauss.weights[j] * std::pow(t - s, alpha - 1.0) * problem.integrand(t, s, u(s));
        }
        total += half * sum;
      }
    }
  }
  return total;
}

}  // namespace

double forward_apply(const ProblemSpec& problem, const std::function<double(double)>& u, double t, int oracle_order,
                     double rel_tol) {
  if (t < 0.0) throw DomainError("forward_apply needs t >= 0");
  if (t == 0.0) return 0.0;
  if (oracle_order < 1) throw DomainError("oracle order must be >= 1");
  std::vector<double> edges{0.0};
  for (double b : problem.breaks) {
    if (b > 0.0 && b < t) edges.push_back(b);
  }
  edges.push_back(t);

  const QuadRule& gauss = legendre_rule(oracle_order - 1);
  const QuadRule& jacobi = singular_rule(problem.alpha, oracle_order - 1);
  double previous = composite_estimate(problem, u, t, edges, 1, gauss, jacobi);
  for (int level = 1; level <= kMaxLevel; ++level) {
    const double current = composite_estimate(problem, u, t, edges, 1 << level, gauss, jacobi);
    if (std::abs(current - previous) <= rel_tol * std::abs(current) ||
        (current == 0.0 && previous == 0.0)) {
      return current;
    }
    previous = current;
  }
  throw NumericalError("forward_apply did not converge at t = " + std::to_string(t));
}

}  // namespace abel
