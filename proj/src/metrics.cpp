#include "abel/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "abel/errors.hpp"
#include "abel/quadrature.hpp"

namespace abel {

double error_E1(const PiecewiseSolution& solution, const ExactFn& exact) {
  const Mesh& mesh = solution.mesh;
  double sum = 0.0;
  for (int n = 0; n < mesh.size(); ++n) {
    const Element elem = mesh.element(n);
    const QuadRule& rule = legendre_rule(elem.degree);
    const auto& coeffs = solution.elements.at(n).coeffs;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double t = from_reference(elem, rule.nodes[j]);
      const double diff = exact(t) - evaluate_element(elem, coeffs, t);
      sum += 0.5 * elem.width() * rule.weights[j] * diff * diff;
    }
  }
  return std::sqrt(sum);
}

double error_E2(const PiecewiseSolution& solution, const ExactFn& exact, int samples_per_element) {
  if (samples_per_element < 2) throw DomainError("error_E2 needs at least 2 samples per element");
  const Mesh& mesh = solution.mesh;
  double worst = 0.0;
  const int last = samples_per_element - 1;
  for (int n = 0; n < mesh.size(); ++n) {
    const Element elem = mesh.element(n);
    const auto& coeffs = solution.elements.at(n).coeffs;
    const double step = elem.width() / last;
    for (int k = 0; k <= last; ++k) {
      const double t = k == 0 ? elem.left + 0.5 * step : (k == last ? elem.right : elem.left + k * step);
      worst = std::max(worst, std::abs(exact(t) - evaluate_element(elem, coeffs, t)));
    }
  }
  return worst;
}

double convergence_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) throw DomainError("convergence order needs positive errors");
  return std::log2(e_coarse / e_fine);
}

}  // namespace abel
