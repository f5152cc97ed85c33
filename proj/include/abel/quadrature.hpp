#pragma once

// Gauss-type rules on [-1, 1] and the two product-integration formulas the
// collocation scheme needs: the singular integral over the current element
// (weight (t - s)^(alpha-1) with t inside the element) and the history
// weights over a completed element (t to the right of it).

#include <span>
#include <vector>

#include "abel/orthopoly.hpp"

namespace abel {

enum class QuadKind { gauss_jacobi, gauss_legendre, gauss_lobatto };

/// Rule with order + 1 nodes, ascending, and positive weights.
struct QuadRule {
  QuadKind kind = QuadKind::gauss_legendre;
  JacobiParams params = kLegendre;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Builds the (order + 1)-point rule. Gauss rules are exact to degree
/// 2*order + 1 against the Jacobi weight, Lobatto rules to 2*order - 1.
/// gauss_legendre ignores `params`; gauss_lobatto requires kLegendre.
QuadRule gauss_rule(QuadKind kind, JacobiParams params, int order);

/// Memoized gauss_rule. The returned reference stays valid for the life of
/// the process; concurrent callers are fine.
const QuadRule& cached_rule(QuadKind kind, JacobiParams params, int order);

inline const QuadRule& legendre_rule(int order) {
  return cached_rule(QuadKind::gauss_legendre, kLegendre, order);
}
inline const QuadRule& lobatto_rule(int order) { return cached_rule(QuadKind::gauss_lobatto, kLegendre, order); }
/// Gauss-Jacobi rule for the weight (1 - x)^(alpha - 1).
inline const QuadRule& singular_rule(double alpha, int order) {
  return cached_rule(QuadKind::gauss_jacobi, JacobiParams{alpha - 1.0, 0.0}, order);
}

/// Affine images of the rule's nodes on the element.
std::vector<double> shift_nodes(const QuadRule& rule, const Element& elem);

/// Points tau_j = sigma(lambda_j, t) at which singular_element_integral
/// samples its integrand; lambda_j are the shifted Gauss-Jacobi(alpha-1, 0)
/// nodes of the element with elem.degree + 1 points.
std::vector<double> singular_nodes(const Element& elem, double t, double alpha);

/// ((t - left)/2)^alpha * sum_j g_j w_j with w_j the Gauss-Jacobi(alpha-1, 0)
/// weights. Equals the integral of (t - s)^(alpha-1) g(s) over (left, t) when
/// g is a polynomial of degree <= elem.degree. Requires t > elem.left.
double singular_element_integral(std::span<const double> g_at_nodes, const Element& elem, double t,
                                 double alpha);

/// mu_p = integral over the element of (t - s)^(alpha-1) L_{k,p}(s) ds for
/// p = 0..max_degree, with t >= elem.right.
std::vector<double> modified_moments(const Element& elem, double t, double alpha, int max_degree);

/// Allocation-free variant of modified_moments; out.size() - 1 is the max
/// degree and `scratch` must hold at least out.size() values.
void modified_moments_into(const Element& elem, double t, double alpha, std::span<double> out,
                           std::span<double> scratch);

struct HistoryWeights {
  Element element;
  double eval_point = 0.0;
  std::vector<double> values;
};

/// Product-integration weights for the element's Lobatto nodes:
/// sum_j values[j] phi(s_j) = integral over the element of (t - s)^(alpha-1) phi(s)
/// for every polynomial phi of degree <= elem.degree.
HistoryWeights history_weights(const Element& elem, double t, double alpha);

/// Allocation-free variant used by the assembly kernels. `scratch` must hold
/// at least 2 * (elem.degree + 1) values.
void history_weights_into(const Element& elem, double t, double alpha, std::span<double> out,
                          std::span<double> scratch);

/// Coefficient matrix of the Lobatto Lagrange basis in Legendre polynomials,
/// row-major: l_j = sum_p C[j * (order+1) + p] P_p.
const std::vector<double>& lobatto_to_legendre(int order);

}  // namespace abel
